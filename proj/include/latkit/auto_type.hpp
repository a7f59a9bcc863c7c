#pragma once

#include <string>
#include <vector>

#include "latkit/lattice.hpp"

namespace latkit {

// p-(z,f)-s: dim = f + z(p-1), [L : F + Z] = p^s.
struct AutType {
  long p = 0;
  long z = 0;
  long f = 0;
  long s = 0;
  friend auto operator<=>(const AutType&, const AutType&) = default;
  std::string to_string() const;
};

// Parses "p-(z,f)-s". Throws kParse.
AutType parse_type(const std::string& text);

struct SplittingData {
  Lattice fixed;         // F = L cap ker(sigma - 1)
  Lattice image;         // Z = L cap im(sigma - 1)
  IntMatrix fixed_rows;  // embedding of F in L coordinates
  IntMatrix image_rows;  // embedding of Z in L coordinates
  long index_exponent = 0;
};

struct TypeResult {
  AutType type;
  SplittingData split;
};

// sigma acts on row coordinates: x -> x sigma, with sigma G sigma^T = G.
// Throws kNotIsometry and kOrderNotPrime.
TypeResult compute_type(const Lattice& l, const IntMatrix& sigma);

// Order of sigma if it is finite and at most limit, else 0.
long matrix_order(const IntMatrix& sigma, long limit);

// Violated constraint names. s <= min(z,f) always applies; the parity
// rules need a unimodular ambient lattice.
std::vector<std::string> check_constraints(const AutType& t, bool unimodular);
// Consequences that apply to the type (informational).
std::vector<std::string> constraint_notes(const AutType& t, bool unimodular);

// F / p even unimodular. Requires s = f and odd p (kPrecondition).
bool fixed_lattice_rescale_check(const SplittingData& s, long p);
bool fixed_lattice_rescale_check(const Lattice& fixed, long s, long p);

}  // namespace latkit
