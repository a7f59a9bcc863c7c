#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latkit/enumeration.hpp"
#include "latkit/lattice.hpp"

namespace latkit {

struct Fingerprint {
  std::size_t dim = 0;
  mpq_class det;
  bool integral = false;
  bool even = false;
  mpq_class norm_cap;
  std::map<mpq_class, std::uint64_t> counts_by_norm;
  mpz_class scale;                    // common denominator of the Gram
  std::vector<mpz_class> snf;         // invariant factors of scale * Gram
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  std::string to_string() const;
};

Fingerprint fingerprint(const RatMatrix& gram, const mpq_class& norm_cap, const EnumConfig& cfg = {});

struct IsometryConfig {
  std::size_t backtrack_cap = 16;
  std::size_t max_candidates = 6000;       // vectors (both signs) in the candidate set
  std::uint64_t node_budget = 200'000'000;  // search nodes before kBudgetExceeded
  EnumConfig enum_cfg;
};

// T with T * g1 * T^T == g2 when the lattices are isometric.
std::optional<IntMatrix> is_isometric(const RatMatrix& g1, const RatMatrix& g2, const IsometryConfig& cfg = {});
inline std::optional<IntMatrix> is_isometric(const Lattice& a, const Lattice& b, const IsometryConfig& cfg = {}) {
  return is_isometric(a.gram(), b.gram(), cfg);
}

struct AutResult {
  mpz_class order;
  std::vector<IntMatrix> generators;  // sigma with sigma * g * sigma^T == g
};
AutResult automorphism_group(const RatMatrix& g, const IsometryConfig& cfg = {});
mpz_class aut_order(const RatMatrix& g, const IsometryConfig& cfg = {});
inline mpz_class aut_order(const Lattice& l, const IsometryConfig& cfg = {}) { return aut_order(l.gram(), cfg); }

}  // namespace latkit
