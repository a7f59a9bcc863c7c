#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "latkit/matrix.hpp"

namespace latkit {

struct HnfResult {
  IntMatrix h;  // row Hermite normal form, zero rows last
  IntMatrix u;  // unimodular, h = u * m
  std::size_t rank = 0;
};

// Row Hermite normal form: pivots positive, entries above a pivot reduced
// into [0, pivot). Zero input gives a zero H.
HnfResult hnf(const IntMatrix& m);

// The nonzero rows of the HNF, i.e. the canonical basis of the row module.
IntMatrix hnf_basis(const IntMatrix& m);

// Canonical basis of the Z-module spanned by rational rows: returns (H, d)
// with the module equal to H / d, H in HNF and d the least such denominator.
struct RationalModule {
  IntMatrix numerator;
  mpz_class denominator = 1;
  friend bool operator==(const RationalModule&, const RationalModule&) = default;
  RatMatrix basis() const;
};
RationalModule module_basis(const RatMatrix& rows);

struct SnfResult {
  IntMatrix d;  // diagonal, d(i,i) | d(i+1,i+1), nonnegative
  IntMatrix u;  // unimodular (rows x rows)
  IntMatrix v;  // unimodular (cols x cols), d = u * m * v
};

SnfResult snf_with_transforms(const IntMatrix& m);
IntMatrix snf(const IntMatrix& m);
// Invariant factors (the diagonal of the SNF, zeros included).
std::vector<mpz_class> elementary_divisors(const IntMatrix& m);

mpq_class det(const RatMatrix& m);
mpz_class det(const IntMatrix& m);
// Throws kSingular.
RatMatrix inverse(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);

// Basis (as rows) of {x : M x = 0} over Q.
RatMatrix rational_kernel(const RatMatrix& m);
// Basis (as rows) of {x : M x = 0} over F_p, entries in [0, p).
std::vector<std::vector<std::int64_t>> kernel_mod_p(const IntMatrix& m, std::int64_t p);
// Z-basis (as rows) of {x in Z^r : x M = 0}, the integral left kernel.
IntMatrix integer_left_kernel(const IntMatrix& m);
// Solve x M = b for a row vector x (M square, invertible). Throws kSingular.
RatVector solve_left(const RatMatrix& m, const RatVector& b);

// Reduced row echelon form over F_p (in place); returns pivot columns.
std::vector<std::size_t> rref_mod_p(std::vector<std::vector<std::int64_t>>& rows, std::int64_t p);

std::int64_t mod_floor(std::int64_t a, std::int64_t p);
std::int64_t inverse_mod(std::int64_t a, std::int64_t p);
bool is_prime(std::int64_t n);

}  // namespace latkit
