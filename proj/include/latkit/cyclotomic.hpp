#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "latkit/bounds.hpp"
#include "latkit/exact_linear.hpp"
#include "latkit/lattice.hpp"

namespace latkit {

// Coefficients from the constant term up.
std::vector<mpz_class> cyclotomic_poly(long n);
long euler_phi(long n);

// Element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^(phi(m)-1).
class CycloElement {
 public:
  // Any coefficient length; the polynomial is reduced mod Phi_m.
  CycloElement(long m, const std::vector<mpq_class>& poly);
  static CycloElement zero(long m);
  static CycloElement one(long m);
  static CycloElement rational(long m, const mpq_class& q);
  static CycloElement zeta(long m, long k = 1);

  long modulus() const { return m_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  std::size_t degree() const { return c_.size(); }

  CycloElement operator+(const CycloElement& o) const;
  CycloElement operator-(const CycloElement& o) const;
  CycloElement operator-() const;
  CycloElement operator*(const CycloElement& o) const;
  CycloElement operator*(const mpq_class& q) const;
  friend bool operator==(const CycloElement&, const CycloElement&) = default;

  bool is_zero() const;
  bool is_integral() const;  // coefficients in Z, i.e. in Z[zeta]
  bool is_real() const { return conj() == *this; }
  CycloElement conj() const;
  // zeta -> zeta^g, gcd(g, m) = 1 (kInvalidArgument).
  CycloElement galois(long g) const;
  // Throws kDivisionByZero.
  CycloElement inverse() const;
  CycloElement pow(long e) const;
  // Rows: coordinates of zeta^i * x.
  RatMatrix mult_matrix() const;
  mpq_class trace() const;
  mpq_class norm() const;
  std::string to_string() const;

 private:
  long m_;
  std::vector<mpq_class> c_;
};

CycloElement derivative_at_zeta(long m);  // Phi_m'(zeta)

// Fractional ideal as a Z-module (numerator HNF / denominator) in the
// power basis, closed under multiplication by zeta.
class FracIdeal {
 public:
  // Z[zeta]-module generated by the elements; throws kInvalidArgument when
  // they do not span a full-rank module.
  static FracIdeal generated_by(long m, const std::vector<CycloElement>& gens);
  static FracIdeal principal(const CycloElement& x);
  static FracIdeal unit(long m);
  // Checks zeta-closure and full rank (kInvalidArgument).
  static FracIdeal from_module(long m, const RationalModule& mod);

  long modulus() const { return m_; }
  const IntMatrix& numerator() const { return mod_.numerator; }
  const mpz_class& denominator() const { return mod_.denominator; }
  RatMatrix basis() const { return mod_.basis(); }
  std::vector<CycloElement> basis_elements() const;
  bool contains(const CycloElement& x) const;
  // [Z[zeta] : I] for integral I; multiplicative in general.
  mpq_class norm() const;
  // Coordinates of x in the HNF basis (rational unless x lies in I).
  RatVector coordinates(const CycloElement& x) const;

  FracIdeal conj() const;
  FracIdeal galois(long g) const;
  FracIdeal inverse() const;
  // Trace dual {x : Tr(x I) in Z}.
  FracIdeal trace_dual() const;
  friend FracIdeal operator*(const FracIdeal& a, const FracIdeal& b);
  friend bool operator==(const FracIdeal&, const FracIdeal&) = default;

  // "m" line, HNF rows of the numerator, then "den q". '#' comments.
  std::string to_text() const;
  static FracIdeal parse(const std::string& text);
  static FracIdeal load(const std::string& path);

 private:
  FracIdeal(long m, RationalModule mod) : m_(m), mod_(std::move(mod)) {}
  long m_ = 1;
  RationalModule mod_;
};

// The different, generated by Phi_m'(zeta). Requires m != 2 (mod 4).
FracIdeal different(long m);

// (J, b_alpha) with b_alpha(x, y) = Tr(alpha x conj(y)).
struct TraceFormLattice {
  FracIdeal ideal;
  CycloElement alpha;
  RatMatrix gram;
  // For transformed lattices: rows are the images of the parent basis in
  // this basis, so transform * gram * transform^T = parent gram.
  IntMatrix transform;
  Lattice lattice() const { return Lattice(gram); }
};

// Throws kInvalidArgument when alpha is not real, kNotPositiveDefinite when
// it is not totally positive.
TraceFormLattice trace_form_gram(const FracIdeal& j, const CycloElement& alpha, const BoundsConfig& cfg = {});
// conj(J)^-1 Delta^-1 alpha^-1, checked against the matrix dual (kPrecondition).
FracIdeal ideal_dual(const TraceFormLattice& l);
bool is_unimodular_pair(const FracIdeal& j, const CycloElement& alpha, const BoundsConfig& cfg = {});

// Isometric transforms; each verifies transform * gram * transform^T = input gram.
TraceFormLattice galois_transform(const TraceFormLattice& l, long g, const BoundsConfig& cfg = {});
TraceFormLattice unit_scale(const TraceFormLattice& l, const CycloElement& u, const BoundsConfig& cfg = {});
TraceFormLattice ideal_scale(const TraceFormLattice& l, const CycloElement& a, const BoundsConfig& cfg = {});

// k with 1 <= k <= m/2, gcd(k, m) = 1: one per real embedding.
std::vector<long> real_embeddings(long m);
// Value of x at zeta -> exp(2 pi i k / m), real part.
Interval embedding_real_part(const CycloElement& x, long k, mpfr_prec_t prec);
// Sign of a real element under embedding k; 0 only for x = 0.
int embedding_sign(const CycloElement& x, long k, const BoundsConfig& cfg = {});
bool is_totally_positive(const CycloElement& x, const BoundsConfig& cfg = {});
// Row i, column j: 1 iff real embedding j maps unit i to a negative number.
std::vector<std::vector<int>> sign_matrix(const std::vector<CycloElement>& units, const BoundsConfig& cfg = {});

// (1 - zeta^a)/(1 - zeta) for prime-power m, 1 - zeta^a otherwise;
// 1 <= a < m/2, gcd(a, m) = 1 (a = 1 omitted for prime powers).
std::vector<CycloElement> cyclotomic_units(long m);

struct AlphaSearchConfig {
  long max_exponent = 2;
  BoundsConfig bounds;
};

// alpha = +-zeta^k prod u_i^e_i / (beta conj(beta) Phi_m'(zeta)) for a
// generator beta of J found among its basis elements. Returns the first
// real totally positive alpha with is_unimodular_pair(J, alpha), in a fixed
// search order; nullopt when none is found or J has no visible generator.
std::optional<CycloElement> find_unimodular_alpha(const FracIdeal& j, const std::vector<CycloElement>& units,
                                                  const AlphaSearchConfig& cfg = {});

}  // namespace latkit
