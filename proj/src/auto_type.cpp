#include "latkit/auto_type.hpp"

#include <regex>

#include "latkit/exact_linear.hpp"

namespace latkit {

std::string AutType::to_string() const {
  return std::to_string(p) + "-(" + std::to_string(z) + "," + std::to_string(f) + ")-" + std::to_string(s);
}

AutType parse_type(const std::string& text) {
  static const std::regex re(R"(\s*(\d+)-\((\d+),(\d+)\)-(\d+)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw Error(ErrorCode::kParse, "bad type '" + text + "'");
  return {std::stol(m[1]), std::stol(m[2]), std::stol(m[3]), std::stol(m[4])};
}

namespace {

IntMatrix power(IntMatrix base, long e) {
  IntMatrix r = IntMatrix::identity(base.rows());
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

}  // namespace

long matrix_order(const IntMatrix& sigma, long limit) {
  const IntMatrix id = IntMatrix::identity(sigma.rows());
  IntMatrix acc = sigma;
  for (long k = 1; k <= limit; ++k) {
    if (acc == id) return k;
    acc = acc * sigma;
  }
  return 0;
}

TypeResult compute_type(const Lattice& l, const IntMatrix& sigma) {
  const std::size_t n = l.dim();
  if (sigma.rows() != n || sigma.cols() != n) throw Error(ErrorCode::kInvalidArgument, "sigma has the wrong shape");
  RatMatrix sr = to_rational(sigma);
  if (sr * l.gram() * sr.transposed() != l.gram()) throw Error(ErrorCode::kNotIsometry, "sigma does not preserve the form");
  const IntMatrix id = IntMatrix::identity(n);
  if (sigma == id) throw Error(ErrorCode::kOrderNotPrime, "sigma is the identity");
  // Phi_p divides the minimal polynomial, so p - 1 <= n.
  long p = 0;
  for (long q = 2; q <= static_cast<long>(n) + 1; ++q)
    if (is_prime(q) && power(sigma, q) == id) {
      p = q;
      break;
    }
  if (p == 0) throw Error(ErrorCode::kOrderNotPrime, "order of sigma is not prime");

  IntMatrix fixed_rows = integer_left_kernel(sigma - id);
  mpz_class den = common_denominator(l.gram());
  IntMatrix g = to_integer(mpq_class(den) * l.gram());
  IntMatrix image_rows;
  if (fixed_rows.rows() == 0) image_rows = id;
  else image_rows = integer_left_kernel(g * fixed_rows.transposed());

  const long f = static_cast<long>(fixed_rows.rows());
  const long zdim = static_cast<long>(image_rows.rows());
  if (f + zdim != static_cast<long>(n) || zdim % (p - 1) != 0)
    throw Error(ErrorCode::kPrecondition, "fixed and image parts do not split the space");
  IntMatrix both = stack(fixed_rows, image_rows);
  mpz_class idx = abs(det(both));
  long s = 0;
  mpz_class rest = idx;
  while (rest % p == 0) {
    rest /= p;
    ++s;
  }
  if (rest != 1) throw Error(ErrorCode::kPrecondition, "index of F + Z is not a power of p");

  TypeResult r{AutType{p, zdim / (p - 1), f, s},
               SplittingData{f ? sublattice(l, to_rational(fixed_rows)) : Lattice(RatMatrix()),
                             zdim ? sublattice(l, to_rational(image_rows)) : Lattice(RatMatrix()), fixed_rows,
                             image_rows, s}};
  return r;
}

std::vector<std::string> check_constraints(const AutType& t, bool unimodular) {
  std::vector<std::string> v;
  if (t.s > std::min(t.z, t.f)) v.push_back("s<=min(z,f)");
  if (unimodular) {
    if ((t.s - t.z) % 2 != 0) v.push_back("s==z(mod 2)");
    if (t.s == 0 && t.z % 2 != 0) v.push_back("s=0=>z even");
    if (t.s == t.f && t.p % 2 == 1 && t.f % 8 != 0) v.push_back("s=f,p odd=>f==0(mod 8)");
  }
  return v;
}

std::vector<std::string> constraint_notes(const AutType& t, bool unimodular) {
  std::vector<std::string> v;
  if (!unimodular) return v;
  if (t.s == t.z) v.push_back("s=z: sqrt(p) Z^# is a Hermitian unimodular trace lattice");
  if (t.s == t.f && t.p % 2 == 1) v.push_back("s=f: F/p is even unimodular");
  return v;
}

bool fixed_lattice_rescale_check(const Lattice& fixed, long s, long p) {
  if (p % 2 == 0) throw Error(ErrorCode::kPrecondition, "rescale check needs odd p");
  if (s != static_cast<long>(fixed.dim())) throw Error(ErrorCode::kPrecondition, "rescale check needs s = f");
  if (fixed.dim() == 0) return true;
  Lattice r = rescale(fixed, mpq_class(1, p));
  return is_unimodular(r) && is_even(r);
}

bool fixed_lattice_rescale_check(const SplittingData& s, long p) {
  return fixed_lattice_rescale_check(s.fixed, s.index_exponent, p);
}

}  // namespace latkit
