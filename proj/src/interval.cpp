#include "latkit/interval.hpp"

#include <vector>

namespace latkit {

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval& Interval::operator=(const Interval& o) {
  if (this == &o) return *this;
  prec_ = o.prec_;
  mpfr_set_prec(lo_, prec_);
  mpfr_set_prec(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::exact(const mpq_class& q, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::pi(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::gamma(const mpq_class& q, mpfr_prec_t prec) {
  if (q <= 0) throw Error(ErrorCode::kInvalidArgument, "gamma argument must be positive");
  // Exact argument when it is representable; otherwise evaluate at both ends.
  // Gamma is increasing on [2, inf), which covers every use here.
  if (q < 2) throw Error(ErrorCode::kInvalidArgument, "gamma only supported on [2, inf)");
  Interval x = exact(q, prec);
  Interval r(prec);
  mpfr_gamma(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_gamma(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::cos_2pi(const mpq_class& r_in, mpfr_prec_t prec) {
  // reduce r into [0, 1)
  mpq_class r = r_in;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  r -= fl;
  if (r == 0) return exact(1, prec);
  if (r == mpq_class(1, 2)) return exact(-1, prec);
  if (r == mpq_class(1, 4) || r == mpq_class(3, 4)) return exact(0, prec);
  // On (0, 1/2) the function decreases in r, on (1/2, 1) it increases.
  Interval angle = pi(prec) * exact(2 * r, prec);
  Interval out(prec);
  if (r < mpq_class(1, 2)) {
    mpfr_cos(out.lo_, angle.hi_, MPFR_RNDD);
    mpfr_cos(out.hi_, angle.lo_, MPFR_RNDU);
  } else {
    mpfr_cos(out.lo_, angle.lo_, MPFR_RNDD);
    mpfr_cos(out.hi_, angle.hi_, MPFR_RNDU);
  }
  if (mpfr_cmp_si(out.lo_, -1) < 0) mpfr_set_si(out.lo_, -1, MPFR_RNDD);
  if (mpfr_cmp_si(out.hi_, 1) > 0) mpfr_set_si(out.hi_, 1, MPFR_RNDU);
  return out;
}

Interval Interval::operator+(const Interval& o) const {
  Interval r(std::min(prec_, o.prec_));
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::operator-(const Interval& o) const {
  Interval r(std::min(prec_, o.prec_));
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

Interval Interval::operator*(const Interval& o) const {
  const mpfr_prec_t p = std::min(prec_, o.prec_);
  Interval r(p);
  mpfr_t t;
  mpfr_init2(t, p);
  const mpfr_srcptr a[2] = {lo_, hi_};
  const mpfr_srcptr b[2] = {o.lo_, o.hi_};
  bool first = true;
  for (auto x : a)
    for (auto y : b) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

Interval Interval::operator/(const Interval& o) const {
  if (o.sign() == 0) throw Error(ErrorCode::kDivisionByZero, "interval division by an interval containing 0");
  Interval inv(o.prec_);
  mpfr_si_div(inv.lo_, 1, o.hi_, MPFR_RNDD);
  mpfr_si_div(inv.hi_, 1, o.lo_, MPFR_RNDU);
  return *this * inv;
}

Interval Interval::pow(unsigned long e) const {
  if (mpfr_sgn(lo_) < 0) throw Error(ErrorCode::kInvalidArgument, "pow only for nonnegative intervals");
  Interval r(prec_);
  mpfr_pow_ui(r.lo_, lo_, e, MPFR_RNDD);
  mpfr_pow_ui(r.hi_, hi_, e, MPFR_RNDU);
  return r;
}

Interval Interval::root(unsigned long k) const {
  if (mpfr_sgn(lo_) < 0) throw Error(ErrorCode::kInvalidArgument, "root only for nonnegative intervals");
  Interval r(prec_);
  mpfr_rootn_ui(r.lo_, lo_, k, MPFR_RNDD);
  mpfr_rootn_ui(r.hi_, hi_, k, MPFR_RNDU);
  return r;
}

int Interval::compare(const mpq_class& q) const {
  if (mpfr_cmp_q(hi_, q.get_mpq_t()) < 0) return -1;
  if (mpfr_cmp_q(lo_, q.get_mpq_t()) > 0) return 1;
  return 0;
}

int Interval::sign() const {
  if (mpfr_sgn(lo_) > 0) return 1;
  if (mpfr_sgn(hi_) < 0) return -1;
  return 0;
}

double Interval::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

std::string Interval::to_string(int digits) const {
  std::vector<char> buf(digits + 64);
  std::string out = "[";
  mpfr_snprintf(buf.data(), buf.size(), "%.*RDg", digits, lo_);
  out += buf.data();
  out += ", ";
  mpfr_snprintf(buf.data(), buf.size(), "%.*RUg", digits, hi_);
  out += buf.data();
  return out + "]";
}

}  // namespace latkit
