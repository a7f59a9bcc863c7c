#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace latkit {

// Closed interval [lo, hi] with MPFR endpoints rounded outward.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec);
  Interval(const Interval& o);
  Interval& operator=(const Interval& o);
  ~Interval();

  static Interval exact(const mpq_class& q, mpfr_prec_t prec);
  static Interval pi(mpfr_prec_t prec);
  // Gamma(q) for q > 0.
  static Interval gamma(const mpq_class& q, mpfr_prec_t prec);
  // cos(2 pi r) for rational r.
  static Interval cos_2pi(const mpq_class& r, mpfr_prec_t prec);

  mpfr_prec_t precision() const { return prec_; }

  Interval operator+(const Interval& o) const;
  Interval operator-(const Interval& o) const;
  Interval operator*(const Interval& o) const;
  // Throws kDivisionByZero when o contains 0.
  Interval operator/(const Interval& o) const;
  Interval pow(unsigned long e) const;
  // k-th root of a nonnegative interval.
  Interval root(unsigned long k) const;

  // -1: whole interval below q, +1: above q, 0: q inside (undecided).
  int compare(const mpq_class& q) const;
  // -1: entirely negative, +1: entirely positive, 0: contains 0.
  int sign() const;

  double lower() const;  // rounded down
  double upper() const;  // rounded up
  std::string to_string(int digits = 20) const;

 private:
  mpfr_prec_t prec_;
  mpfr_t lo_, hi_;
};

// Runs f(prec) for prec = start, 2 start, ... up to max_prec while it returns
// 0 ("undecided"); throws kUndecidable when the maximum is reached.
template <class F>
int decide_with_escalation(F&& f, mpfr_prec_t start, mpfr_prec_t max_prec);

}  // namespace latkit

#include "latkit/error.hpp"

namespace latkit {

template <class F>
int decide_with_escalation(F&& f, mpfr_prec_t start, mpfr_prec_t max_prec) {
  for (mpfr_prec_t prec = start; prec <= max_prec; prec *= 2) {
    int r = f(prec);
    if (r != 0) return r;
  }
  throw Error(ErrorCode::kUndecidable, "comparison undecided at maximal precision");
}

}  // namespace latkit
