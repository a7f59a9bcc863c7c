#include "latkit/enumeration.hpp"

#include <cmath>
#include <limits>

#include "latkit/lattice.hpp"
#include "latkit/reduction.hpp"

namespace latkit {

namespace {

using i128 = __int128;

bool fits_i64(const mpz_class& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; }

// Fincke-Pohst over the LLL-reduced, integer-scaled Gram. Pruning runs in
// long double with a safety margin so that it can only keep extra nodes;
// every leaf is accepted or rejected on its exact integer norm.
class Enumerator {
 public:
  Enumerator(const RatMatrix& gram, const EnumConfig& cfg) {
    if (!gram.square()) throw Error(ErrorCode::kInvalidArgument, "Gram matrix must be square");
    if (!gram.is_symmetric()) throw Error(ErrorCode::kNotSymmetric, "Gram matrix is not symmetric");
    if (!is_positive_definite(gram))
      throw Error(ErrorCode::kNotPositiveDefinite, "Gram matrix is not positive definite");
    n_ = gram.rows();
    if (n_ > cfg.dim_cap)
      throw Error(ErrorCode::kCapExceeded, "dimension " + std::to_string(n_) + " exceeds enumeration cap " +
                                               std::to_string(cfg.dim_cap));
    den_ = common_denominator(gram);
    ReductionReport red = lll(mpq_class(den_) * gram);
    IntMatrix a = to_integer(red.final_gram);
    t_ = red.transform;
    small_ = true;
    a64_.assign(n_ * n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        if (!fits_i64(a(i, j)) || abs(a(i, j)) > (mpz_class(1) << 40)) small_ = false;
        else a64_[i * n_ + j] = a(i, j).get_si();
      }
    a_ = a;
    // q[i] diagonal, r[i][j] (j > i) from the exact LDL^T of the reduced Gram.
    RatMatrix c = to_rational(a);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        c(j, i) = c(i, j);
        c(i, j) /= c(i, i);
      }
      for (std::size_t k = i + 1; k < n_; ++k)
        for (std::size_t l = k; l < n_; ++l) c(k, l) -= c(k, i) * c(i, l);
    }
    q_.resize(n_);
    r_.assign(n_ * n_, 0.0L);
    for (std::size_t i = 0; i < n_; ++i) {
      q_[i] = static_cast<long double>(c(i, i).get_d());
      for (std::size_t j = i + 1; j < n_; ++j) r_[i * n_ + j] = static_cast<long double>(c(i, j).get_d());
    }
    x_.assign(n_, 0);
  }

  std::size_t dim() const { return n_; }
  const mpz_class& den() const { return den_; }

  void set_bound(const mpz_class& scaled) {
    bound_ = scaled;
    long double b = static_cast<long double>(scaled.get_d());
    limit_ = b * (1.0L + 1e-9L) + 1e-6L;
  }

  // fn(x in reduced coordinates, exact scaled norm)
  template <class Fn>
  void run(Fn&& fn) {
    if (n_ == 0) return;
    descend(static_cast<long>(n_) - 1, 0.0L, true, fn);
  }

  std::vector<std::int64_t> to_input_coords(std::span<const std::int64_t> x) const {
    std::vector<std::int64_t> v(n_, 0);
    for (std::size_t j = 0; j < n_; ++j) {
      mpz_class acc = 0;
      for (std::size_t i = 0; i < n_; ++i)
        if (x[i] != 0) acc += t_(i, j) * x[i];
      if (!fits_i64(acc)) throw Error(ErrorCode::kCapExceeded, "vector coordinate exceeds 64 bits");
      v[j] = acc.get_si();
    }
    for (auto c : v) {
      if (c == 0) continue;
      if (c < 0)
        for (auto& e : v) e = -e;
      break;
    }
    return v;
  }

 private:
  mpz_class exact_norm() const {
    if (small_) {
      i128 acc = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (x_[i] == 0) continue;
        i128 row = 0;
        for (std::size_t j = 0; j < n_; ++j) row += static_cast<i128>(a64_[i * n_ + j]) * x_[j];
        acc += row * x_[i];
      }
      // Norms stay far below 2^100 when entries are < 2^40 and |x| is bounded by the enumeration box.
      bool neg = acc < 0;
      unsigned __int128 u = neg ? -static_cast<unsigned __int128>(acc) : static_cast<unsigned __int128>(acc);
      mpz_class z = static_cast<unsigned long>(u >> 64);
      z <<= 64;
      z += static_cast<unsigned long>(static_cast<std::uint64_t>(u));
      return neg ? mpz_class(-z) : z;
    }
    mpz_class acc = 0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) acc += a_(i, j) * x_[i] * x_[j];
    return acc;
  }

  template <class Fn>
  void descend(long i, long double partial, bool upper_zero, Fn& fn) {
    if (i < 0) {
      if (upper_zero) return;
      mpz_class norm = exact_norm();
      if (norm <= bound_) fn(std::span<const std::int64_t>(x_), norm);
      return;
    }
    const std::size_t ui = static_cast<std::size_t>(i);
    long double center = 0;
    for (std::size_t j = ui + 1; j < n_; ++j) center -= r_[ui * n_ + j] * x_[j];
    long double rem = limit_ - partial;
    if (rem < 0) return;
    long double w = std::sqrt(rem / q_[ui]) * (1.0L + 1e-9L) + 1e-6L;
    long double lo_f = std::ceil(center - w), hi_f = std::floor(center + w);
    if (lo_f < -9e18L || hi_f > 9e18L) throw Error(ErrorCode::kCapExceeded, "enumeration range overflow");
    std::int64_t lo = static_cast<std::int64_t>(lo_f), hi = static_cast<std::int64_t>(hi_f);
    if (upper_zero && lo < 0) lo = 0;
    for (std::int64_t v = lo; v <= hi; ++v) {
      long double d = v - center;
      long double p = partial + q_[ui] * d * d;
      if (p > limit_) continue;
      x_[ui] = v;
      descend(i - 1, p, upper_zero && v == 0, fn);
    }
    x_[ui] = 0;
  }

  std::size_t n_ = 0;
  mpz_class den_;
  IntMatrix a_, t_;
  std::vector<std::int64_t> a64_;
  bool small_ = true;
  std::vector<long double> q_, r_;
  std::vector<std::int64_t> x_;
  mpz_class bound_;
  long double limit_ = 0;
};

mpq_class unscale(const mpz_class& scaled, const mpz_class& den) {
  mpq_class q(scaled, den);
  q.canonicalize();
  return q;
}

mpz_class scaled_floor(const mpq_class& bound, const mpz_class& den) {
  mpq_class b = bound * den;
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
  return f;
}

}  // namespace

void for_each_short_vector(const RatMatrix& gram, const mpq_class& bound,
                           const std::function<void(std::span<const std::int64_t>, const mpq_class&)>& fn,
                           const EnumConfig& cfg) {
  Enumerator e(gram, cfg);
  if (bound < 0) return;
  e.set_bound(scaled_floor(bound, e.den()));
  e.run([&](std::span<const std::int64_t> x, const mpz_class& norm) {
    auto v = e.to_input_coords(x);
    fn(v, unscale(norm, e.den()));
  });
}

ShortVectorSet short_vectors(const RatMatrix& gram, const mpq_class& bound, const EnumConfig& cfg) {
  ShortVectorSet out;
  out.bound = bound;
  for_each_short_vector(
      gram, bound,
      [&](std::span<const std::int64_t> v, const mpq_class& norm) {
        if (out.vectors.size() >= cfg.max_vectors)
          throw Error(ErrorCode::kCapExceeded, "short vector count exceeds cap " + std::to_string(cfg.max_vectors));
        out.vectors.emplace_back(v.begin(), v.end());
        out.norms.push_back(norm);
        ++out.counts_by_norm[norm];
      },
      cfg);
  return out;
}

MinimumResult minimum(const RatMatrix& gram, const EnumConfig& cfg) {
  Enumerator e(gram, cfg);
  if (e.dim() == 0) throw Error(ErrorCode::kInvalidArgument, "minimum of the zero lattice");
  // Start from the smallest diagonal entry of the input and shrink on the way.
  mpq_class start = gram(0, 0);
  for (std::size_t i = 1; i < gram.rows(); ++i) start = std::min(start, mpq_class(gram(i, i)));
  mpz_class best = scaled_floor(start, e.den());
  e.set_bound(best);
  std::size_t count = 0;
  e.run([&](std::span<const std::int64_t>, const mpz_class& norm) {
    if (norm < best) {
      best = norm;
      count = 0;
      e.set_bound(best);
    }
    if (norm == best) ++count;
  });
  return {unscale(best, e.den()), count};
}

std::map<mpq_class, std::uint64_t> theta_prefix(const RatMatrix& gram, const mpq_class& up_to_norm,
                                                const EnumConfig& cfg) {
  std::map<mpq_class, std::uint64_t> counts;
  Enumerator e(gram, cfg);
  if (up_to_norm < 0) return counts;
  counts[mpq_class(0)] = 1;
  e.set_bound(scaled_floor(up_to_norm, e.den()));
  std::map<mpz_class, std::uint64_t> raw;
  e.run([&](std::span<const std::int64_t>, const mpz_class& norm) { raw[norm] += 2; });
  for (const auto& [k, v] : raw) counts[unscale(k, e.den())] += v;
  return counts;
}

}  // namespace latkit
