#include "latkit/reduction.hpp"

#include <limits>
#include <vector>

#include "latkit/exact_linear.hpp"
#include "latkit/lattice.hpp"

namespace latkit {

SeededRng::SeededRng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t SeededRng::next() { return engine_(); }

std::uint64_t SeededRng::below(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "empty range");
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % n);
  std::uint64_t x;
  do x = engine_();
  while (x >= limit);
  return x % n;
}

namespace {

// b_dst += c * b_src on the working Gram and transform.
void basis_add(IntMatrix& a, IntMatrix& t, std::size_t dst, std::size_t src, const mpz_class& c) {
  a.add_row_multiple(dst, src, c);
  a.add_col_multiple(dst, src, c);
  t.add_row_multiple(dst, src, c);
}

void basis_swap(IntMatrix& a, IntMatrix& t, std::size_t i, std::size_t j) {
  a.swap_rows(i, j);
  a.swap_cols(i, j);
  t.swap_rows(i, j);
}

mpz_class round_div(const mpz_class& num, const mpz_class& den) {
  // den > 0
  mpz_class r;
  mpz_class twice = 2 * num + den;
  mpz_class d2 = 2 * den;
  mpz_fdiv_q(r.get_mpz_t(), twice.get_mpz_t(), d2.get_mpz_t());
  return r;
}

struct IntegralLll {
  IntMatrix& a;
  IntMatrix& t;
  mpz_class dnum, dden, enum_, eden;
  std::size_t n;
  std::vector<mpz_class> d;               // d[0] = 1, d[k] for k = 1..n
  std::vector<std::vector<mpz_class>> lam;  // lam[k][j], 1 <= j < k <= n

  IntegralLll(IntMatrix& a_, IntMatrix& t_, const mpq_class& delta, const mpq_class& eta)
      : a(a_), t(t_), dnum(delta.get_num()), dden(delta.get_den()), enum_(eta.get_num()), eden(eta.get_den()),
        n(a_.rows()), d(n + 1), lam(n + 1, std::vector<mpz_class>(n + 1)) {}

  void gram_schmidt(std::size_t k) {
    for (std::size_t j = 1; j <= k; ++j) {
      mpz_class u = a(k - 1, j - 1);
      for (std::size_t i = 1; i < j; ++i) {
        u = d[i] * u - lam[k][i] * lam[j][i];
        mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), d[i - 1].get_mpz_t());
      }
      if (j < k) lam[k][j] = u;
      else d[k] = u;
    }
  }

  void size_reduce(std::size_t k, std::size_t l) {
    mpz_class& lk = lam[k][l];
    if (eden * abs(lk) <= enum_ * d[l]) return;
    mpz_class q = round_div(lk, d[l]);
    basis_add(a, t, k - 1, l - 1, -q);
    lk -= q * d[l];
    for (std::size_t i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
  }

  void swap(std::size_t k, std::size_t kmax) {
    basis_swap(a, t, k - 1, k - 2);
    for (std::size_t j = 1; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
    mpz_class l = lam[k][k - 1];
    mpz_class b = d[k - 2] * d[k] + l * l;
    mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), d[k - 1].get_mpz_t());
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      mpz_class tmp = lam[i][k];
      mpz_class x = d[k] * lam[i][k - 1] - l * tmp;
      mpz_divexact(lam[i][k].get_mpz_t(), x.get_mpz_t(), d[k - 1].get_mpz_t());
      mpz_class y = b * tmp + l * lam[i][k];
      mpz_divexact(lam[i][k - 1].get_mpz_t(), y.get_mpz_t(), d[k].get_mpz_t());
    }
    d[k - 1] = b;
  }

  void run() {
    if (n <= 1) return;
    d[0] = 1;
    d[1] = a(0, 0);
    std::size_t k = 2, kmax = 1;
    while (k <= n) {
      if (k > kmax) {
        kmax = k;
        gram_schmidt(k);
      }
      size_reduce(k, k - 1);
      mpz_class lhs = dden * d[k] * d[k - 2];
      mpz_class rhs = dnum * d[k - 1] * d[k - 1] - dden * lam[k][k - 1] * lam[k][k - 1];
      if (lhs < rhs) {
        swap(k, kmax);
        if (k > 2) --k;
      } else {
        for (std::size_t l = k - 2; l >= 1; --l) size_reduce(k, l);
        ++k;
      }
    }
  }
};

void check_lll_params(const mpq_class& delta, const mpq_class& eta) {
  if (delta <= mpq_class(1, 4) || delta > 1) throw Error(ErrorCode::kInvalidArgument, "delta must lie in (1/4, 1]");
  if (eta < mpq_class(1, 2) || eta * eta >= delta)
    throw Error(ErrorCode::kInvalidArgument, "eta must lie in [1/2, sqrt(delta))");
}

void lll_inplace(IntMatrix& a, IntMatrix& t, const mpq_class& delta, const mpq_class& eta) {
  IntegralLll(a, t, delta, eta).run();
}

void seysen_inplace(IntMatrix& a, IntMatrix& t) {
  const std::size_t n = a.rows();
  if (n < 2) return;
  // det(a) * a^-1 is the adjugate, integral; scaling does not move any decision.
  mpz_class det_a = det(a);
  IntMatrix as = to_integer(mpq_class(det_a) * inverse(to_rational(a)));
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        mpz_class num = a(i, i) * as(i, j) - a(i, j) * as(j, j);
        mpz_class den = 2 * a(i, i) * as(j, j);
        mpz_class l = round_div(num, den);
        if (l == 0) continue;
        mpz_class gain = 2 * l * l * a(i, i) * as(j, j) + 2 * l * (a(i, j) * as(j, j) - a(i, i) * as(i, j));
        if (gain >= 0) continue;
        basis_add(a, t, j, i, l);
        as.add_row_multiple(i, j, -l);
        as.add_col_multiple(i, j, -l);
        changed = true;
      }
  }
}

void pair_reduce_inplace(IntMatrix& a, IntMatrix& t) {
  const std::size_t n = a.rows();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        while (2 * abs(a(i, j)) > a(j, j)) {
          basis_add(a, t, i, j, sgn(a(i, j)) > 0 ? mpz_class(-1) : mpz_class(1));
          changed = true;
        }
      }
  }
}

struct Scaled {
  mpz_class den;
  IntMatrix a;
};

Scaled scale_gram(const RatMatrix& gram) {
  if (!gram.square()) throw Error(ErrorCode::kInvalidArgument, "Gram matrix must be square");
  if (!gram.is_symmetric()) throw Error(ErrorCode::kNotSymmetric, "Gram matrix is not symmetric");
  // Reduction of an indefinite form need not terminate.
  if (!is_positive_definite(gram)) throw Error(ErrorCode::kNotPositiveDefinite, "Gram matrix is not positive definite");
  mpz_class den = common_denominator(gram);
  return {den, to_integer(mpq_class(den) * gram)};
}

ReductionReport finish(const Scaled& s, IntMatrix t) {
  ReductionReport r;
  mpq_class inv(1);
  inv /= s.den;
  r.final_gram = inv * to_rational(s.a);
  r.transform = std::move(t);
  return r;
}

IntMatrix random_unimodular_rng(std::size_t n, std::size_t k, SeededRng& rng) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  static const int coeffs[4] = {-2, -1, 1, 2};
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t i = rng.below(n);
    std::size_t j = rng.below(n - 1);
    if (j >= i) ++j;
    u.add_row_multiple(i, j, mpz_class(coeffs[rng.below(4)]));
  }
  return u;
}

}  // namespace

IntMatrix random_unimodular(std::size_t n, std::size_t k, std::uint64_t seed) {
  SeededRng rng(seed);
  return random_unimodular_rng(n, k, rng);
}

ReductionReport lll(const RatMatrix& gram, const mpq_class& delta, const mpq_class& eta) {
  check_lll_params(delta, eta);
  Scaled s = scale_gram(gram);
  IntMatrix t = IntMatrix::identity(gram.rows());
  lll_inplace(s.a, t, delta, eta);
  return finish(s, std::move(t));
}

ReductionReport seysen(const RatMatrix& gram) {
  Scaled s = scale_gram(gram);
  IntMatrix t = IntMatrix::identity(gram.rows());
  seysen_inplace(s.a, t);
  return finish(s, std::move(t));
}

ReductionReport pair_reduce(const RatMatrix& gram) {
  Scaled s = scale_gram(gram);
  IntMatrix t = IntMatrix::identity(gram.rows());
  pair_reduce_inplace(s.a, t);
  return finish(s, std::move(t));
}

ReductionReport red_loop(const RatMatrix& gram, const RedLoopConfig& cfg) {
  check_lll_params(cfg.delta, cfg.eta);
  if (cfg.threshold < 0) throw Error(ErrorCode::kInvalidArgument, "threshold must be nonnegative");
  Scaled s = scale_gram(gram);
  const std::size_t n = gram.rows();
  IntMatrix t = IntMatrix::identity(n);
  mpq_class scaled_threshold = cfg.threshold * s.den;
  SeededRng rng(cfg.seed);
  std::size_t loops = 0;

  auto witness = [&]() -> std::optional<ReductionReport> {
    for (std::size_t i = 0; i < n; ++i) {
      if (s.a(i, i) > scaled_threshold) continue;
      ReductionReport r = finish(s, t);
      Witness w{t.row_vector(i), 0};
      RatVector q(w.coords.begin(), w.coords.end());
      w.norm = bilinear<mpq_class>(q, gram, q);
      if (w.norm > cfg.threshold || w.norm == 0) throw Error(ErrorCode::kPrecondition, "witness norm check failed");
      r.witness = std::move(w);
      r.conclusive = true;
      r.loops_used = loops;
      return r;
    }
    return std::nullopt;
  };

  if (auto r = witness()) return *r;
  for (std::size_t phase = 0; phase < cfg.phases; ++phase) {
    if (phase > 0) {
      // A unimodular Gram F is congruent to F^-1 via F^-1 itself.
      if (s.den == 1 && det(s.a) == 1) {
        IntMatrix inv = to_integer(inverse(to_rational(s.a)));
        s.a = inv;
        t = inv * t;
      }
      IntMatrix u = random_unimodular_rng(n, cfg.disguise_ops, rng);
      s.a = u * s.a * u.transposed();
      t = u * t;
      if (auto r = witness()) return *r;
    }
    for (std::size_t loop = 0; loop < cfg.loops_per_phase; ++loop) {
      ++loops;
      IntMatrix before = s.a;
      lll_inplace(s.a, t, cfg.delta, cfg.eta);
      if (auto r = witness()) return *r;
      seysen_inplace(s.a, t);
      if (auto r = witness()) return *r;
      pair_reduce_inplace(s.a, t);
      if (auto r = witness()) return *r;
      if (s.a == before) break;
    }
  }
  ReductionReport r = finish(s, t);
  r.loops_used = loops;
  return r;
}

}  // namespace latkit
