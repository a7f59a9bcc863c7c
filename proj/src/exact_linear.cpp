#include "latkit/exact_linear.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace latkit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSingular: return "singular";
    case ErrorCode::kNotIntegral: return "not integral";
    case ErrorCode::kNotPositiveDefinite: return "not positive definite";
    case ErrorCode::kNotSymmetric: return "not symmetric";
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kCapExceeded: return "cap exceeded";
    case ErrorCode::kNotContained: return "not contained";
    case ErrorCode::kNotIsometry: return "not an isometry";
    case ErrorCode::kOrderNotPrime: return "order not prime";
    case ErrorCode::kNotElementary: return "non-elementary p-part";
    case ErrorCode::kNotIsotropic: return "not isotropic";
    case ErrorCode::kPrecondition: return "precondition violated";
    case ErrorCode::kUndecidable: return "undecidable at maximum precision";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kBudgetExceeded: return "budget exceeded";
    case ErrorCode::kDivisionByZero: return "division by zero";
  }
  return "unknown";
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw Error(ErrorCode::kNotIntegral, "matrix entry " + m(i, j).get_str());
      out(i, j) = m(i, j).get_num();
    }
  return out;
}

bool is_integral(const RatMatrix& m) {
  for (const auto& x : m.data())
    if (x.get_den() != 1) return false;
  return true;
}

mpz_class common_denominator(const RatMatrix& m) {
  mpz_class d = 1;
  for (const auto& x : m.data()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  return d;
}

template <class T>
static std::string matrix_string(const Matrix<T>& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}
std::string to_string(const RatMatrix& m) { return matrix_string(m); }
std::string to_string(const IntMatrix& m) { return matrix_string(m); }

namespace {

// rows (a, b) <- (s*a + t*b, -(y)*a + (x)*b) where g = s*x + t*y.
void combine_rows(IntMatrix& m, std::size_t a, std::size_t b, const mpz_class& s, const mpz_class& t,
                  const mpz_class& x_over_g, const mpz_class& y_over_g) {
  mpz_class ra, rb;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    ra = s * m(a, j) + t * m(b, j);
    rb = x_over_g * m(b, j) - y_over_g * m(a, j);
    m(a, j) = ra;
    m(b, j) = rb;
  }
}

}  // namespace

HnfResult hnf(const IntMatrix& m) {
  HnfResult res{m, IntMatrix::identity(m.rows()), 0};
  IntMatrix& h = res.h;
  IntMatrix& u = res.u;
  const std::size_t nr = h.rows(), nc = h.cols();
  std::size_t r = 0;
  mpz_class g, s, t, xg, yg, q;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    // Bring the smallest nonzero entry of the column up to row r, then clear below.
    std::size_t best = nr;
    for (std::size_t i = r; i < nr; ++i)
      if (h(i, c) != 0 && (best == nr || abs(h(i, c)) < abs(h(best, c)))) best = i;
    if (best == nr) continue;
    h.swap_rows(r, best);
    u.swap_rows(r, best);
    for (std::size_t i = r + 1; i < nr; ++i) {
      if (h(i, c) == 0) continue;
      if (mpz_divisible_p(h(i, c).get_mpz_t(), h(r, c).get_mpz_t())) {
        q = h(i, c) / h(r, c);
        mpz_class nq = -q;
        h.add_row_multiple(i, r, nq);
        u.add_row_multiple(i, r, nq);
        continue;
      }
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(r, c).get_mpz_t(), h(i, c).get_mpz_t());
      xg = h(r, c) / g;
      yg = h(i, c) / g;
      combine_rows(h, r, i, s, t, xg, yg);
      combine_rows(u, r, i, s, t, xg, yg);
    }
    if (h(r, c) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t k = 0; k < r; ++k) {
      mpz_fdiv_q(q.get_mpz_t(), h(k, c).get_mpz_t(), h(r, c).get_mpz_t());
      if (q == 0) continue;
      mpz_class nq = -q;
      h.add_row_multiple(k, r, nq);
      u.add_row_multiple(k, r, nq);
    }
    ++r;
  }
  res.rank = r;
  return res;
}

IntMatrix hnf_basis(const IntMatrix& m) {
  HnfResult r = hnf(m);
  return r.h.block(0, 0, r.rank, m.cols());
}

RatMatrix RationalModule::basis() const {
  RatMatrix b = to_rational(numerator);
  mpq_class inv(1, 1);
  inv /= denominator;
  return inv * b;
}

RationalModule module_basis(const RatMatrix& rows) {
  mpz_class d = common_denominator(rows);
  IntMatrix scaled(rows.rows(), rows.cols());
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t j = 0; j < rows.cols(); ++j) {
      mpq_class v = rows(i, j) * d;
      scaled(i, j) = v.get_num();
    }
  IntMatrix h = hnf_basis(scaled);
  // Reduce the denominator: divide out the content shared with d.
  mpz_class content = d;
  for (const auto& x : h.data()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
  if (content > 1) {
    for (std::size_t i = 0; i < h.rows(); ++i)
      for (std::size_t j = 0; j < h.cols(); ++j) mpz_divexact(h(i, j).get_mpz_t(), h(i, j).get_mpz_t(), content.get_mpz_t());
    d /= content;
  }
  return {h, d};
}

SnfResult snf_with_transforms(const IntMatrix& m) {
  SnfResult res{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  IntMatrix& a = res.d;
  IntMatrix& u = res.u;
  IntMatrix& v = res.v;
  const std::size_t nr = a.rows(), nc = a.cols();
  mpz_class q;
  for (std::size_t t = 0; t < std::min(nr, nc); ++t) {
    while (true) {
      // Pivot: smallest nonzero absolute value in the trailing block.
      std::size_t bi = nr, bj = nc;
      for (std::size_t i = t; i < nr; ++i)
        for (std::size_t j = t; j < nc; ++j)
          if (a(i, j) != 0 && (bi == nr || abs(a(i, j)) < abs(a(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == nr) return res;  // trailing block is zero
      a.swap_rows(t, bi);
      u.swap_rows(t, bi);
      a.swap_cols(t, bj);
      v.swap_cols(t, bj);
      bool dirty = false;
      for (std::size_t i = t + 1; i < nr; ++i) {
        if (a(i, t) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        mpz_class nq = -q;
        a.add_row_multiple(i, t, nq);
        u.add_row_multiple(i, t, nq);
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < nc; ++j) {
        if (a(t, j) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        mpz_class nq = -q;
        a.add_col_multiple(j, t, nq);
        v.add_col_multiple(j, t, nq);
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) continue;
      // Divisibility: fold a row with a non-multiple entry into the pivot row.
      std::size_t bad = nr;
      for (std::size_t i = t + 1; i < nr && bad == nr; ++i)
        for (std::size_t j = t + 1; j < nc; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == nr) break;
      mpz_class one = 1;
      a.add_row_multiple(t, bad, one);
      u.add_row_multiple(t, bad, one);
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
  }
  return res;
}

IntMatrix snf(const IntMatrix& m) { return snf_with_transforms(m).d; }

std::vector<mpz_class> elementary_divisors(const IntMatrix& m) {
  IntMatrix d = snf(m);
  std::vector<mpz_class> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

namespace {

// Gaussian elimination to row echelon form over Q; returns pivot columns and
// the sign of the row permutation.
std::vector<std::size_t> echelon(RatMatrix& a, int* sign) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  int sg = 1;
  mpq_class f, tmp;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = a.rows();
    for (std::size_t i = r; i < a.rows(); ++i)
      if (a(i, c) != 0) {
        p = i;
        break;
      }
    if (p == a.rows()) continue;
    if (p != r) {
      a.swap_rows(p, r);
      sg = -sg;
    }
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) {
        tmp = f * a(r, j);
        a(i, j) -= tmp;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  if (sign) *sign = sg;
  return pivots;
}

}  // namespace

mpq_class det(const RatMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::kInvalidArgument, "det of non-square matrix");
  if (m.rows() == 0) return 1;
  RatMatrix a = m;
  int sign = 1;
  auto piv = echelon(a, &sign);
  if (piv.size() < a.rows()) return 0;
  mpq_class d = sign;
  for (std::size_t i = 0; i < a.rows(); ++i) d *= a(i, i);
  return d;
}

mpz_class det(const IntMatrix& m) {
  // Bareiss fraction-free elimination.
  if (!m.square()) throw Error(ErrorCode::kInvalidArgument, "det of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

RatMatrix inverse(const RatMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::kInvalidArgument, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  mpq_class f, tmp;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = n;
    for (std::size_t i = c; i < n; ++i)
      if (a(i, c) != 0) {
        p = i;
        break;
      }
    if (p == n) throw Error(ErrorCode::kSingular, "matrix is singular");
    a.swap_rows(p, c);
    inv.swap_rows(p, c);
    f = 1 / a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= f;
      inv(c, j) *= f;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        tmp = f * a(c, j);
        a(i, j) -= tmp;
        tmp = f * inv(c, j);
        inv(i, j) -= tmp;
      }
    }
  }
  return inv;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return echelon(a, nullptr).size();
}

RatMatrix rational_kernel(const RatMatrix& m) {
  RatMatrix a = m;
  auto piv = echelon(a, nullptr);
  const std::size_t n = a.cols();
  // Back-substitute to reduced echelon form.
  mpq_class f, tmp;
  for (std::size_t r = piv.size(); r-- > 0;) {
    const std::size_t c = piv[r];
    f = 1 / a(r, c);
    for (std::size_t j = 0; j < n; ++j) a(r, j) *= f;
    for (std::size_t i = 0; i < r; ++i) {
      if (a(i, c) == 0) continue;
      f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        tmp = f * a(r, j);
        a(i, j) -= tmp;
      }
    }
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : piv) is_pivot[c] = true;
  RatMatrix ker(0, n);
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    RatVector x(n);
    x[free] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -a(r, free);
    ker.append_row(x);
  }
  return ker;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t p) {
  std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = mod_floor(a, p);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::pair{nt, t - q * nt};
    std::tie(r, nr) = std::pair{nr, r - q * nr};
  }
  if (r != 1) throw Error(ErrorCode::kDivisionByZero, "no inverse modulo p");
  return mod_floor(t, p);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::size_t> rref_mod_p(std::vector<std::vector<std::int64_t>>& rows, std::int64_t p) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t n = rows.front().size();
  std::size_t r = 0;
  for (auto& row : rows)
    for (auto& x : row) x = mod_floor(x, p);
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t piv = rows.size();
    for (std::size_t i = r; i < rows.size(); ++i)
      if (rows[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const std::int64_t inv = inverse_mod(rows[r][c], p);
    for (auto& x : rows[r]) x = (x * inv) % p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const std::int64_t f = rows[i][c];
      for (std::size_t j = 0; j < n; ++j) rows[i][j] = mod_floor(rows[i][j] - f * rows[r][j], p);
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

std::vector<std::vector<std::int64_t>> kernel_mod_p(const IntMatrix& m, std::int64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::kInvalidArgument, "kernel_mod_p needs a prime modulus");
  std::vector<std::vector<std::int64_t>> rows(m.rows(), std::vector<std::int64_t>(m.cols()));
  mpz_class r;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      mpz_fdiv_r_ui(r.get_mpz_t(), m(i, j).get_mpz_t(), static_cast<unsigned long>(p));
      rows[i][j] = r.get_si();
    }
  auto piv = rref_mod_p(rows, p);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<std::vector<std::int64_t>> ker;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::int64_t> x(n, 0);
    x[free] = 1;
    for (std::size_t r2 = 0; r2 < piv.size(); ++r2) x[piv[r2]] = mod_floor(-rows[r2][free], p);
    ker.push_back(std::move(x));
  }
  return ker;
}

IntMatrix integer_left_kernel(const IntMatrix& m) {
  HnfResult r = hnf(m);
  return r.u.block(r.rank, 0, m.rows() - r.rank, m.rows());
}

RatVector solve_left(const RatMatrix& m, const RatVector& b) {
  // x M = b  <=>  M^T x^T = b^T
  RatMatrix inv = inverse(m);
  return row_times<mpq_class>(b, inv);
}

}  // namespace latkit
