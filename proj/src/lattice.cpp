#include "latkit/lattice.hpp"

#include <array>

#include "latkit/exact_linear.hpp"

namespace latkit {

bool is_positive_definite(const RatMatrix& gram) {
  if (!gram.square()) return false;
  const std::size_t n = gram.rows();
  // Elimination without pivoting: every leading minor is the product of the
  // pivots so far, so positivity of each pivot is the minor criterion.
  RatMatrix a = gram;
  mpq_class f, tmp;
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) {
        tmp = f * a(k, j);
        a(i, j) -= tmp;
      }
    }
  }
  return true;
}

namespace {

void validate_gram(const RatMatrix& g) {
  if (!g.is_symmetric()) throw Error(ErrorCode::kNotSymmetric, "Gram matrix is not symmetric");
  if (!is_positive_definite(g)) throw Error(ErrorCode::kNotPositiveDefinite, "Gram matrix is not positive definite");
}

}  // namespace

Lattice::Lattice(RatMatrix gram, std::string label) : gram_(std::move(gram)), label_(std::move(label)) {
  validate_gram(gram_);
}

Lattice::Lattice(const RatMatrix& basis, const RatMatrix& ambient_gram, std::string label)
    : gram_(basis * ambient_gram * basis.transposed()),
      basis_(basis),
      ambient_gram_(ambient_gram),
      label_(std::move(label)) {
  validate_gram(gram_);
}

Lattice Lattice::with_label(std::string label) const {
  Lattice out = *this;
  out.label_ = std::move(label);
  return out;
}

Lattice dual(const Lattice& l) {
  RatMatrix inv = inverse(l.gram());
  std::string label = l.label().empty() ? std::string{} : l.label() + "#";
  if (l.basis()) return Lattice(inv * *l.basis(), *l.ambient_gram(), label);
  return Lattice(inv, label);
}

mpq_class determinant(const Lattice& l) { return det(l.gram()); }

bool is_integral(const Lattice& l) { return latkit::is_integral(l.gram()); }

bool is_even(const Lattice& l) {
  if (!is_integral(l)) throw Error(ErrorCode::kNotIntegral, "parity asked of a non-integral lattice");
  for (std::size_t i = 0; i < l.dim(); ++i)
    if (!mpz_even_p(l.gram()(i, i).get_num_mpz_t())) return false;
  return true;
}

bool is_unimodular(const Lattice& l) { return is_integral(l) && determinant(l) == 1; }

bool is_p_elementary(const Lattice& l, long p) {
  if (!is_integral(l)) throw Error(ErrorCode::kNotIntegral, "p-elementary asked of a non-integral lattice");
  // Coordinates of the dual basis are the rows of gram^-1; p L^# in L iff p gram^-1 is integral.
  RatMatrix inv = inverse(l.gram());
  return latkit::is_integral(mpq_class(p) * inv);
}

Lattice orthogonal_sum(const Lattice& a, const Lattice& b) {
  std::string label = a.label().empty() || b.label().empty() ? std::string{} : a.label() + "+" + b.label();
  if (a.dim() == 0) return b;
  if (b.dim() == 0) return a;
  return Lattice(block_diagonal(a.gram(), b.gram()), label);
}

Lattice rescale(const Lattice& l, const mpq_class& factor) {
  if (factor <= 0) throw Error(ErrorCode::kInvalidArgument, "rescale factor must be positive");
  return Lattice(factor * l.gram(), l.label());
}

namespace {

RatMatrix cartan_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  RatMatrix g(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = 2;
  for (auto [a, b] : edges) {
    g(a, b) = -1;
    g(b, a) = -1;
  }
  return g;
}

}  // namespace

Lattice root_lattice(RootKind kind, int n) {
  std::vector<std::pair<int, int>> edges;
  switch (kind) {
    case RootKind::A:
      if (n < 1) throw Error(ErrorCode::kInvalidArgument, "A_n needs n >= 1");
      for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      return Lattice(cartan_from_edges(n, edges), "A" + std::to_string(n));
    case RootKind::D:
      if (n < 4) throw Error(ErrorCode::kInvalidArgument, "D_n needs n >= 4");
      for (int i = 0; i + 2 < n; ++i) edges.emplace_back(i, i + 1);
      edges.emplace_back(n - 3, n - 1);
      return Lattice(cartan_from_edges(n, edges), "D" + std::to_string(n));
    case RootKind::E:
      if (n < 6 || n > 8) throw Error(ErrorCode::kInvalidArgument, "E_n needs n in {6,7,8}");
      // Chain 0-2-3-4-...-(n-1) with node 1 attached to node 3.
      edges = {{0, 2}, {1, 3}, {2, 3}};
      for (int i = 3; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      return Lattice(cartan_from_edges(n, edges), "E" + std::to_string(n));
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown root system");
}

Lattice integer_lattice(int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "Z^n needs n >= 1");
  return Lattice(RatMatrix::identity(n), "Z" + std::to_string(n));
}

IntMatrix golay_generators() {
  // Binary quadratic-residue code of length 23 (spanned by the cyclic shifts
  // of the residue indicator), extended by an overall parity bit.
  std::array<bool, 23> residue{};
  for (int i = 1; i < 23; ++i) residue[(i * i) % 23] = true;
  std::vector<std::vector<std::int64_t>> rows;
  for (int shift = 0; shift < 23; ++shift) {
    std::vector<std::int64_t> r(23, 0);
    for (int i = 0; i < 23; ++i)
      if (residue[i]) r[(i + shift) % 23] = 1;
    rows.push_back(std::move(r));
  }
  rref_mod_p(rows, 2);
  IntMatrix gen(rows.size(), 24);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    int parity = 0;
    for (int j = 0; j < 23; ++j) {
      gen(i, j) = rows[i][j];
      parity ^= static_cast<int>(rows[i][j]);
    }
    gen(i, 23) = parity;
  }
  return gen;
}

Lattice leech() {
  // Vectors of Z^24 with the form x.y/8, generated by 2c (c in the Golay code),
  // 4(e_0 +- e_i) and (-3, 1, ..., 1).
  IntMatrix gens(0, 24);
  IntMatrix golay = golay_generators();
  for (std::size_t i = 0; i < golay.rows(); ++i) {
    IntVector r(24);
    for (int j = 0; j < 24; ++j) r[j] = 2 * golay(i, j);
    gens.append_row(r);
  }
  for (int i = 1; i < 24; ++i) {
    IntVector plus(24), minus(24);
    plus[0] = 4;
    plus[i] = 4;
    minus[0] = 4;
    minus[i] = -4;
    gens.append_row(plus);
    gens.append_row(minus);
  }
  IntVector special(24, mpz_class(1));
  special[0] = -3;
  gens.append_row(special);
  IntMatrix basis = hnf_basis(gens);
  if (basis.rows() != 24) throw Error(ErrorCode::kInvalidArgument, "Leech generators do not have full rank");
  RatMatrix ambient = mpq_class(1, 8) * RatMatrix::identity(24);
  Lattice l(to_rational(basis), ambient, "Leech");
  return Lattice(l.gram(), "Leech");
}

Lattice sublattice(const Lattice& l, const RatMatrix& rows) {
  if (!latkit::is_integral(rows)) throw Error(ErrorCode::kNotContained, "sublattice rows must be integral coordinates");
  return span_lattice(l, rows);
}

Lattice span_lattice(const Lattice& l, const RatMatrix& rows) {
  if (rows.cols() != l.dim()) throw Error(ErrorCode::kInvalidArgument, "coordinate length mismatch");
  RatMatrix b = module_basis(rows).basis();
  if (l.basis()) return Lattice(b * *l.basis(), *l.ambient_gram(), l.label());
  return Lattice(b, l.gram(), l.label());
}

std::optional<mpz_class> index(const Lattice& l, const RatMatrix& rows) {
  if (rows.cols() != l.dim()) throw Error(ErrorCode::kInvalidArgument, "coordinate length mismatch");
  if (!latkit::is_integral(rows)) throw Error(ErrorCode::kNotContained, "rows are not integral coordinates");
  std::vector<mpz_class> d = elementary_divisors(to_integer(rows));
  if (d.size() < l.dim()) return std::nullopt;
  mpz_class idx = 1;
  for (std::size_t i = 0; i < l.dim(); ++i) {
    if (d[i] == 0) return std::nullopt;
    idx *= d[i];
  }
  return idx;
}

}  // namespace latkit
