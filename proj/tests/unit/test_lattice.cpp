#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "latkit/enumeration.hpp"
#include "latkit/gram_io.hpp"

using namespace latkit;
using namespace testutil;

TEST_CASE("construction rejects bad Grams") {
  try {
    Lattice(RatMatrix{{1, 2}, {3, 1}});
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotSymmetric);
  }
  try {
    Lattice(RatMatrix{{1, 2}, {2, 1}});
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotPositiveDefinite);
  }
}

TEST_CASE("dual lattices") {
  Lattice a2l = root_lattice(RootKind::A, 2);
  CHECK(dual(a2l).gram() == RatMatrix{{mpq_class(2, 3), mpq_class(1, 3)}, {mpq_class(1, 3), mpq_class(2, 3)}});
  CHECK(dual(dual(a2l)).gram() == a2l.gram());
  Lattice e8l = root_lattice(RootKind::E, 8);
  Lattice e8d = dual(e8l);
  CHECK(determinant(e8d) == 1);
  CHECK(is_integral(e8d));
  CHECK(is_even(e8d));
  CHECK(dual(integer_lattice(4)).gram() == RatMatrix::identity(4));
  for (int n = 1; n <= 7; ++n) {
    Lattice l = root_lattice(RootKind::A, n);
    CHECK(determinant(dual(l)) * determinant(l) == 1);
  }
}

TEST_CASE("predicates") {
  Lattice a2l = root_lattice(RootKind::A, 2);
  CHECK(is_integral(a2l));
  CHECK(is_even(a2l));
  CHECK(determinant(a2l) == 3);
  CHECK(is_p_elementary(a2l, 3));
  CHECK_FALSE(is_p_elementary(a2l, 2));
  Lattice e8l = root_lattice(RootKind::E, 8);
  CHECK(is_even(e8l));
  CHECK(is_unimodular(e8l));
  Lattice z1 = integer_lattice(1);
  CHECK(is_integral(z1));
  CHECK_FALSE(is_even(z1));
  try {
    is_even(dual(a2l));
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotIntegral);
  }
  // unimodular iff integral and det 1
  CHECK_FALSE(is_unimodular(rescale(integer_lattice(2), mpq_class(1, 2))));
}

TEST_CASE("orthogonal sums") {
  Lattice a1 = root_lattice(RootKind::A, 1);
  CHECK(orthogonal_sum(a1, a1).gram() == RatMatrix{{2, 0}, {0, 2}});
  Lattice e8l = root_lattice(RootKind::E, 8);
  Lattice e16 = orthogonal_sum(e8l, e8l);
  CHECK(e16.dim() == 16);
  CHECK(determinant(e16) == 1);
  CHECK(is_even(e16));
  Lattice a3 = root_lattice(RootKind::A, 3);
  Lattice s = orthogonal_sum(a3, root_lattice(RootKind::A, 2));
  CHECK(minimum(s.gram()).min == 2);
  CHECK(determinant(s) == 12);
}

TEST_CASE("root lattice structure constants") {
  CHECK(root_lattice(RootKind::A, 2).gram() == RatMatrix{{2, -1}, {-1, 2}});
  for (int n = 1; n <= 8; ++n) {
    Lattice l = root_lattice(RootKind::A, n);
    CHECK(determinant(l) == n + 1);
    CHECK(is_even(l));
    CHECK(minimum(l.gram()).min == 2);
  }
  for (int n = 4; n <= 9; ++n) {
    Lattice l = root_lattice(RootKind::D, n);
    CHECK(determinant(l) == 4);
    CHECK(is_even(l));
    CHECK(minimum(l.gram()).min == 2);
  }
  CHECK(determinant(root_lattice(RootKind::E, 6)) == 3);
  CHECK(determinant(root_lattice(RootKind::E, 7)) == 2);
  CHECK(determinant(root_lattice(RootKind::E, 8)) == 1);
  auto m = minimum(root_lattice(RootKind::E, 8).gram());
  CHECK(m.min == 2);
  CHECK(m.pairs == 120);
  CHECK(minimum(root_lattice(RootKind::E, 6).gram()).pairs == 36);
  CHECK(minimum(root_lattice(RootKind::E, 7).gram()).pairs == 63);
  CHECK(minimum(root_lattice(RootKind::D, 4).gram()).pairs == 12);
  for (auto [k, n] : {std::pair{RootKind::D, 3}, {RootKind::E, 5}, {RootKind::E, 9}, {RootKind::A, 0}}) {
    try {
      root_lattice(k, n);
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInvalidArgument);
    }
  }
}

TEST_CASE("golay code") {
  IntMatrix g = golay_generators();
  CHECK(g.rows() == 12);
  // every generator weight divisible by 4, code self-orthogonal
  for (std::size_t i = 0; i < 12; ++i) {
    int w = 0;
    for (std::size_t j = 0; j < 24; ++j) w += g(i, j).get_si();
    CHECK(w % 4 == 0);
    for (std::size_t k = 0; k < 12; ++k) {
      int ip = 0;
      for (std::size_t j = 0; j < 24; ++j) ip += g(i, j).get_si() * g(k, j).get_si();
      CHECK(ip % 2 == 0);
    }
  }
}

TEST_CASE("leech lattice is even unimodular") {
  Lattice l = leech();
  CHECK(l.dim() == 24);
  CHECK(determinant(l) == 1);
  CHECK(is_even(l));
}

TEST_CASE("sublattices and indices") {
  Lattice z2 = integer_lattice(2);
  CHECK(*index(z2, RatMatrix{{1, 1}, {1, -1}}) == 2);
  Lattice e8l = root_lattice(RootKind::E, 8);
  CHECK(*index(e8l, mpq_class(2) * RatMatrix::identity(8)) == 256);
  CHECK(sublattice(z2, RatMatrix::identity(2)).gram() == z2.gram());
  CHECK_FALSE(index(z2, RatMatrix{{1, 1}, {2, 2}}).has_value());
  try {
    index(z2, RatMatrix{{mpq_class(1, 2), 0}, {0, 1}});
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotContained);
  }
}

TEST_CASE("A_{p-1} cycle automorphism has minimal polynomial Phi_p") {
  for (int p : {3, 5, 7}) {
    // A_{p-1} = {x in Z^p : sum x = 0} with basis e_i - e_{i+1}; the cyclic
    // shift e_i -> e_{i+1} acts on it.
    const int n = p - 1;
    RatMatrix basis(n, p);
    for (int i = 0; i < n; ++i) {
      basis(i, i) = 1;
      basis(i, i + 1) = -1;
    }
    RatMatrix shift(p, p);
    for (int i = 0; i < p; ++i) shift(i, (i + 1) % p) = 1;
    // sigma in lattice coordinates: basis * shift = sigma * basis
    RatMatrix bs = basis * shift;
    RatMatrix sigma(n, n);
    for (int i = 0; i < n; ++i) {
      RatVector row(bs.row(i).begin(), bs.row(i).end());
      // solve x * basis = row using the first n columns (basis restricted is triangular invertible)
      RatMatrix sq = basis.block(0, 0, n, n);
      RatVector head(row.begin(), row.begin() + n);
      RatVector x = solve_left(sq, head);
      for (int j = 0; j < n; ++j) sigma(i, j) = x[j];
    }
    RatMatrix g = root_lattice(RootKind::A, n).gram();
    CHECK(sigma * g * sigma.transposed() == g);
    // Phi_p(sigma) = 0 and no lower degree polynomial kills sigma because
    // I, sigma, ..., sigma^{n-1} are linearly independent.
    RatMatrix acc(n, n), pw = RatMatrix::identity(n);
    RatMatrix powers(0, n * n);
    for (int k = 0; k < p - 1; ++k) {
      acc = acc + pw;
      powers.append_row(pw.data());
      pw = pw * sigma;
    }
    acc = acc + pw;
    CHECK(acc.is_zero());
    CHECK(rank(powers) == static_cast<std::size_t>(n));
  }
}

TEST_CASE("gram text round trip") {
  RatMatrix g{{2, mpq_class(-1, 3)}, {mpq_class(-1, 3), mpq_class(7, 5)}};
  std::string text = "# comment line\n" + format_gram(g);
  std::istringstream in(text);
  GramText parsed = read_gram_text(in);
  CHECK(parsed.matrix == g);
  REQUIRE(parsed.comments.size() == 1);
  std::ostringstream out;
  write_gram_text(out, parsed);
  CHECK(out.str() == text);
  try {
    parse_gram("2\n1 0\n0\n");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
  }
}
