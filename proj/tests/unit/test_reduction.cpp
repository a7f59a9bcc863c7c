#include "doctest.h"
#include "helpers.hpp"
#include "latkit/enumeration.hpp"

using namespace latkit;
using namespace testutil;

TEST_CASE("lll fixed point and simple reductions") {
  auto r = lll(a2());
  CHECK(congruent(r.transform, a2(), r.final_gram));
  CHECK(r.final_gram(0, 0) == 2);
  CHECK(r.final_gram(1, 1) == 2);
  CHECK(abs(r.final_gram(0, 1)) == 1);
  // Z^2 in the basis {(1,0),(10,1)}
  RatMatrix g{{1, 10}, {10, 101}};
  auto s = lll(g);
  CHECK(s.final_gram == RatMatrix::identity(2));
  CHECK(congruent(s.transform, g, s.final_gram));
}

TEST_CASE("lll parameter validation") {
  for (auto [d, e] : {std::pair{mpq_class(1, 4), mpq_class(1, 2)}, {mpq_class(11, 10), mpq_class(1, 2)},
                      {mpq_class(99, 100), mpq_class(2, 5)}, {mpq_class(1, 2), mpq_class(3, 4)}}) {
    try {
      lll(a2(), d, e);
      FAIL("expected error");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::kInvalidArgument);
    }
  }
}

TEST_CASE("lll preserves determinant on disguised E8") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RatMatrix g = disguise(e8(), seed, 30);
    auto r = lll(g);
    CHECK(congruent(r.transform, g, r.final_gram));
    CHECK(det(r.final_gram) == 1);
    CHECK(abs(det(r.transform)) == 1);
  }
}

TEST_CASE("lll output satisfies the Lovasz and size conditions") {
  RatMatrix g = disguise(e8(), 7, 40);
  auto r = lll(g);
  const RatMatrix& a = r.final_gram;
  // exact Gram-Schmidt
  std::size_t n = a.rows();
  RatMatrix mu(n, n);
  RatVector bstar(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      mpq_class s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= mu(i, k) * mu(j, k) * bstar[k];
      mu(i, j) = s / bstar[j];
      CHECK(abs(mu(i, j)) <= mpq_class(501, 1000));
    }
    mpq_class s = a(i, i);
    for (std::size_t k = 0; k < i; ++k) s -= mu(i, k) * mu(i, k) * bstar[k];
    bstar[i] = s;
    if (i > 0) CHECK(bstar[i] >= (mpq_class(99, 100) - mu(i, i - 1) * mu(i, i - 1)) * bstar[i - 1]);
  }
}

TEST_CASE("seysen and pair reduce") {
  auto id = seysen(RatMatrix::identity(3));
  CHECK(id.final_gram == RatMatrix::identity(3));
  CHECK(pair_reduce(RatMatrix::identity(3)).final_gram == RatMatrix::identity(3));
  RatMatrix g{{2, 3}, {3, 5}};
  auto p = pair_reduce(g);
  CHECK(congruent(p.transform, g, p.final_gram));
  CHECK(p.final_gram(0, 0) <= 2);
  CHECK(p.final_gram(1, 1) <= 2);
  RatMatrix d4 = disguise(root_lattice(RootKind::D, 4).gram(), 3, 25);
  auto s = seysen(d4);
  CHECK(congruent(s.transform, d4, s.final_gram));
  auto q = pair_reduce(s.final_gram);
  CHECK(congruent(q.transform, s.final_gram, q.final_gram));
  mpq_class mind = q.final_gram(0, 0);
  for (std::size_t i = 1; i < 4; ++i) mind = std::min(mind, mpq_class(q.final_gram(i, i)));
  CHECK(mind == 2);
}

TEST_CASE("red loop") {
  RatMatrix g{{4, 0}, {0, 2}};
  RedLoopConfig cfg;
  cfg.threshold = 2;
  auto r = red_loop(g, cfg);
  CHECK(r.conclusive);
  CHECK(r.loops_used == 0);
  REQUIRE(r.witness);
  CHECK(r.witness->norm == 2);

  Lattice a = orthogonal_sum(root_lattice(RootKind::A, 2), root_lattice(RootKind::A, 2));
  RatMatrix dg = disguise(a.gram(), 11, 30);
  auto s = red_loop(dg, cfg);
  CHECK(s.conclusive);
  REQUIRE(s.witness);
  CHECK(s.witness->norm == 2);
  CHECK(congruent(s.transform, dg, s.final_gram));

  RedLoopConfig zero;
  zero.threshold = 0;
  zero.loops_per_phase = 5;
  auto t = red_loop(disguise(e8(), 5, 30), zero);
  CHECK_FALSE(t.conclusive);
  CHECK_FALSE(t.witness);
  CHECK(t.loops_used >= 1);
}

TEST_CASE("red loop is deterministic for a fixed seed") {
  RatMatrix g = disguise(e8(), 99, 40);
  RedLoopConfig cfg;
  cfg.threshold = 0;
  cfg.loops_per_phase = 3;
  cfg.phases = 3;
  cfg.seed = 1234;
  auto a = red_loop(g, cfg);
  auto b = red_loop(g, cfg);
  CHECK(a.final_gram == b.final_gram);
  CHECK(a.transform == b.transform);
  CHECK(congruent(a.transform, g, a.final_gram));
}

TEST_CASE("red loop witness bounded below by the minimum") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RatMatrix g = disguise(root_lattice(RootKind::D, 5).gram(), seed, 25);
    RedLoopConfig cfg;
    cfg.threshold = 4;
    auto r = red_loop(g, cfg);
    REQUIRE(r.conclusive);
    CHECK(r.witness->norm >= minimum(g).min);
    CHECK(r.witness->norm <= 4);
  }
}

TEST_CASE("short vectors and minimum") {
  auto m = minimum(a2());
  CHECK(m.min == 2);
  CHECK(m.pairs == 3);
  auto sv = short_vectors(a2(), 2);
  CHECK(sv.vectors.size() == 3);
  for (std::size_t i = 0; i < sv.vectors.size(); ++i) {
    RatVector q(sv.vectors[i].begin(), sv.vectors[i].end());
    CHECK(bilinear<mpq_class>(q, a2(), q) == sv.norms[i]);
    CHECK(sv.norms[i] <= 2);
  }
  auto t = theta_prefix(RatMatrix{{1}}, 4);
  CHECK(t == std::map<mpq_class, std::uint64_t>{{0, 1}, {1, 2}, {4, 2}});
  CHECK(theta_prefix(a2(), 2) == std::map<mpq_class, std::uint64_t>{{0, 1}, {2, 6}});
  // dual of A2 has minimum 2/3 with 3 pairs
  auto d = minimum(inverse(a2()));
  CHECK(d.min == mpq_class(2, 3));
  CHECK(d.pairs == 3);
}

TEST_CASE("short vector counts are stable under disguise") {
  RatMatrix g = root_lattice(RootKind::D, 5).gram();
  auto base = short_vectors(g, 6).counts_by_norm;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) CHECK(short_vectors(disguise(g, seed, 20), 6).counts_by_norm == base);
}

TEST_CASE("E8 theta coefficients") {
  auto t = theta_prefix(e8(), 6);
  CHECK(t[2] == 240);
  CHECK(t[4] == 2160);
  CHECK(t[6] == 6720);
}

TEST_CASE("enumeration cap") {
  EnumConfig cfg;
  cfg.dim_cap = 4;
  try {
    minimum(e8(), cfg);
    FAIL("expected cap error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCapExceeded);
  }
}

TEST_CASE("indefinite or asymmetric input is rejected") {
  RatMatrix hyp{{0, 1}, {1, 0}};
  RatMatrix asym{{2, 1}, {0, 2}};
  CHECK_THROWS_AS(minimum(hyp), Error);
  try {
    minimum(hyp);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotPositiveDefinite);
  }
  try {
    short_vectors(asym, 4);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotSymmetric);
  }
  try {
    red_loop(hyp);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotPositiveDefinite);
  }
  CHECK_THROWS_AS(lll(RatMatrix{{1, 0}, {0, -1}}), Error);
}
