#include "doctest.h"
#include "helpers.hpp"

using namespace latkit;
using namespace testutil;

TEST_CASE("hnf of identity is identity") {
  auto r = hnf(IntMatrix::identity(3));
  CHECK(r.h == IntMatrix::identity(3));
  CHECK(r.u == IntMatrix::identity(3));
}

TEST_CASE("hnf of a 2x2 example") {
  IntMatrix m{{2, 4}, {1, 3}};
  auto r = hnf(m);
  // Row reduction by hand: the lattice has determinant 2 and contains (1,3),
  // so the HNF is [[1,1],[0,2]].
  CHECK(r.h == IntMatrix{{1, 1}, {0, 2}});
  CHECK(r.u * m == r.h);
  CHECK(abs(det(r.u)) == 1);
  CHECK(to_rational(r.u) * to_rational(m) == to_rational(r.h));
  CHECK(inverse(to_rational(r.u)) * to_rational(r.h) == to_rational(m));
}

TEST_CASE("hnf of zero and of rank deficient input") {
  auto r = hnf(IntMatrix(2, 3));
  CHECK(r.h.is_zero());
  CHECK(r.rank == 0);
  IntMatrix m{{1, 2, 3}, {2, 4, 6}, {0, 0, 1}};
  auto s = hnf(m);
  CHECK(s.rank == 2);
  CHECK(s.u * m == s.h);
}

TEST_CASE("snf examples") {
  CHECK(snf(IntMatrix::identity(3)) == IntMatrix::identity(3));
  CHECK(snf(IntMatrix{{2, 0}, {0, 3}}) == IntMatrix{{1, 0}, {0, 6}});
  CHECK(snf(IntMatrix{{2, -1}, {-1, 2}}) == IntMatrix{{1, 0}, {0, 3}});
  IntMatrix m{{4, 6, 2}, {8, 2, 0}, {1, 5, 7}};
  auto r = snf_with_transforms(m);
  CHECK(r.u * m * r.v == r.d);
  CHECK(abs(det(r.u)) == 1);
  CHECK(abs(det(r.v)) == 1);
}

TEST_CASE("determinants") {
  CHECK(det(RatMatrix::identity(5)) == 1);
  CHECK(det(e8()) == 1);
  CHECK(det(to_integer(e8())) == 1);
  CHECK(det(RatMatrix{{mpq_class(1, 2), 1}, {1, 3}}) == mpq_class(1, 2));
}

TEST_CASE("inverse and singular input") {
  RatMatrix g = a2();
  RatMatrix inv = inverse(g);
  CHECK(inv * g == RatMatrix::identity(2));
  CHECK(inv == RatMatrix{{mpq_class(2, 3), mpq_class(1, 3)}, {mpq_class(1, 3), mpq_class(2, 3)}});
  try {
    inverse(RatMatrix{{1, 2}, {2, 4}});
    FAIL("expected singular");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSingular);
  }
}

TEST_CASE("kernels") {
  auto k = kernel_mod_p(IntMatrix{{1, 1}, {1, 1}}, 2);
  REQUIRE(k.size() == 1);
  CHECK(k[0] == std::vector<std::int64_t>{1, 1});
  RatMatrix rk = rational_kernel(RatMatrix{{1, 2, 3}, {2, 4, 6}});
  CHECK(rk.rows() == 2);
  RatMatrix m{{1, 2, 3}, {2, 4, 6}};
  for (std::size_t i = 0; i < rk.rows(); ++i) CHECK((m * rk.block(i, 0, 1, 3).transposed()).is_zero());
  IntMatrix lk = integer_left_kernel(IntMatrix{{1, 1}, {1, 1}, {0, 2}});
  CHECK(lk.rows() == 1);
  CHECK((lk * IntMatrix{{1, 1}, {1, 1}, {0, 2}}).is_zero());
}

TEST_CASE("module basis canonicalizes rational spans") {
  RatMatrix a{{mpq_class(1, 2), 0}, {0, 1}};
  RatMatrix b{{mpq_class(1, 2), 1}, {1, 0}, {0, 1}};
  CHECK(module_basis(a) == module_basis(b));
  CHECK(module_basis(a).denominator == 2);
}

TEST_CASE("hnf and snf are invariant under unimodular left multiplication") {
  IntMatrix m{{3, 1, 4, 1}, {5, 9, 2, 6}, {5, 3, 5, 8}, {9, 7, 9, 3}};
  IntMatrix h = hnf(m).h;
  IntMatrix s = snf(m);
  mpz_class prod = 1;
  for (std::size_t i = 0; i < 4; ++i) prod *= s(i, i);
  CHECK(abs(det(m)) == prod);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    IntMatrix u = random_unimodular(4, 10, seed);
    CHECK(hnf(u * m).h == h);
    CHECK(snf(u * m) == s);
  }
}
