#include <doctest.h>

#include "ideal_samples.hpp"
#include "latkit/cyclotomic.hpp"
#include "latkit/enumeration.hpp"
#include "latkit/isometry.hpp"

using namespace latkit;

namespace {

std::vector<mpz_class> zs(std::initializer_list<long> v) {
  std::vector<mpz_class> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("cyclotomic polynomials and phi") {
  CHECK(cyclotomic_poly(1) == zs({-1, 1}));
  CHECK(cyclotomic_poly(2) == zs({1, 1}));
  CHECK(cyclotomic_poly(12) == zs({1, 0, -1, 0, 1}));
  CHECK(cyclotomic_poly(15) == zs({1, -1, 0, 1, -1, 1, 0, -1, 1}));
  CHECK(euler_phi(91) == 72);
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(15) == 8);
  for (long n = 1; n <= 40; ++n) CHECK(static_cast<long>(cyclotomic_poly(n).size()) - 1 == euler_phi(n));
}

TEST_CASE("element arithmetic") {
  for (long m : {3, 5, 8, 12, 15}) CHECK(CycloElement::one(m).trace() == euler_phi(m));
  CHECK(CycloElement::zeta(3).trace() == -1);
  CHECK(CycloElement::zeta(15, 15) == CycloElement::one(15));
  SeededRng rng(5);
  for (long m : {5, 7, 9, 12, 15, 20}) {
    auto x = samples::random_nonzero(m, rng), y = samples::random_nonzero(m, rng);
    CHECK(x.conj().conj() == x);
    CHECK((x * y).conj() == x.conj() * y.conj());
    CHECK(x * x.inverse() == CycloElement::one(m));
    CHECK((x * y).norm() == x.norm() * y.norm());
    CHECK((x + y).trace() == x.trace() + y.trace());
    CHECK(x.mult_matrix().rows() == static_cast<std::size_t>(euler_phi(m)));
  }
  CHECK_THROWS_AS(CycloElement::zero(5).inverse(), Error);
  CHECK_THROWS_AS(CycloElement::one(6).galois(2), Error);
}

TEST_CASE("trace agrees with numeric embeddings") {
  SeededRng rng(9);
  for (long m = 3; m <= 20; ++m) {
    auto x = samples::random_element(m, rng);
    Interval sum = Interval::exact(0, 128);
    for (long k = 1; k <= m; ++k)
      if (std::gcd(k, m) == 1) sum = sum + embedding_real_part(x, k, 128);
    CHECK(sum.compare(x.trace()) == 0);
    const mpq_class eps(1, mpz_class("100000000000000000000"));
    CHECK(sum.compare(x.trace() - eps) == 1);
    CHECK(sum.compare(x.trace() + eps) == -1);
  }
}

TEST_CASE("different") {
  CHECK(different(3) == FracIdeal::principal(CycloElement(3, {1, 2})));
  CHECK(different(3).norm() == 3);
  CHECK(different(4).norm() == 4);
  CHECK_THROWS_AS(different(6), Error);
  for (long m : {3, 4, 5, 7, 8, 9, 12}) CHECK(FracIdeal::unit(m).trace_dual() == different(m).inverse());
}

TEST_CASE("ideal operations") {
  SeededRng rng(11);
  for (long m : {5, 8, 12}) {
    auto s = samples::random_pair(m, rng);
    CHECK(s.j * s.j.inverse() == FracIdeal::unit(m));
    CHECK((s.j * s.j.conj()).norm() == s.j.norm() * s.j.norm());
    CHECK(FracIdeal::parse(s.j.to_text()) == s.j);
    auto e = s.j.basis_elements();
    CHECK(s.j.contains(e[0] * CycloElement::zeta(m)));
  }
  CHECK_THROWS_AS(FracIdeal::parse("5\n1 0 0 0\n0 1 0 0\n0 0 1 0\nden 1\n"), Error);
  CHECK_THROWS_AS(FracIdeal::parse("3\n2 0\n0 1\nden 1\n"), Error);  // not zeta-closed
}

TEST_CASE("trace form examples") {
  auto a2 = trace_form_gram(FracIdeal::unit(3), CycloElement::one(3));
  CHECK(a2.gram == RatMatrix{{2, -1}, {-1, 2}});
  for (long p : {5, 7}) {
    auto l = trace_form_gram(FracIdeal::unit(p), CycloElement::one(p));
    RatMatrix want(p - 1, p - 1);
    for (long i = 0; i < p - 1; ++i)
      for (long j = 0; j < p - 1; ++j) want(i, j) = (i == j ? p : 0) - 1;
    CHECK(l.gram == want);
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), p, p - 2);
    CHECK(det(l.gram) == mpq_class(d));
  }
  CHECK_THROWS_AS(trace_form_gram(FracIdeal::unit(5), CycloElement::zeta(5)), Error);
  CHECK_THROWS_AS(trace_form_gram(FracIdeal::unit(5), CycloElement::zeta(5) + CycloElement::zeta(5, 4)), Error);
  CHECK(ideal_dual(a2) == different(3).inverse());
  CHECK_FALSE(is_unimodular_pair(FracIdeal::unit(3), CycloElement::one(3)));
}

TEST_CASE("dual and transforms on random pairs") {
  SeededRng rng(13);
  for (long m : {5, 8, 12, 9}) {
    auto s = samples::random_pair(m, rng);
    auto l = trace_form_gram(s.j, s.alpha);
    CHECK_NOTHROW(ideal_dual(l));
    CHECK(is_unimodular_pair(s.j, s.alpha) == (det(l.gram) == 1));
    auto g = galois_transform(l, m - 1);
    auto u = unit_scale(l, samples::random_unit(m, rng));
    auto a = ideal_scale(l, samples::random_nonzero(m, rng));
    for (const auto* t : {&g, &u, &a}) {
      CHECK(det(t->gram) == det(l.gram));
      CHECK(minimum(t->gram).min == minimum(l.gram).min);
      CHECK(theta_prefix(t->gram, 8) == theta_prefix(l.gram, 8));
    }
  }
  auto l = trace_form_gram(FracIdeal::unit(5), CycloElement::one(5));
  CHECK(galois_transform(galois_transform(l, 2), 2).gram == galois_transform(l, 4).gram);
  CHECK(galois_transform(l, 1).gram == l.gram);
  CHECK(unit_scale(l, CycloElement::one(5)).gram == l.gram);
  CHECK(ideal_scale(l, CycloElement::one(5)).gram == l.gram);
  CHECK_THROWS_AS(unit_scale(l, CycloElement(5, {2})), Error);
  CHECK_THROWS_AS(ideal_scale(l, CycloElement::zero(5)), Error);
}

TEST_CASE("signs and total positivity") {
  CHECK(is_totally_positive(CycloElement::one(5)));
  CHECK_FALSE(is_totally_positive(-CycloElement::one(5)));
  CycloElement t = CycloElement::zeta(5) + CycloElement::zeta(5, 4);
  CHECK_FALSE(is_totally_positive(t));
  CHECK(embedding_sign(t, 1) == 1);
  CHECK(embedding_sign(t, 2) == -1);
  CHECK(sign_matrix({-CycloElement::one(7)}) == std::vector<std::vector<int>>{{1, 1, 1}});
  CHECK_THROWS_AS(is_totally_positive(CycloElement::zeta(5)), Error);
  CHECK(real_embeddings(15) == std::vector<long>{1, 2, 4, 7});
}

TEST_CASE("unimodular witness at m=15 is E8") {
  CHECK_FALSE(find_unimodular_alpha(FracIdeal::unit(3), cyclotomic_units(3)).has_value());
  auto units = cyclotomic_units(15);
  CHECK(units.size() == 4);
  auto alpha = find_unimodular_alpha(FracIdeal::unit(15), units);
  REQUIRE(alpha.has_value());
  CHECK(is_unimodular_pair(FracIdeal::unit(15), *alpha));
  auto l = trace_form_gram(FracIdeal::unit(15), *alpha);
  CHECK(det(l.gram) == 1);
  CHECK(is_even(l.lattice()));
  CHECK(minimum(l.gram).min == 2);
  CHECK(ideal_dual(l) == FracIdeal::unit(15));
  CHECK(is_isometric(l.gram, root_lattice(RootKind::E, 8).gram()).has_value());
  auto s = ideal_scale(l, CycloElement::one(15) + CycloElement::zeta(15));
  CHECK(is_isometric(s.gram, l.gram).has_value());
}
