#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "latkit/enumeration.hpp"
#include "latkit/glue.hpp"
#include "latkit/isometry.hpp"

using namespace latkit;

namespace {

Lattice e8() { return root_lattice(RootKind::E, 8); }

std::vector<mpq_class> sorted_q(const DiscGroup& d) {
  std::vector<mpq_class> out;
  for (long a = 0; a < d.p; ++a)
    for (long b = 0; b < (d.rank > 1 ? d.p : 1); ++b) {
      FpVector c(d.rank, 0);
      if (d.rank > 0) c[0] = a;
      if (d.rank > 1) c[1] = b;
      if (a == 0 && b == 0) continue;
      out.push_back(d.q(c));
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("discriminant groups") {
  auto d8 = disc_group(root_lattice(RootKind::D, 8), 2);
  CHECK(d8.rank == 2);
  CHECK(sorted_q(d8) == std::vector<mpq_class>{0, 0, 1});
  CHECK(disc_group(e8(), 2).rank == 0);
  auto a2 = disc_group(root_lattice(RootKind::A, 2), 3);
  CHECK(a2.rank == 1);
  CHECK(sorted_q(a2) == std::vector<mpq_class>{mpq_class(2, 3), mpq_class(2, 3)});
  CHECK(disc_group(root_lattice(RootKind::A, 2), 2).rank == 0);
  CHECK_THROWS_AS(disc_group(root_lattice(RootKind::A, 3), 2), Error);  // Z/4
  for (std::size_t i = 0; i < d8.rank; ++i)
    for (std::size_t j = 0; j < d8.rank; ++j) {
      FpVector x(2, 0), y(2, 0), s(2, 0);
      x[i] = 1;
      y[j] = 1;
      s[i] += 1;
      s[j] += 1;
      for (auto& c : s) c %= 2;
      if (i == j) continue;
      mpq_class lhs = d8.b(x, y);
      mpq_class rhs = (d8.q(s) - d8.q(x) - d8.q(y)) / 2;
      rhs -= mpq_class(static_cast<long>(std::floor(rhs.get_d())));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("isotropic submodules and overlattices") {
  auto d8 = root_lattice(RootKind::D, 8);
  auto codes = isotropic_submodules(disc_group(d8, 2), 1);
  CHECK(codes.size() == 2);
  for (const auto& c : codes) {
    Lattice o = overlattice(d8, c);
    CHECK(is_unimodular(o));
    CHECK(is_even(o));
    CHECK(is_isometric(o.gram(), e8().gram()).has_value());
  }
  CHECK(isotropic_submodules(disc_group(d8, 2), 0).size() == 1);
  CHECK(overlattice(d8, isotropic_submodules(disc_group(d8, 2), 0)[0]).gram() == d8.gram());
  CHECK(isotropic_submodules(disc_group(e8(), 2), 0).size() == 1);

  auto a2a2 = orthogonal_sum(root_lattice(RootKind::A, 2), root_lattice(RootKind::A, 2));
  auto dg = disc_group(a2a2, 3);
  std::size_t brute = 0;
  for (FpVector c : {FpVector{1, 0}, FpVector{0, 1}, FpVector{1, 1}, FpVector{1, 2}})
    if (dg.q(c) == 0) ++brute;
  CHECK(isotropic_submodules(dg, 1).size() == brute);

  auto e6a2 = orthogonal_sum(root_lattice(RootKind::E, 6), root_lattice(RootKind::A, 2));
  auto codes3 = isotropic_submodules(disc_group(e6a2, 3), 1);
  REQUIRE(codes3.size() == 2);
  Lattice o = overlattice(e6a2, codes3[0]);
  CHECK(det(o.gram()) == 1);
  CHECK(is_isometric(o.gram(), e8().gram()).has_value());

  // non-isotropic code
  GlueCode bad{disc_group(d8, 2), {}};
  for (FpVector c : {FpVector{1, 0}, FpVector{0, 1}, FpVector{1, 1}})
    if (bad.disc.q(c) != 0) bad.basis = {c};
  CHECK_THROWS_AS(overlattice(d8, bad), Error);
}

TEST_CASE("invariance filter and orbit deduplication") {
  auto d8 = root_lattice(RootKind::D, 8);
  auto dg = disc_group(d8, 2);
  // the swap of the two generators
  FpMatrix swap{{0, 1}, {1, 0}};
  SubmoduleSearch s;
  s.stabilizing = {swap};
  std::size_t fixed = isotropic_submodules(dg, 1, s).size();
  std::size_t brute = 0;
  for (const auto& c : isotropic_submodules(dg, 1)) {
    FpMatrix img{{c.basis[0][1], c.basis[0][0]}};
    if (fp_rref(img, 2) == c.basis) ++brute;
  }
  CHECK(fixed == brute);
  SubmoduleSearch o;
  o.centralizer = {swap};
  CHECK(isotropic_submodules(dg, 1, o).size() <= 2);
  SubmoduleSearch tiny;
  tiny.budget = 1;
  CHECK_THROWS_AS(isotropic_submodules(dg, 1, tiny), Error);
}

TEST_CASE("neighbours of E8") {
  Lattice l = e8();
  auto sv = short_vectors(l.gram(), 4);
  int done = 0;
  for (std::size_t i = 0; i < sv.vectors.size() && done < 5; ++i) {
    if (sv.norms[i] != 4) continue;
    IntVector x(sv.vectors[i].begin(), sv.vectors[i].end());
    IntVector v = lift_to_admissible(l, 2, x);
    Lattice n = neighbor(l, 2, v);
    CHECK(is_unimodular(n));
    CHECK(is_even(n));
    CHECK(is_isometric(n.gram(), l.gram()).has_value());
    // L and N share L_v with index 2 in both
    IntMatrix k = neighbor_kernel(l, 2, v);
    RatMatrix nb = *n.basis();
    CHECK(index(l, to_rational(k)) == mpz_class(2));
    RatMatrix kin = to_rational(k) * inverse(nb);
    CHECK(index(Lattice(n.gram()), kin) == mpz_class(2));
    // L is a 2-neighbour of N: w = 2y + j v for some basis vector y
    bool back = false;
    for (std::size_t b = 0; b < 8 && !back; ++b)
      for (int j = 0; j < 2 && !back; ++j) {
        RatVector w(8, 0);
        w[b] = 2;
        for (std::size_t t = 0; t < 8; ++t) w[t] += mpq_class(j) * v[t];
        RatVector wn = solve_left(nb, w);
        IntVector wi;
        for (auto& c : wn) wi.push_back(c.get_num());
        mpq_class norm = bilinear<mpq_class>(wn, n.gram(), wn);
        bool zero_mod_2 = std::all_of(wi.begin(), wi.end(), [](const mpz_class& c) { return c % 2 == 0; });
        if (zero_mod_2 || norm.get_num() % 8 != 0) continue;
        Lattice nn = neighbor(Lattice(n.gram()), 2, wi);
        RatMatrix in_l = *nn.basis() * nb;
        if (module_basis(in_l) == module_basis(RatMatrix::identity(8))) back = true;
      }
    CHECK(back);
    ++done;
  }
  CHECK(done == 5);
  IntVector twice(8, 0);
  twice[0] = 2;
  CHECK_THROWS_AS(neighbor(l, 2, twice), Error);
  IntVector bad_norm(8, 0);
  bad_norm[0] = 1;
  CHECK_THROWS_AS(neighbor(l, 2, bad_norm), Error);
  CHECK_THROWS_AS(neighbor(root_lattice(RootKind::D, 8), 2, bad_norm), Error);
}

TEST_CASE("genus walks") {
  auto w = genus_walk(e8(), 2, 10, 1);
  CHECK(w.complete);
  CHECK(w.classes.size() == 1);
  Lattice e8e8 = orthogonal_sum(e8(), e8());
  auto w1 = genus_walk(e8e8, 2, 1, 1);
  CHECK_FALSE(w1.complete);
  CHECK(w1.classes.size() == 1);
}

TEST_CASE("genus walk of E8+E8 finds D16+ for several seeds") {
  Lattice e8e8 = orthogonal_sum(e8(), e8());
  std::vector<std::vector<Fingerprint>> seen;
  for (std::uint64_t seed : {2, 7}) {
    auto w = genus_walk(e8e8, 2, 10, seed);
    CHECK(w.complete);
    REQUIRE(w.classes.size() == 2);
    std::vector<Fingerprint> fps;
    for (const auto& c : w.classes) fps.push_back(c.fingerprint);
    std::sort(fps.begin(), fps.end(), [](const Fingerprint& a, const Fingerprint& b) {
      return a.to_string() < b.to_string();
    });
    seen.push_back(fps);
    // both classes have 480 roots
    for (const auto& c : w.classes) CHECK(short_vectors(c.lattice.gram(), 2).vectors.size() == 240);
  }
  CHECK(seen[0] == seen[1]);
  for (std::uint64_t seed : {2, 7, 11}) {
    auto w = genus_walk(e8(), 2, 10, seed);
    CHECK(w.complete);
    CHECK(w.classes.size() == 1);
  }
}
