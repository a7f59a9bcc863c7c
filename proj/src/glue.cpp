#include "latkit/glue.hpp"

#include <map>
#include <optional>
#include <set>

#include "latkit/enumeration.hpp"
#include "latkit/exact_linear.hpp"
#include "latkit/reduction.hpp"

namespace latkit {

namespace {

mpq_class mod_q(const mpq_class& x, long r) {
  mpq_class t = x / r;
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  return x - mpq_class(f * r);
}

std::int64_t mod_p(const mpz_class& x, long p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p));
  return r.get_si();
}

mpq_class form(const RatVector& x, const RatMatrix& g, const RatVector& y) { return bilinear<mpq_class>(x, g, y); }

}  // namespace

FpMatrix fp_rref(FpMatrix rows, long p) {
  rref_mod_p(rows, p);
  FpMatrix out;
  for (auto& r : rows) {
    bool zero = true;
    for (auto c : r)
      if (c != 0) zero = false;
    if (!zero) out.push_back(std::move(r));
  }
  return out;
}

// ---- discriminant groups ----

RatVector DiscGroup::lift(const FpVector& c) const {
  RatVector x(base.dim(), 0);
  for (std::size_t i = 0; i < rank; ++i) {
    if (c[i] == 0) continue;
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += c[i] * generators(i, j);
  }
  return x;
}

mpq_class DiscGroup::q(const FpVector& c) const {
  RatVector x = lift(c);
  return mod_q(form(x, base.gram(), x), 2);
}

mpq_class DiscGroup::b(const FpVector& c, const FpVector& d) const {
  return mod_q(form(lift(c), base.gram(), lift(d)), 1);
}

DiscGroup disc_group(const Lattice& l, long p) {
  if (!is_integral(l)) throw Error(ErrorCode::kNotIntegral, "discriminant group of a non-integral lattice");
  if (p < 2 || !is_prime(p)) throw Error(ErrorCode::kInvalidArgument, "p must be prime");
  const std::size_t n = l.dim();
  // U G V = D, so L^# = Z^n D^-1 U and the p-part is spanned by u_i / p.
  SnfResult s = snf_with_transforms(to_integer(l.gram()));
  DiscGroup d{l, p, 0, RatMatrix(0, n), {}, RatMatrix{}};
  for (std::size_t i = 0; i < n; ++i) {
    const mpz_class& di = s.d(i, i);
    if (di % p != 0) continue;
    if (di % (p * p) == 0) throw Error(ErrorCode::kNotElementary, "p-part of the discriminant group is not elementary");
    RatVector g(n);
    for (std::size_t j = 0; j < n; ++j) {
      g[j] = mpq_class(s.u(i, j), p);
      g[j].canonicalize();
    }
    d.generators.append_row(g);
  }
  d.rank = d.generators.rows();
  d.b_values = RatMatrix(d.rank, d.rank);
  for (std::size_t i = 0; i < d.rank; ++i) {
    RatVector gi = d.generators.row_vector(i);
    d.q_values.push_back(mod_q(form(gi, l.gram(), gi), 2));
    for (std::size_t j = 0; j < d.rank; ++j)
      d.b_values(i, j) = mod_q(form(gi, l.gram(), d.generators.row_vector(j)), 1);
  }
  return d;
}

bool GlueCode::is_isotropic() const {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (disc.q(basis[i]) != 0) return false;
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (disc.b(basis[i], basis[j]) != 0) return false;
  }
  return true;
}

// ---- subspace enumeration ----

namespace {

mpz_class gaussian_binomial(std::size_t k, std::size_t d, long p) {
  mpz_class num = 1, den = 1, pk, pi;
  for (std::size_t i = 0; i < d; ++i) {
    mpz_ui_pow_ui(pk.get_mpz_t(), p, k - i);
    mpz_ui_pow_ui(pi.get_mpz_t(), p, i + 1);
    num *= pk - 1;
    den *= pi - 1;
  }
  return num / den;
}

FpMatrix apply(const FpMatrix& rows, const FpMatrix& a, long p) {
  FpMatrix out;
  for (const auto& r : rows) {
    FpVector y(a[0].size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i])
        for (std::size_t j = 0; j < y.size(); ++j) y[j] = (y[j] + r[i] * a[i][j]) % p;
    out.push_back(y);
  }
  return out;
}

bool invariant(const FpMatrix& s, const FpMatrix& a, long p) {
  FpMatrix both = s;
  for (auto& r : apply(s, a, p)) both.push_back(r);
  return fp_rref(both, p).size() == s.size();
}

// Calls fn on every d-dimensional subspace of F_p^k in reduced echelon form.
template <class Fn>
void for_each_subspace(std::size_t k, std::size_t d, long p, Fn&& fn) {
  std::vector<std::size_t> piv(d);
  for (std::size_t i = 0; i < d; ++i) piv[i] = i;
  while (true) {
    // free positions: (row i, column c) with c > piv[i], c not a pivot
    std::set<std::size_t> pivset(piv.begin(), piv.end());
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t c = piv[i] + 1; c < k; ++c)
        if (!pivset.count(c)) free.emplace_back(i, c);
    std::vector<std::int64_t> vals(free.size(), 0);
    while (true) {
      FpMatrix rows(d, FpVector(k, 0));
      for (std::size_t i = 0; i < d; ++i) rows[i][piv[i]] = 1;
      for (std::size_t f = 0; f < free.size(); ++f) rows[free[f].first][free[f].second] = vals[f];
      fn(rows);
      std::size_t f = 0;
      while (f < vals.size() && vals[f] == p - 1) vals[f++] = 0;
      if (f == vals.size()) break;
      ++vals[f];
    }
    // next pivot combination
    if (d == 0) return;
    std::size_t i = d;
    while (i > 0 && piv[i - 1] == k - d + i - 1) --i;
    if (i == 0) return;
    ++piv[i - 1];
    for (std::size_t j = i; j < d; ++j) piv[j] = piv[j - 1] + 1;
  }
}

}  // namespace

std::vector<GlueCode> isotropic_submodules(const DiscGroup& d, std::size_t dim, const SubmoduleSearch& opts) {
  std::vector<GlueCode> out;
  if (dim > d.rank) return out;
  if (gaussian_binomial(d.rank, dim, d.p) > opts.budget)
    throw Error(ErrorCode::kBudgetExceeded, "too many subspaces to enumerate");
  std::set<FpMatrix> seen;
  for_each_subspace(d.rank, dim, d.p, [&](const FpMatrix& rows) {
    if (seen.count(rows)) return;
    GlueCode code{d, rows};
    if (!code.is_isotropic()) return;
    for (const auto& a : opts.stabilizing)
      if (!invariant(rows, a, d.p)) return;
    // mark the orbit under the centralizer; the first member represents it
    std::vector<FpMatrix> stack{rows};
    seen.insert(rows);
    while (!stack.empty()) {
      FpMatrix s = stack.back();
      stack.pop_back();
      for (const auto& a : opts.centralizer) {
        FpMatrix t = fp_rref(apply(s, a, d.p), d.p);
        if (seen.insert(t).second) stack.push_back(t);
      }
    }
    out.push_back(std::move(code));
  });
  return out;
}

Lattice overlattice(const Lattice& l, const GlueCode& code) {
  if (!code.is_isotropic()) throw Error(ErrorCode::kNotIsotropic, "glue code is not totally isotropic");
  RatMatrix rows = RatMatrix::identity(l.dim());
  for (const auto& c : code.basis) rows.append_row(code.disc.lift(c));
  Lattice out(module_basis(rows).basis(), l.gram(), l.label().empty() ? std::string{} : l.label() + "+glue");
  mpq_class expect = det(l.gram());
  for (std::size_t i = 0; i < code.dim(); ++i) expect /= code.disc.p * code.disc.p;
  if (det(out.gram()) != expect) throw Error(ErrorCode::kPrecondition, "overlattice determinant mismatch");
  return out;
}

// ---- neighbours ----

namespace {

void check_even_unimodular(const Lattice& l) {
  if (!is_unimodular(l) || !is_even(l)) throw Error(ErrorCode::kPrecondition, "neighbours need an even unimodular lattice");
}

mpz_class inner(const Lattice& l, const IntVector& x, const IntVector& y) {
  mpq_class s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * l.gram()(i, j) * y[j];
  return s.get_num();
}

bool in_pl(const IntVector& v, long p) {
  for (const auto& c : v)
    if (c % p != 0) return false;
  return true;
}

}  // namespace

IntMatrix neighbor_kernel(const Lattice& l, long p, const IntVector& v) {
  const std::size_t n = l.dim();
  IntVector w(n);
  for (std::size_t j = 0; j < n; ++j) {
    IntVector e(n, 0);
    e[j] = 1;
    w[j] = inner(l, v, e);
  }
  std::size_t piv = n;
  for (std::size_t j = 0; j < n; ++j)
    if (mod_p(w[j], p) != 0) {
      piv = j;
      break;
    }
  if (piv == n) throw Error(ErrorCode::kPrecondition, "v pairs to 0 mod p with all of L");
  const std::int64_t inv = inverse_mod(mod_p(w[piv], p), p);
  IntMatrix k(0, n);
  for (std::size_t i = 0; i < n; ++i) {
    IntVector r(n, 0);
    if (i == piv) {
      r[i] = p;
    } else {
      r[i] = 1;
      r[piv] = -mpz_class(mod_floor(mod_p(w[i], p) * inv, p));
    }
    k.append_row(r);
  }
  return k;
}

IntVector lift_to_admissible(const Lattice& l, long p, const IntVector& x) {
  if (x.size() != l.dim()) throw Error(ErrorCode::kInvalidArgument, "vector length mismatch");
  if (in_pl(x, p)) throw Error(ErrorCode::kPrecondition, "x lies in pL");
  mpz_class nx = inner(l, x, x);
  if (nx % (2 * p) != 0) throw Error(ErrorCode::kPrecondition, "(x,x) is not divisible by 2p");
  const std::size_t n = l.dim();
  mpz_class t = nx / (2 * p);
  for (std::size_t j = 0; j < n; ++j) {
    IntVector e(n, 0);
    e[j] = 1;
    std::int64_t xe = mod_p(inner(l, x, e), p);
    if (xe == 0) continue;
    std::int64_t c = mod_floor(-mod_p(t, p) * inverse_mod(xe, p), p);
    IntVector v = x;
    v[j] += mpz_class(p) * c;
    return v;
  }
  throw Error(ErrorCode::kPrecondition, "x pairs to 0 mod p with all of L");
}

Lattice neighbor(const Lattice& l, long p, const IntVector& v) {
  if (p < 2 || !is_prime(p)) throw Error(ErrorCode::kInvalidArgument, "p must be prime");
  check_even_unimodular(l);
  if (v.size() != l.dim()) throw Error(ErrorCode::kInvalidArgument, "vector length mismatch");
  if (in_pl(v, p)) throw Error(ErrorCode::kPrecondition, "v lies in pL");
  if (inner(l, v, v) % (2 * p * p) != 0) throw Error(ErrorCode::kPrecondition, "(v,v) is not divisible by 2p^2");
  RatMatrix rows = to_rational(neighbor_kernel(l, p, v));
  RatVector vp(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    vp[i] = mpq_class(v[i], p);
    vp[i].canonicalize();
  }
  rows.append_row(vp);
  Lattice out(module_basis(rows).basis(), l.gram());
  if (!is_unimodular(out) || !is_even(out)) throw Error(ErrorCode::kPrecondition, "neighbour is not even unimodular");
  return out;
}

// ---- genus walk ----

GenusWalkResult genus_walk(const Lattice& l0, long p, std::size_t max_classes, std::uint64_t seed,
                           const GenusWalkConfig& cfg) {
  check_even_unimodular(l0);
  if (max_classes == 0) throw Error(ErrorCode::kInvalidArgument, "max_classes must be positive");
  if (l0.dim() > cfg.iso.backtrack_cap) throw Error(ErrorCode::kCapExceeded, "dimension exceeds the isometry cap");
  SeededRng rng(seed);
  const mpq_class limit = cfg.candidate_norm_limit > 0 ? cfg.candidate_norm_limit : mpq_class(2 * p);
  GenusWalkResult res;
  auto reduce = [](const RatMatrix& g) { return Lattice(lll(g).final_gram); };
  Lattice start = reduce(l0.gram());
  const mpq_class cap = minimum(start.gram(), cfg.iso.enum_cfg).min;
  res.classes.push_back({start, fingerprint(start.gram(), cap, cfg.iso.enum_cfg)});

  for (std::size_t i = 0; i < res.classes.size(); ++i) {
    const Lattice cur = res.classes[i].lattice;
    std::vector<IntVector> cands;
    for_each_short_vector(
        cur.gram(), limit,
        [&](std::span<const std::int64_t> x, const mpq_class& norm) {
          if (norm.get_den() != 1 || norm.get_num() % (2 * p) != 0) return;
          IntVector v(x.begin(), x.end());
          if (!in_pl(v, p)) cands.push_back(std::move(v));
        },
        cfg.iso.enum_cfg);
    // Short vectors alternate with random vectors of [0, p^2)^n, which reach
    // every isotropic line mod p and every lift.
    auto random_candidate = [&]() -> std::optional<IntVector> {
      for (int attempt = 0; attempt < 10000; ++attempt) {
        IntVector x(cur.dim());
        for (auto& c : x) c = static_cast<long>(rng.below(static_cast<std::uint64_t>(p * p)));
        if (in_pl(x, p)) continue;
        if (inner(cur, x, x) % (2 * p) == 0) return x;
      }
      return std::nullopt;
    };
    for (std::size_t t = 0; t < cfg.neighbors_per_class; ++t) {
      std::optional<IntVector> pick;
      if (t % 2 == 0 && !cands.empty()) pick = cands[rng.below(cands.size())];
      else pick = random_candidate();
      if (!pick) continue;
      const IntVector& x = *pick;
      Lattice nb = reduce(neighbor(cur, p, lift_to_admissible(cur, p, x)).gram());
      ++res.neighbors_tried;
      Fingerprint fp = fingerprint(nb.gram(), cap, cfg.iso.enum_cfg);
      bool known = false;
      for (const auto& c : res.classes)
        if (c.fingerprint == fp && is_isometric(c.lattice.gram(), nb.gram(), cfg.iso)) {
          known = true;
          break;
        }
      if (known) continue;
      if (res.classes.size() >= max_classes) return res;
      res.classes.push_back({nb, fp});
    }
  }
  res.complete = true;
  return res;
}

}  // namespace latkit
