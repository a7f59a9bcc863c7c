#include "latkit/isometry.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "latkit/exact_linear.hpp"
#include "latkit/reduction.hpp"

namespace latkit {

std::string Fingerprint::to_string() const {
  std::ostringstream out;
  out << "dim " << dim << " det " << det.get_str() << " integral " << integral << " even " << even << " theta_cap "
      << norm_cap.get_str() << " theta";
  for (const auto& [k, v] : counts_by_norm) out << ' ' << k.get_str() << ':' << v;
  out << " scale " << scale.get_str() << " snf";
  for (const auto& d : snf) out << ' ' << d.get_str();
  return out.str();
}

Fingerprint fingerprint(const RatMatrix& gram, const mpq_class& norm_cap, const EnumConfig& cfg) {
  Fingerprint f;
  f.dim = gram.rows();
  f.det = det(gram);
  f.integral = is_integral(gram);
  f.even = false;
  if (f.integral) {
    f.even = true;
    for (std::size_t i = 0; i < gram.rows(); ++i)
      if (!mpz_even_p(gram(i, i).get_num_mpz_t())) f.even = false;
  }
  f.norm_cap = norm_cap;
  f.counts_by_norm = theta_prefix(gram, norm_cap, cfg);
  f.scale = common_denominator(gram);
  f.snf = elementary_divisors(to_integer(mpq_class(f.scale) * gram));
  return f;
}

namespace {

using Vec = std::vector<std::int64_t>;

std::int64_t checked_i64(const mpz_class& z) {
  if (!mpz_fits_slong_p(z.get_mpz_t())) throw Error(ErrorCode::kCapExceeded, "Gram entry exceeds 64 bits");
  return z.get_si();
}

// The candidate set of one lattice: every vector (both signs) up to the norm cap.
struct Side {
  std::size_t n = 0;
  std::vector<std::int64_t> a;  // scaled integer Gram
  std::vector<Vec> vecs;
  std::vector<Vec> va;  // v * a
  std::vector<std::int64_t> norms;
  std::vector<std::int32_t> ipm;  // dense inner products when small enough
  std::vector<int> profile;       // ids into a shared profile table
  std::map<Vec, int> index;

  std::int64_t ip(int i, int j) const {
    if (!ipm.empty()) return ipm[static_cast<std::size_t>(i) * vecs.size() + j];
    std::int64_t s = 0;
    const Vec& x = va[i];
    const Vec& y = vecs[j];
    for (std::size_t k = 0; k < n; ++k) s += x[k] * y[k];
    return s;
  }
};

Side build_side(const IntMatrix& scaled, const RatMatrix& gram, const mpq_class& cap, const IsometryConfig& cfg) {
  Side s;
  s.n = scaled.rows();
  s.a.resize(s.n * s.n);
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t j = 0; j < s.n; ++j) s.a[i * s.n + j] = checked_i64(scaled(i, j));
  for_each_short_vector(
      gram, cap,
      [&](std::span<const std::int64_t> v, const mpq_class&) {
        if (s.vecs.size() + 2 > cfg.max_candidates)
          throw Error(ErrorCode::kCapExceeded, "isometry candidate set exceeds " + std::to_string(cfg.max_candidates));
        Vec p(v.begin(), v.end()), m(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) m[i] = -p[i];
        s.vecs.push_back(std::move(p));
        s.vecs.push_back(std::move(m));
      },
      cfg.enum_cfg);
  // Deterministic order: by norm, then lexicographic.
  const std::size_t m = s.vecs.size();
  s.va.assign(m, Vec(s.n, 0));
  s.norms.assign(m, 0);
  auto mult = [&](const Vec& v) {
    Vec out(s.n, 0);
    for (std::size_t i = 0; i < s.n; ++i)
      if (v[i] != 0)
        for (std::size_t j = 0; j < s.n; ++j) out[j] += v[i] * s.a[i * s.n + j];
    return out;
  };
  std::vector<std::pair<std::int64_t, Vec>> keyed;
  keyed.reserve(m);
  for (auto& v : s.vecs) {
    Vec w = mult(v);
    std::int64_t nn = 0;
    for (std::size_t i = 0; i < s.n; ++i) nn += w[i] * v[i];
    keyed.emplace_back(nn, std::move(v));
  }
  std::sort(keyed.begin(), keyed.end());
  for (std::size_t i = 0; i < m; ++i) {
    s.norms[i] = keyed[i].first;
    s.vecs[i] = std::move(keyed[i].second);
    s.va[i] = mult(s.vecs[i]);
    s.index.emplace(s.vecs[i], static_cast<int>(i));
  }
  if (m <= 3000) {
    s.ipm.assign(m * m, 0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        std::int64_t v = 0;
        for (std::size_t k = 0; k < s.n; ++k) v += s.va[i][k] * s.vecs[j][k];
        s.ipm[i * m + j] = static_cast<std::int32_t>(v);
      }
  }
  return s;
}

// Profiles: histogram of inner products of a vector with the whole set.
void assign_profiles(Side& s, std::map<Vec, int>& table) {
  const int m = static_cast<int>(s.vecs.size());
  s.profile.assign(m, 0);
  std::vector<std::int64_t> vals(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) vals[j] = s.ip(i, j);
    std::sort(vals.begin(), vals.end());
    Vec key;
    for (int j = 0; j < m;) {
      int k = j;
      while (k < m && vals[k] == vals[j]) ++k;
      key.push_back(vals[j]);
      key.push_back(k - j);
      j = k;
    }
    auto [it, inserted] = table.emplace(std::move(key), static_cast<int>(table.size()));
    s.profile[i] = it->second;
  }
}

IntMatrix rows_of(const Side& s, const std::vector<int>& idx) {
  IntMatrix b(idx.size(), s.n);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < s.n; ++j) b(i, j) = static_cast<long>(s.vecs[idx[i]][j]);
  return b;
}

std::size_t span_rank(const Side& s) {
  IntMatrix all(0, s.n);
  for (std::size_t i = 0; i < s.vecs.size(); ++i) {
    IntVector r(s.vecs[i].begin(), s.vecs[i].end());
    all.append_row(r);
  }
  return hnf(all).rank;
}

mpz_class span_index(const Side& s) {
  IntMatrix all(0, s.n);
  for (std::size_t i = 0; i < s.vecs.size(); ++i) {
    IntVector r(s.vecs[i].begin(), s.vecs[i].end());
    all.append_row(r);
  }
  IntMatrix h = hnf_basis(all);
  if (h.rows() < s.n) return 0;
  return abs(det(h));
}

// Greedy basis from the candidate set, preferring choices that keep the
// spanned sublattice primitive; a primitive full set is a basis of L.
std::vector<int> choose_basis(const Side& s) {
  const std::size_t n = s.n;
  std::vector<int> chosen;
  std::vector<RatVector> echelon;  // rows with leading positions
  std::vector<std::size_t> lead;
  auto reduce = [&](const Vec& v) {
    RatVector r(v.begin(), v.end());
    for (std::size_t k = 0; k < echelon.size(); ++k) {
      if (r[lead[k]] == 0) continue;
      mpq_class f = r[lead[k]] / echelon[k][lead[k]];
      for (std::size_t j = 0; j < n; ++j) r[j] -= f * echelon[k][j];
    }
    return r;
  };
  auto primitive_with = [&](int idx) {
    std::vector<int> trial = chosen;
    trial.push_back(idx);
    for (const auto& d : elementary_divisors(rows_of(s, trial)))
      if (d != 1) return false;
    return true;
  };
  while (chosen.size() < n) {
    int first_free = -1, pick = -1;
    for (std::size_t i = 0; i < s.vecs.size(); ++i) {
      RatVector r = reduce(s.vecs[i]);
      bool indep = std::any_of(r.begin(), r.end(), [](const mpq_class& x) { return x != 0; });
      if (!indep) continue;
      if (first_free < 0) first_free = static_cast<int>(i);
      if (primitive_with(static_cast<int>(i))) {
        pick = static_cast<int>(i);
        break;
      }
    }
    if (pick < 0) pick = first_free;
    if (pick < 0) throw Error(ErrorCode::kPrecondition, "candidate set does not span");
    RatVector r = reduce(s.vecs[pick]);
    std::size_t l = 0;
    while (r[l] == 0) ++l;
    echelon.push_back(std::move(r));
    lead.push_back(l);
    chosen.push_back(pick);
  }
  return chosen;
}

// Backtrack over images of the chosen basis of side one in side two.
class Search {
 public:
  Search(const Side& s1, const Side& s2, std::vector<int> basis, std::uint64_t budget)
      : s1_(s1), s2_(s2), basis_(std::move(basis)), budget_(budget) {
    const std::size_t n = s1.n;
    RatMatrix b = to_rational(rows_of(s1, basis_));
    binv_den_ = common_denominator(inverse(b));
    binv_num_ = to_integer(mpq_class(binv_den_) * inverse(b));
    pool_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      int bk = basis_[k];
      for (std::size_t w = 0; w < s2.vecs.size(); ++w)
        if (s2.norms[w] == s1.norms[bk] && s2.profile[w] == s1.profile[bk]) pool_[k].push_back(static_cast<int>(w));
    }
    target_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) target_[i * n + j] = s1.ip(basis_[i], basis_[j]);
    img_.assign(n, -1);
  }

  std::size_t pool_size(std::size_t k) const { return pool_[k].size(); }

  // Fix images of levels < start, then search; on_leaf returns true to stop.
  bool run(const std::vector<int>& prefix, const std::function<bool(const IntMatrix&)>& on_leaf) {
    for (std::size_t k = 0; k < prefix.size(); ++k) img_[k] = prefix[k];
    for (std::size_t k = 0; k < prefix.size(); ++k)
      if (!consistent(k, prefix[k])) return false;
    on_leaf_ = &on_leaf;
    return dfs(prefix.size());
  }

  // Candidates for level k given images of levels < k already in prefix.
  std::vector<int> candidates(const std::vector<int>& prefix, std::size_t k) {
    for (std::size_t j = 0; j < prefix.size(); ++j) img_[j] = prefix[j];
    std::vector<int> out;
    for (int w : pool_[k])
      if (consistent(k, w)) out.push_back(w);
    return out;
  }

 private:
  bool consistent(std::size_t k, int w) const {
    const std::size_t n = s1_.n;
    for (std::size_t j = 0; j < k; ++j)
      if (s2_.ip(w, img_[j]) != target_[k * n + j]) return false;
    return true;
  }

  bool dfs(std::size_t k) {
    if (++nodes_ > budget_) throw Error(ErrorCode::kBudgetExceeded, "isometry search budget exhausted");
    const std::size_t n = s1_.n;
    if (k == n) return leaf();
    for (int w : pool_[k]) {
      if (!consistent(k, w)) continue;
      img_[k] = w;
      if (dfs(k + 1)) return true;
    }
    img_[k] = -1;
    return false;
  }

  bool leaf() {
    const std::size_t n = s1_.n;
    IntMatrix w = rows_of(s2_, img_);
    IntMatrix x = binv_num_ * w;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!mpz_divisible_p(x(i, j).get_mpz_t(), binv_den_.get_mpz_t())) return false;
        mpz_divexact(x(i, j).get_mpz_t(), x(i, j).get_mpz_t(), binv_den_.get_mpz_t());
      }
    return (*on_leaf_)(x);
  }

  const Side& s1_;
  const Side& s2_;
  std::vector<int> basis_;
  std::vector<std::vector<int>> pool_;
  std::vector<std::int64_t> target_;
  std::vector<int> img_;
  IntMatrix binv_num_;
  mpz_class binv_den_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  const std::function<bool(const IntMatrix&)>* on_leaf_ = nullptr;
};

struct Prepared {
  Side s1, s2;
  bool compatible = true;
};

mpq_class max_diag(const RatMatrix& g) {
  mpq_class m = g(0, 0);
  for (std::size_t i = 1; i < g.rows(); ++i) m = std::max(m, mpq_class(g(i, i)));
  return m;
}

// Shared norm cap: smallest cap at which side one's vectors span Q^n,
// starting from the minimum and stepping by the parity of the lattice.
Prepared prepare(const RatMatrix& g1, const RatMatrix* g2, const IsometryConfig& cfg) {
  const std::size_t n = g1.rows();
  if (n > cfg.backtrack_cap)
    throw Error(ErrorCode::kCapExceeded,
                "dimension " + std::to_string(n) + " exceeds backtrack cap " + std::to_string(cfg.backtrack_cap));
  mpz_class den = common_denominator(g1);
  if (g2) den = lcm(den, common_denominator(*g2));
  IntMatrix a1 = to_integer(mpq_class(den) * g1);
  bool even = true;
  for (std::size_t i = 0; i < n; ++i)
    if (!mpz_even_p(a1(i, i).get_mpz_t())) even = false;
  mpq_class step(even ? 2 : 1);
  step /= den;
  mpq_class cap = minimum(g1, cfg.enum_cfg).min;
  // The LLL basis lies within its largest diagonal entry, so that cap always spans.
  const mpq_class stop = max_diag(lll(g1).final_gram);
  Prepared p;
  for (;;) {
    p.s1 = build_side(a1, g1, cap, cfg);
    if (span_rank(p.s1) == n) break;
    if (cap > stop) throw Error(ErrorCode::kPrecondition, "short vectors never span");
    cap += step;
  }
  std::map<Vec, int> table;
  assign_profiles(p.s1, table);
  if (g2) {
    IntMatrix a2 = to_integer(mpq_class(den) * *g2);
    p.s2 = build_side(a2, *g2, cap, cfg);
    if (p.s2.vecs.size() != p.s1.vecs.size()) {
      p.compatible = false;
      return p;
    }
    assign_profiles(p.s2, table);
    std::vector<int> pa = p.s1.profile, pb = p.s2.profile;
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    if (pa != pb || p.s1.norms != p.s2.norms || span_index(p.s1) != span_index(p.s2)) p.compatible = false;
  }
  return p;
}

bool quick_mismatch(const RatMatrix& g1, const RatMatrix& g2) {
  if (g1.rows() != g2.rows()) return true;
  if (det(g1) != det(g2)) return true;
  mpz_class d1 = common_denominator(g1), d2 = common_denominator(g2);
  mpz_class den = lcm(d1, d2);
  return elementary_divisors(to_integer(mpq_class(den) * g1)) != elementary_divisors(to_integer(mpq_class(den) * g2));
}

}  // namespace

std::optional<IntMatrix> is_isometric(const RatMatrix& g1, const RatMatrix& g2, const IsometryConfig& cfg) {
  if (!g1.is_symmetric() || !g2.is_symmetric()) throw Error(ErrorCode::kNotSymmetric, "Gram matrix is not symmetric");
  if (quick_mismatch(g1, g2)) return std::nullopt;
  if (g1.rows() == 0) return IntMatrix();
  if (g1 == g2) return IntMatrix::identity(g1.rows());
  Prepared p = prepare(g1, &g2, cfg);
  if (!p.compatible) return std::nullopt;
  std::vector<int> basis = choose_basis(p.s1);
  Search search(p.s1, p.s2, basis, cfg.node_budget);
  std::optional<IntMatrix> found;
  std::function<bool(const IntMatrix&)> leaf = [&](const IntMatrix& x) {
    // x maps coordinates of lattice one to lattice two: x g2 x^T = g1.
    RatMatrix xr = to_rational(x);
    if (xr * g2 * xr.transposed() != g1) throw Error(ErrorCode::kPrecondition, "isometry check failed");
    found = to_integer(inverse(xr));
    return true;
  };
  search.run({}, leaf);
  if (found) {
    RatMatrix t = to_rational(*found);
    if (t * g1 * t.transposed() != g2) throw Error(ErrorCode::kPrecondition, "isometry transform check failed");
  }
  return found;
}

AutResult automorphism_group(const RatMatrix& g, const IsometryConfig& cfg) {
  if (!g.is_symmetric()) throw Error(ErrorCode::kNotSymmetric, "Gram matrix is not symmetric");
  AutResult out;
  out.order = 1;
  const std::size_t n = g.rows();
  if (n == 0) return out;
  Prepared p = prepare(g, nullptr, cfg);
  const Side& s = p.s1;
  std::vector<int> basis = choose_basis(s);
  Search search(s, s, basis, cfg.node_budget);
  const std::size_t m = s.vecs.size();

  std::vector<std::vector<int>> perms;
  auto to_perm = [&](const IntMatrix& x) {
    std::vector<int> perm(m);
    for (std::size_t i = 0; i < m; ++i) {
      Vec img(n, 0);
      for (std::size_t j = 0; j < n; ++j) {
        mpz_class acc = 0;
        for (std::size_t k = 0; k < n; ++k)
          if (s.vecs[i][k] != 0) acc += x(k, j) * s.vecs[i][k];
        img[j] = checked_i64(acc);
      }
      auto it = s.index.find(img);
      if (it == s.index.end()) throw Error(ErrorCode::kPrecondition, "automorphism does not permute short vectors");
      perm[i] = it->second;
    }
    return perm;
  };
  auto orbit_of = [&](int start) {
    std::vector<char> seen(m, 0);
    std::vector<int> queue{start};
    seen[start] = 1;
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (const auto& pm : perms) {
        int nx = pm[queue[q]];
        if (!seen[nx]) {
          seen[nx] = 1;
          queue.push_back(nx);
        }
      }
    return seen;
  };

  for (std::size_t level = n; level-- > 0;) {
    std::vector<int> prefix(basis.begin(), basis.begin() + level);
    std::vector<int> cands = search.candidates(prefix, level);
    std::vector<char> orbit = orbit_of(basis[level]);
    std::vector<char> failed(m, 0);
    for (int c : cands) {
      if (orbit[c] || failed[c]) continue;
      std::vector<int> pre = prefix;
      pre.push_back(c);
      std::optional<IntMatrix> found;
      std::function<bool(const IntMatrix&)> leaf = [&](const IntMatrix& x) {
        found = x;
        return true;
      };
      if (search.run(pre, leaf)) {
        RatMatrix xr = to_rational(*found);
        if (xr * g * xr.transposed() != g) throw Error(ErrorCode::kPrecondition, "automorphism check failed");
        perms.push_back(to_perm(*found));
        out.generators.push_back(*found);
        orbit = orbit_of(basis[level]);
      } else {
        std::vector<char> o = orbit_of(c);
        for (std::size_t i = 0; i < m; ++i)
          if (o[i]) failed[i] = 1;
      }
    }
    std::size_t size = std::count(orbit.begin(), orbit.end(), 1);
    out.order *= static_cast<unsigned long>(size);
  }
  return out;
}

mpz_class aut_order(const RatMatrix& g, const IsometryConfig& cfg) { return automorphism_group(g, cfg).order; }

}  // namespace latkit
