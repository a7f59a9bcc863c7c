#include "latkit/cyclotomic.hpp"

#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace latkit {

namespace {

using Poly = std::vector<mpz_class>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division by a monic polynomial; the remainder must vanish.
Poly divide_exact(Poly a, const Poly& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) throw Error(ErrorCode::kInvalidArgument, "polynomial division degree mismatch");
  Poly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    mpz_class c = a[i];
    q[i - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (std::size_t i = 0; i < db; ++i)
    if (a[i] != 0) throw Error(ErrorCode::kInvalidArgument, "inexact polynomial division");
  return q;
}

// Per-modulus tables: coordinates of zeta^k for k in [0, m) and Tr(zeta^k).
struct Context {
  long m = 1;
  std::size_t phi = 1;
  Poly poly;
  std::vector<std::vector<mpz_class>> powers;
  std::vector<mpz_class> traces;
};

std::shared_ptr<const Context> build_context(long m) {
  auto ctx = std::make_shared<Context>();
  ctx->m = m;
  ctx->poly = cyclotomic_poly(m);
  const std::size_t phi = ctx->poly.size() - 1;
  ctx->phi = phi;
  std::vector<mpz_class> cur(phi, 0);
  cur[0] = 1;
  for (long k = 0; k < m; ++k) {
    ctx->powers.push_back(cur);
    // multiply by x and reduce with the monic Phi_m
    mpz_class top = cur[phi - 1];
    for (std::size_t i = phi - 1; i > 0; --i) cur[i] = cur[i - 1] - top * ctx->poly[i];
    cur[0] = -top * ctx->poly[0];
  }
  // Tr(zeta^k) as the trace of multiplication by zeta^k: row i is zeta^(i+k).
  for (long k = 0; k < m; ++k) {
    mpz_class t = 0;
    for (std::size_t i = 0; i < phi; ++i) t += ctx->powers[(i + k) % m][i];
    ctx->traces.push_back(t);
  }
  return ctx;
}

const Context& context(long m) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "cyclotomic modulus must be positive");
  static std::mutex mu;
  static std::map<long, std::shared_ptr<const Context>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, build_context(m)).first;
  return *it->second;
}

void check_same(long a, long b) {
  if (a != b) throw Error(ErrorCode::kInvalidArgument, "elements of different cyclotomic fields");
}

long gcd_l(long a, long b) { return std::gcd(a, b); }

RatVector to_row(const CycloElement& x) { return x.coeffs(); }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

// ---- polynomials ----

std::vector<mpz_class> cyclotomic_poly(long n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "cyclotomic polynomial needs n >= 1");
  Poly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (long d = 1; d < n; ++d)
    if (n % d == 0) p = divide_exact(p, cyclotomic_poly(d));
  trim(p);
  return p;
}

long euler_phi(long n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "euler_phi needs n >= 1");
  long result = n;
  for (long q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    while (n % q == 0) n /= q;
    result -= result / q;
  }
  if (n > 1) result -= result / n;
  return result;
}

// ---- elements ----

CycloElement::CycloElement(long m, const std::vector<mpq_class>& poly) : m_(m) {
  const Context& ctx = context(m);
  c_.assign(ctx.phi, 0);
  for (std::size_t e = 0; e < poly.size(); ++e) {
    if (poly[e] == 0) continue;
    const auto& pw = ctx.powers[e % m];
    for (std::size_t i = 0; i < ctx.phi; ++i)
      if (pw[i] != 0) c_[i] += poly[e] * pw[i];
  }
}

CycloElement CycloElement::zero(long m) { return CycloElement(m, {}); }
CycloElement CycloElement::one(long m) { return CycloElement(m, {mpq_class(1)}); }
CycloElement CycloElement::rational(long m, const mpq_class& q) { return CycloElement(m, {q}); }

CycloElement CycloElement::zeta(long m, long k) {
  long e = ((k % m) + m) % m;
  std::vector<mpq_class> p(e + 1, 0);
  p[e] = 1;
  return CycloElement(m, p);
}

CycloElement CycloElement::operator+(const CycloElement& o) const {
  check_same(m_, o.m_);
  CycloElement r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

CycloElement CycloElement::operator-(const CycloElement& o) const {
  check_same(m_, o.m_);
  CycloElement r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

CycloElement CycloElement::operator-() const { return *this * mpq_class(-1); }

CycloElement CycloElement::operator*(const CycloElement& o) const {
  check_same(m_, o.m_);
  std::vector<mpq_class> prod(2 * c_.size(), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      if (o.c_[j] != 0) prod[i + j] += c_[i] * o.c_[j];
  }
  return CycloElement(m_, prod);
}

CycloElement CycloElement::operator*(const mpq_class& q) const {
  CycloElement r = *this;
  for (auto& c : r.c_) c *= q;
  return r;
}

bool CycloElement::is_zero() const {
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

bool CycloElement::is_integral() const {
  for (const auto& c : c_)
    if (c.get_den() != 1) return false;
  return true;
}

CycloElement CycloElement::conj() const { return galois(m_ - 1 == 0 ? 1 : m_ - 1); }

CycloElement CycloElement::galois(long g) const {
  if (gcd_l(((g % m_) + m_) % m_, m_) != 1 && m_ > 1)
    throw Error(ErrorCode::kInvalidArgument, "Galois exponent must be coprime to m");
  const long gg = ((g % m_) + m_) % m_;
  std::vector<mpq_class> p(m_, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) p[(static_cast<long>(i) * gg) % m_] += c_[i];
  return CycloElement(m_, p);
}

RatMatrix CycloElement::mult_matrix() const {
  const std::size_t n = c_.size();
  RatMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    CycloElement r = zeta(m_, static_cast<long>(i)) * *this;
    for (std::size_t j = 0; j < n; ++j) out(i, j) = r.c_[j];
  }
  return out;
}

CycloElement CycloElement::inverse() const {
  if (is_zero()) throw Error(ErrorCode::kDivisionByZero, "inverse of zero in a cyclotomic field");
  // 1 = y x: solve for the coordinate row of y against the rows of M_x.
  RatVector e(c_.size(), 0);
  e[0] = 1;
  return CycloElement(m_, solve_left(mult_matrix(), e));
}

CycloElement CycloElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycloElement r = one(m_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

mpq_class CycloElement::trace() const {
  const Context& ctx = context(m_);
  mpq_class t = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) t += c_[i] * ctx.traces[i];
  return t;
}

mpq_class CycloElement::norm() const { return det(mult_matrix()); }

std::string CycloElement::to_string() const {
  std::ostringstream ss;
  ss << "[";
  for (std::size_t i = 0; i < c_.size(); ++i) ss << (i ? " " : "") << c_[i].get_str();
  ss << "]";
  return ss.str();
}

CycloElement derivative_at_zeta(long m) {
  Poly p = cyclotomic_poly(m);
  std::vector<mpq_class> d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(mpq_class(p[i] * static_cast<long>(i)));
  return CycloElement(m, d);
}

// ---- ideals ----

FracIdeal FracIdeal::generated_by(long m, const std::vector<CycloElement>& gens) {
  const std::size_t phi = static_cast<std::size_t>(euler_phi(m));
  RatMatrix rows(0, phi);
  for (const auto& g : gens) {
    check_same(m, g.modulus());
    for (std::size_t k = 0; k < phi; ++k) rows.append_row(to_row(CycloElement::zeta(m, static_cast<long>(k)) * g));
  }
  RationalModule mod = module_basis(rows);
  if (mod.numerator.rows() != phi) throw Error(ErrorCode::kInvalidArgument, "ideal generators span a degenerate module");
  return FracIdeal(m, std::move(mod));
}

FracIdeal FracIdeal::principal(const CycloElement& x) { return generated_by(x.modulus(), {x}); }
FracIdeal FracIdeal::unit(long m) { return principal(CycloElement::one(m)); }

FracIdeal FracIdeal::from_module(long m, const RationalModule& given) {
  const std::size_t phi = static_cast<std::size_t>(euler_phi(m));
  RationalModule mod = module_basis(given.basis());
  if (mod.numerator.rows() != phi || mod.numerator.cols() != phi)
    throw Error(ErrorCode::kInvalidArgument, "ideal module must have full rank phi(m)");
  FracIdeal out(m, mod);
  const CycloElement z = CycloElement::zeta(m);
  for (const auto& b : out.basis_elements())
    if (!out.contains(b * z)) throw Error(ErrorCode::kInvalidArgument, "module is not closed under zeta");
  return out;
}

std::vector<CycloElement> FracIdeal::basis_elements() const {
  RatMatrix b = basis();
  std::vector<CycloElement> out;
  for (std::size_t i = 0; i < b.rows(); ++i) out.emplace_back(m_, b.row_vector(i));
  return out;
}

RatVector FracIdeal::coordinates(const CycloElement& x) const {
  check_same(m_, x.modulus());
  return solve_left(basis(), x.coeffs());
}

bool FracIdeal::contains(const CycloElement& x) const {
  for (const auto& c : coordinates(x))
    if (c.get_den() != 1) return false;
  return true;
}

mpq_class FracIdeal::norm() const {
  mpq_class d = abs(det(basis()));
  return d;
}

FracIdeal FracIdeal::galois(long g) const {
  std::vector<CycloElement> gens;
  for (const auto& b : basis_elements()) gens.push_back(b.galois(g));
  return generated_by(m_, gens);
}

FracIdeal FracIdeal::conj() const { return galois(m_ - 1 == 0 ? 1 : m_ - 1); }

FracIdeal operator*(const FracIdeal& a, const FracIdeal& b) {
  check_same(a.m_, b.m_);
  // I J is spanned over Z by products of Z-bases.
  const auto ea = a.basis_elements(), eb = b.basis_elements();
  RatMatrix rows(0, ea.size());
  for (const auto& x : ea)
    for (const auto& y : eb) rows.append_row(to_row(x * y));
  return FracIdeal(a.m_, module_basis(rows));
}

FracIdeal FracIdeal::trace_dual() const {
  const auto e = basis_elements();
  const std::size_t n = e.size();
  RatMatrix t(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) t(i, j) = t(j, i) = (e[i] * e[j]).trace();
  return FracIdeal(m_, module_basis(latkit::inverse(t) * basis()));
}

FracIdeal FracIdeal::inverse() const {
  // I^dual = I^-1 Delta^-1, so I^-1 = I^dual Delta.
  return trace_dual() * principal(derivative_at_zeta(m_));
}

std::string FracIdeal::to_text() const {
  std::ostringstream ss;
  ss << m_ << "\n";
  const IntMatrix& h = numerator();
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t j = 0; j < h.cols(); ++j) ss << (j ? " " : "") << h(i, j).get_str();
    ss << "\n";
  }
  ss << "den " << denominator().get_str() << "\n";
  return ss.str();
}

FracIdeal FracIdeal::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    auto pos = line.find('#');
    if (pos != std::string::npos) line = line.substr(0, pos);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  try {
    if (lines.empty()) throw Error(ErrorCode::kParse, "empty ideal file");
    long m = std::stol(lines[0]);
    if (m < 1) throw Error(ErrorCode::kParse, "ideal file: modulus must be positive");
    const std::size_t phi = static_cast<std::size_t>(euler_phi(m));
    if (lines.size() != phi + 2) throw Error(ErrorCode::kParse, "ideal file: expected phi(m) rows and a den line");
    RationalModule mod;
    mod.numerator = IntMatrix(phi, phi);
    for (std::size_t i = 0; i < phi; ++i) {
      std::istringstream row(lines[1 + i]);
      std::string tok;
      std::size_t j = 0;
      while (row >> tok) {
        if (j >= phi) throw Error(ErrorCode::kParse, "ideal file: row too long");
        mod.numerator(i, j++) = mpz_class(tok);
      }
      if (j != phi) throw Error(ErrorCode::kParse, "ideal file: row too short");
    }
    std::istringstream den(lines.back());
    std::string kw, val;
    if (!(den >> kw >> val) || kw != "den") throw Error(ErrorCode::kParse, "ideal file: expected 'den q'");
    mod.denominator = mpz_class(val);
    if (mod.denominator <= 0) throw Error(ErrorCode::kParse, "ideal file: denominator must be positive");
    return from_module(m, mod);
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::kParse, "ideal file: malformed number");
  }
}

FracIdeal FracIdeal::load(const std::string& path) { return parse(slurp(path)); }

FracIdeal different(long m) {
  if (m % 4 == 2) throw Error(ErrorCode::kInvalidArgument, "use the canonical modulus m != 2 (mod 4)");
  return FracIdeal::principal(derivative_at_zeta(m));
}

// ---- trace forms ----

namespace {

void check_alpha(const CycloElement& alpha, const BoundsConfig& cfg) {
  if (!alpha.is_real()) throw Error(ErrorCode::kInvalidArgument, "alpha must lie in the real subfield");
  if (!is_totally_positive(alpha, cfg)) throw Error(ErrorCode::kNotPositiveDefinite, "alpha is not totally positive");
}

RatMatrix gram_of(const FracIdeal& j, const CycloElement& alpha) {
  const auto e = j.basis_elements();
  const std::size_t n = e.size();
  std::vector<CycloElement> ae, ce;
  for (const auto& b : e) {
    ae.push_back(alpha * b);
    ce.push_back(b.conj());
  }
  RatMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) g(i, k) = (ae[i] * ce[k]).trace();
  if (!g.is_symmetric()) throw Error(ErrorCode::kPrecondition, "trace form is not symmetric");
  return g;
}

// Builds the image lattice of x -> phi(x) and checks it is an isometry.
template <class Map>
TraceFormLattice transformed(const TraceFormLattice& l, const FracIdeal& j2, const CycloElement& alpha2, Map&& phi,
                             const BoundsConfig& cfg) {
  TraceFormLattice out = trace_form_gram(j2, alpha2, cfg);
  const auto e = l.ideal.basis_elements();
  IntMatrix t(e.size(), e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    RatVector c = j2.coordinates(phi(e[i]));
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k].get_den() != 1) throw Error(ErrorCode::kPrecondition, "transform is not integral");
      t(i, k) = c[k].get_num();
    }
  }
  RatMatrix tr = to_rational(t);
  if (tr * out.gram * tr.transposed() != l.gram)
    throw Error(ErrorCode::kPrecondition, "transformed Gram is not congruent to the input");
  out.transform = std::move(t);
  return out;
}

}  // namespace

TraceFormLattice trace_form_gram(const FracIdeal& j, const CycloElement& alpha, const BoundsConfig& cfg) {
  check_same(j.modulus(), alpha.modulus());
  check_alpha(alpha, cfg);
  RatMatrix g = gram_of(j, alpha);
  if (!is_positive_definite(g)) throw Error(ErrorCode::kNotPositiveDefinite, "trace form is not positive definite");
  return {j, alpha, std::move(g), IntMatrix{}};
}

FracIdeal ideal_dual(const TraceFormLattice& l) {
  const long m = l.ideal.modulus();
  FracIdeal module_dual =
      l.ideal.conj().inverse() * different(m).inverse() * FracIdeal::principal(l.alpha.inverse());
  RationalModule matrix_dual = module_basis(inverse(l.gram) * l.ideal.basis());
  if (matrix_dual.numerator != module_dual.numerator() || matrix_dual.denominator != module_dual.denominator())
    throw Error(ErrorCode::kPrecondition, "module dual differs from the matrix dual");
  return module_dual;
}

bool is_unimodular_pair(const FracIdeal& j, const CycloElement& alpha, const BoundsConfig& cfg) {
  check_same(j.modulus(), alpha.modulus());
  check_alpha(alpha, cfg);
  // (J conj J)^-1 Delta^-1 alpha^-1 = O  iff  J conj(J) Delta alpha = O.
  const long m = j.modulus();
  return j * j.conj() * different(m) * FracIdeal::principal(alpha) == FracIdeal::unit(m);
}

TraceFormLattice galois_transform(const TraceFormLattice& l, long g, const BoundsConfig& cfg) {
  const long m = l.ideal.modulus();
  if (std::gcd(((g % m) + m) % m, m) != 1 && m > 1)
    throw Error(ErrorCode::kInvalidArgument, "Galois exponent must be coprime to m");
  return transformed(
      l, l.ideal.galois(g), l.alpha.galois(g), [&](const CycloElement& x) { return x.galois(g); }, cfg);
}

TraceFormLattice unit_scale(const TraceFormLattice& l, const CycloElement& u, const BoundsConfig& cfg) {
  if (u.is_zero() || !u.is_integral() || !u.inverse().is_integral())
    throw Error(ErrorCode::kInvalidArgument, "not a unit of Z[zeta]");
  const CycloElement ui = u.inverse();
  return transformed(
      l, l.ideal, u * u.conj() * l.alpha, [&](const CycloElement& x) { return ui * x; }, cfg);
}

TraceFormLattice ideal_scale(const TraceFormLattice& l, const CycloElement& a, const BoundsConfig& cfg) {
  if (a.is_zero()) throw Error(ErrorCode::kInvalidArgument, "scaling element must be nonzero");
  const FracIdeal j2 = FracIdeal::principal(a) * l.ideal;
  return transformed(
      l, j2, l.alpha * (a * a.conj()).inverse(), [&](const CycloElement& x) { return a * x; }, cfg);
}

// ---- real embeddings ----

std::vector<long> real_embeddings(long m) {
  if (euler_phi(m) == 1) return {1};
  std::vector<long> out;
  for (long k = 1; 2 * k <= m; ++k)
    if (std::gcd(k, m) == 1) out.push_back(k);
  return out;
}

Interval embedding_real_part(const CycloElement& x, long k, mpfr_prec_t prec) {
  const long m = x.modulus();
  Interval acc = Interval::exact(0, prec);
  for (std::size_t j = 0; j < x.degree(); ++j) {
    if (x.coeffs()[j] == 0) continue;
    mpq_class r(k * static_cast<long>(j), m);
    r.canonicalize();
    acc = acc + Interval::exact(x.coeffs()[j], prec) * Interval::cos_2pi(r, prec);
  }
  return acc;
}

int embedding_sign(const CycloElement& x, long k, const BoundsConfig& cfg) {
  if (!x.is_real()) throw Error(ErrorCode::kInvalidArgument, "sign of a non-real element");
  if (x.is_zero()) return 0;
  return decide_with_escalation([&](mpfr_prec_t prec) { return embedding_real_part(x, k, prec).sign(); },
                                cfg.start_prec, cfg.max_prec);
}

bool is_totally_positive(const CycloElement& x, const BoundsConfig& cfg) {
  if (!x.is_real()) throw Error(ErrorCode::kInvalidArgument, "total positivity needs a real element");
  for (long k : real_embeddings(x.modulus()))
    if (embedding_sign(x, k, cfg) <= 0) return false;
  return true;
}

std::vector<std::vector<int>> sign_matrix(const std::vector<CycloElement>& units, const BoundsConfig& cfg) {
  std::vector<std::vector<int>> out;
  for (const auto& u : units) {
    std::vector<int> row;
    for (long k : real_embeddings(u.modulus())) row.push_back(embedding_sign(u, k, cfg) < 0 ? 1 : 0);
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<CycloElement> cyclotomic_units(long m) {
  long q = 0, n = m;
  for (long d = 2; d <= n; ++d)
    if (n % d == 0) {
      q = d;
      while (n % d == 0) n /= d;
      break;
    }
  const bool prime_power = q != 0 && n == 1;
  std::vector<CycloElement> out;
  const CycloElement one = CycloElement::one(m);
  const CycloElement base = one - CycloElement::zeta(m);
  for (long a = 1; 2 * a < m; ++a) {
    if (std::gcd(a, m) != 1) continue;
    CycloElement num = one - CycloElement::zeta(m, a);
    if (prime_power) {
      if (a == 1) continue;
      out.push_back(num * base.inverse());
    } else {
      out.push_back(num);
    }
  }
  return out;
}

std::optional<CycloElement> find_unimodular_alpha(const FracIdeal& j, const std::vector<CycloElement>& units,
                                                  const AlphaSearchConfig& cfg) {
  const long m = j.modulus();
  std::optional<CycloElement> beta;
  if (j == FracIdeal::unit(m)) beta = CycloElement::one(m);
  else
    for (const auto& b : j.basis_elements())
      if (FracIdeal::principal(b) == j) {
        beta = b;
        break;
      }
  if (!beta) return std::nullopt;
  const CycloElement base = (*beta * beta->conj() * derivative_at_zeta(m)).inverse();
  const long e = cfg.max_exponent;
  const std::size_t r = units.size();
  std::vector<long> ex(r, -e);
  while (true) {
    CycloElement u = base;
    for (std::size_t i = 0; i < r; ++i) u = u * units[i].pow(ex[i]);
    for (long k = 0; k < m; ++k) {
      CycloElement cand = CycloElement::zeta(m, k) * u;
      for (int sgn : {1, -1}) {
        CycloElement a = sgn > 0 ? cand : -cand;
        if (!a.is_real()) continue;
        if (!is_totally_positive(a, cfg.bounds)) continue;
        if (is_unimodular_pair(j, a, cfg.bounds)) return a;
      }
    }
    std::size_t i = 0;
    while (i < r && ex[i] == e) ex[i++] = -e;
    if (i == r) break;
    ++ex[i];
  }
  return std::nullopt;
}

}  // namespace latkit
