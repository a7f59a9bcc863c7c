#include "latkit/bounds.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

namespace latkit {

namespace {

mpq_class qpow(const mpq_class& q, unsigned long e) {
  mpq_class r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
  r.canonicalize();
  return r;
}

mpz_class factorial(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

long parse_long(const std::string& s, const std::string& what) {
  static const std::regex int_re("-?[0-9]+");
  if (!std::regex_match(s, int_re)) throw Error(ErrorCode::kParse, "bad " + what + ": '" + s + "'");
  return std::stol(s);
}

mpq_class parse_number(const std::string& s) {
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, s.size() - dot - 1);
    mpq_class q(mpz_class(digits), den);
    q.canonicalize();
    return q;
  }
  mpq_class q(s);
  q.canonicalize();
  return q;
}

// q_power <= value^d for value = root^(1/k): q_power^k <= root^d.
bool entry_holds(const mpq_class& q_power, const mpq_class& root, unsigned long k, long d) {
  return qpow(q_power, k) <= qpow(root, static_cast<unsigned long>(d));
}

// Sign of B(d)^(dk) - r^d, decided on intervals (exactly for d = 1).
int compare_power_with_blichfeldt(const mpq_class& r, unsigned long k, long d, const BoundsConfig& cfg) {
  if (d == 1) {
    mpq_class lhs = qpow(mpq_class(9, 8), k);
    return lhs > r ? 1 : (lhs < r ? -1 : 0);
  }
  const mpq_class rd = qpow(r, static_cast<unsigned long>(d));
  return decide_with_escalation(
      [&](mpfr_prec_t prec) { return blichfeldt_power_interval(d, prec).pow(k).compare(rd); }, cfg.start_prec,
      cfg.max_prec);
}

}  // namespace

// ---- Blichfeldt and the Hermite function ----

Interval blichfeldt_power_interval(long d, mpfr_prec_t prec) {
  if (d < 1) throw Error(ErrorCode::kInvalidArgument, "Blichfeldt bound needs d >= 1");
  Interval two_over_pi = Interval::exact(2, prec) / Interval::pi(prec);
  mpq_class arg(4 + d, 2);
  arg.canonicalize();
  Interval g = Interval::gamma(arg, prec);
  return two_over_pi.pow(static_cast<unsigned long>(d)) * g * g;
}

Interval blichfeldt_interval(long d, mpfr_prec_t prec) {
  if (d == 1) return Interval::exact(mpq_class(9, 8), prec);
  return blichfeldt_power_interval(d, prec).root(static_cast<unsigned long>(d));
}

double blichfeldt(long d) { return blichfeldt_interval(d, 128).upper(); }

Interval hermite_fn_interval(const mpq_class& min, const mpq_class& det, long d, mpfr_prec_t prec) {
  if (det <= 0) throw Error(ErrorCode::kInvalidArgument, "determinant must be positive");
  if (d < 1) throw Error(ErrorCode::kInvalidArgument, "dimension must be positive");
  return Interval::exact(min, prec) / Interval::exact(det, prec).root(static_cast<unsigned long>(d));
}

double hermite_fn(const mpq_class& min, const mpq_class& det, long d) {
  return hermite_fn_interval(min, det, d, 128).lower();
}

bool within_blichfeldt(const mpq_class& q_power, long d, const BoundsConfig& cfg) {
  if (d == 1) return q_power <= mpq_class(9, 8);
  // Equality would make a power of pi rational, so overlap always resolves.
  int c = decide_with_escalation(
      [&](mpfr_prec_t prec) { return blichfeldt_power_interval(d, prec).compare(q_power); }, cfg.start_prec,
      cfg.max_prec);
  return c > 0;
}

bool within_entry(const mpq_class& q_power, const BoundEntry& e) { return entry_holds(q_power, e.root, e.k, e.d); }

// ---- bound tables ----

BoundTable BoundTable::parse(const std::string& text, const BoundsConfig& cfg) {
  static const std::regex value_re(R"(([0-9]+(?:/[0-9]+|\.[0-9]+)?)(?:\^\(1/([0-9]+)\))?)");
  BoundTable t;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokens(strip_comment(line));
    if (tok.empty()) continue;
    const std::string where = "bound table line " + std::to_string(lineno);
    if (tok.size() != 3) throw Error(ErrorCode::kParse, where + ": expected 'd value provenance'");
    BoundEntry e;
    e.d = parse_long(tok[0], "dimension");
    if (e.d < 1) throw Error(ErrorCode::kParse, where + ": dimension must be positive");
    std::smatch mt;
    if (!std::regex_match(tok[1], mt, value_re)) throw Error(ErrorCode::kParse, where + ": bad value " + tok[1]);
    e.root = parse_number(mt[1].str());
    e.k = mt[2].matched ? std::stoul(mt[2].str()) : 1;
    if (e.root <= 0 || e.k == 0) throw Error(ErrorCode::kParse, where + ": value must be positive");
    e.provenance = tok[2];
    e.text = tok[1];
    if (compare_power_with_blichfeldt(e.root, e.k, e.d, cfg) <= 0)
      throw Error(ErrorCode::kInvalidArgument,
                  where + ": entry " + e.text + " does not improve on Blichfeldt for d=" + std::to_string(e.d));
    if (t.entries_.count(e.d)) throw Error(ErrorCode::kParse, where + ": duplicate dimension");
    t.entries_[e.d] = e;
  }
  return t;
}

BoundTable BoundTable::load(const std::string& path, const BoundsConfig& cfg) { return parse(slurp(path), cfg); }

BoundTable BoundTable::known_exact() {
  return parse(
      "1 1 known-exact\n"
      "2 4/3^(1/2) known-exact\n"
      "3 2^(1/3) known-exact\n"
      "4 4^(1/4) known-exact\n"
      "5 8^(1/5) known-exact\n"
      "6 64/3^(1/6) known-exact\n"
      "7 64^(1/7) known-exact\n"
      "8 2 known-exact\n"
      "24 4 known-exact\n");
}

void BoundTable::merge(const BoundTable& other) {
  for (const auto& [d, e] : other.entries_) {
    auto it = entries_.find(d);
    if (it == entries_.end()) {
      entries_[d] = e;
      continue;
    }
    const BoundEntry& cur = it->second;
    // e < cur  iff  e.root^cur.k < cur.root^e.k
    if (qpow(e.root, cur.k) < qpow(cur.root, e.k)) it->second = e;
  }
}

const BoundEntry* BoundTable::find(long d) const {
  auto it = entries_.find(d);
  return it == entries_.end() ? nullptr : &it->second;
}

// ---- rules ----

bool RuleField::matches(long v) const {
  if (any) return true;
  for (auto [lo, hi] : ranges)
    if (lo <= v && v <= hi) return true;
  return false;
}

bool Rule::matches(const AutType& t, long n) const {
  if (dim != 0 && dim != n) return false;
  return p.matches(t.p) && z.matches(t.z) && f.matches(t.f) && s.matches(t.s);
}

namespace {

RuleField parse_field(const std::string& text, const std::string& where) {
  RuleField f;
  if (text == "*") return f;
  f.any = false;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto dots = item.find("..");
    if (dots == std::string::npos) {
      long v = parse_long(item, where + " field");
      f.ranges.emplace_back(v, v);
    } else {
      long lo = parse_long(item.substr(0, dots), where + " field");
      long hi = parse_long(item.substr(dots + 2), where + " field");
      if (lo > hi) throw Error(ErrorCode::kParse, where + ": empty range " + item);
      f.ranges.emplace_back(lo, hi);
    }
  }
  if (f.ranges.empty()) throw Error(ErrorCode::kParse, where + ": empty field");
  return f;
}

}  // namespace

RuleSet RuleSet::parse(const std::string& text) {
  RuleSet rs;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  long dim = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokens(strip_comment(line));
    if (tok.empty()) continue;
    const std::string where = "rule line " + std::to_string(lineno);
    if (tok[0] == "dim") {
      if (tok.size() != 2) throw Error(ErrorCode::kParse, where + ": expected 'dim N'");
      dim = tok[1] == "*" ? 0 : parse_long(tok[1], "dimension");
      continue;
    }
    Rule r;
    if (tok[0] == "exclude") r.kind = Rule::Kind::kExclude;
    else if (tok[0] == "needs-bound") r.kind = Rule::Kind::kNeedsBound;
    else throw Error(ErrorCode::kParse, where + ": unknown directive " + tok[0]);
    if (tok.size() < 6) throw Error(ErrorCode::kParse, where + ": expected 'kind p z f s reason citation'");
    r.dim = dim;
    r.p = parse_field(tok[1], where);
    r.z = parse_field(tok[2], where);
    r.f = parse_field(tok[3], where);
    r.s = parse_field(tok[4], where);
    r.reason = tok[5];
    for (std::size_t i = 6; i < tok.size(); ++i) r.citation += (i > 6 ? " " : "") + tok[i];
    rs.rules_.push_back(std::move(r));
  }
  return rs;
}

RuleSet RuleSet::load(const std::string& path) { return parse(slurp(path)); }

// ---- type enumeration ----

std::vector<TypeCandidate> enumerate_types(long m, const BoundTable& table, const RuleSet& rules,
                                           const BoundsConfig& cfg) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be positive");
  const long n = 24 * m;
  const mpq_class mu(2 * m + 2);
  std::vector<TypeCandidate> out;

  auto density = [&](const char* side, long d, long p, long s, std::vector<std::string>& reasons) {
    mpz_class ps;
    mpz_ui_pow_ui(ps.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(s));
    mpq_class q = qpow(mu, static_cast<unsigned long>(d)) / mpq_class(ps);
    if (!within_blichfeldt(q, d, cfg)) {
      reasons.push_back(std::string("bound:") + side + ":blichfeldt");
      return;
    }
    if (const BoundEntry* e = table.find(d); e && !within_entry(q, *e))
      reasons.push_back(std::string("bound:") + side + ":" + e->provenance);
  };

  for (long p = n + 1; p >= 2; --p) {
    if (!is_prime(p)) continue;
    for (long z = 1; z * (p - 1) <= n; ++z) {
      const long f = n - z * (p - 1);
      for (long s = std::min(z, f); s >= 0; --s) {
        TypeCandidate c;
        c.type = {p, z, f, s};
        c.m = m;
        for (auto& name : check_constraints(c.type, true)) c.exclusion_reasons.push_back("constraint:" + name);
        if (f > 0) density("fixed", f, p, s, c.exclusion_reasons);
        density("image", z * (p - 1), p, s, c.exclusion_reasons);
        std::vector<std::string> needs;
        for (const Rule& r : rules.rules()) {
          if (!r.matches(c.type, n)) continue;
          if (r.kind == Rule::Kind::kExclude) c.exclusion_reasons.push_back("rule:" + r.reason);
          else needs.push_back(r.reason);
        }
        c.survives_bounds = c.exclusion_reasons.empty();
        if (c.survives_bounds)
          for (auto& reason : needs) c.annotations.push_back("needs-stronger-bound:" + reason);
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

std::vector<TypeCandidate> survivors(const std::vector<TypeCandidate>& all) {
  std::vector<TypeCandidate> out;
  std::copy_if(all.begin(), all.end(), std::back_inserter(out), [](const TypeCandidate& c) { return c.survives_bounds; });
  return out;
}

// ---- the two inequalities for a single irreducible constituent ----

namespace {

// Sign-decides (pi(m+1))^(2a) <= rhs.
bool pi_power_at_most(long m, long a, const mpz_class& rhs, const BoundsConfig& cfg) {
  const mpq_class r(rhs);
  int c = decide_with_escalation(
      [&](mpfr_prec_t prec) {
        Interval lhs = (Interval::pi(prec) * Interval::exact(m + 1, prec)).pow(static_cast<unsigned long>(2 * a));
        return lhs.compare(r);
      },
      cfg.start_prec, cfg.max_prec);
  return c < 0;
}

}  // namespace

bool star_inequality_check(long m, long p, const BoundsConfig& cfg) {
  if (p < 3 || p % 2 == 0) throw Error(ErrorCode::kInvalidArgument, "star inequality needs an odd p >= 3");
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be positive");
  const long a = (p - 1) / 2;
  mpz_class fa = factorial(static_cast<unsigned long>(a));
  mpz_class rhs = mpz_class(2 * a + 1) * (a + 1) * (a + 1) * fa * fa;
  return pi_power_at_most(m, a, rhs, cfg);
}

bool starstar_inequality_check(long m, long a, const BoundsConfig& cfg) {
  if (a < 1) throw Error(ErrorCode::kInvalidArgument, "a must be positive");
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be positive");
  const long p = 24 * m - 2 * a + 1;
  if (p < 2) throw Error(ErrorCode::kInvalidArgument, "24m - 2a + 1 must be at least 2");
  mpz_class fa = factorial(static_cast<unsigned long>(a + 1));
  mpz_class rhs = mpz_class(p) * fa * fa;
  return pi_power_at_most(m, a, rhs, cfg);
}

}  // namespace latkit
