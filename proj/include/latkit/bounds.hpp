#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <map>
#include <string>
#include <vector>

#include "latkit/auto_type.hpp"
#include "latkit/exact_linear.hpp"
#include "latkit/interval.hpp"

namespace latkit {

struct BoundsConfig {
  mpfr_prec_t start_prec = 64;
  mpfr_prec_t max_prec = 8192;
};

// Upper bound on gamma_d written as root^(1/k) with rational root;
// plain rationals and decimals have k = 1.
struct BoundEntry {
  long d = 0;
  mpq_class root;
  unsigned long k = 1;
  std::string provenance;  // "known-exact" | "external-table" | ...
  std::string text;        // value as written
};

class BoundTable {
 public:
  BoundTable() = default;
  // Lines "d value provenance"; value is "a", "a/b", "1.234" or any of
  // these followed by "^(1/k)". '#' starts a comment. Entries that do not
  // improve on Blichfeldt are rejected (kInvalidArgument); syntax errors
  // are kParse.
  static BoundTable parse(const std::string& text, const BoundsConfig& cfg = {});
  static BoundTable load(const std::string& path, const BoundsConfig& cfg = {});
  // Exact Hermite constants for d <= 8 and d = 24.
  static BoundTable known_exact();

  // Keeps the smaller bound per dimension.
  void merge(const BoundTable& other);
  const BoundEntry* find(long d) const;
  const std::map<long, BoundEntry>& entries() const { return entries_; }

 private:
  std::map<long, BoundEntry> entries_;
};

// B(d) = (2/pi) Gamma(2 + d/2)^(2/d).
Interval blichfeldt_interval(long d, mpfr_prec_t prec);
// B(d)^d = (2/pi)^d Gamma(2 + d/2)^2.
Interval blichfeldt_power_interval(long d, mpfr_prec_t prec);
// Upper end of B(d) rounded up.
double blichfeldt(long d);

// min / det^(1/d) as an interval; hermite_fn returns its lower end.
Interval hermite_fn_interval(const mpq_class& min, const mpq_class& det, long d, mpfr_prec_t prec);
double hermite_fn(const mpq_class& min, const mpq_class& det, long d);

// True when a d-dimensional lattice with min^d / det = q_power could exist
// under the Blichfeldt bound, i.e. q_power <= B(d)^d. Decided on disjoint
// intervals only; throws kUndecidable.
bool within_blichfeldt(const mpq_class& q_power, long d, const BoundsConfig& cfg = {});
// Same against a table entry, exactly.
bool within_entry(const mpq_class& q_power, const BoundEntry& e);

// Field values: '*' or a list of integers and ranges "a..b" joined by ','.
struct RuleField {
  bool any = true;
  std::vector<std::pair<long, long>> ranges;
  bool matches(long v) const;
};

struct Rule {
  enum class Kind { kExclude, kNeedsBound };
  Kind kind = Kind::kExclude;
  long dim = 0;  // 0: all dimensions
  RuleField p, z, f, s;
  std::string reason;
  std::string citation;
  bool matches(const AutType& t, long dim) const;
};

class RuleSet {
 public:
  RuleSet() = default;
  // "dim N" scopes the following rules ("dim *" resets). Throws kParse.
  static RuleSet parse(const std::string& text);
  static RuleSet load(const std::string& path);
  const std::vector<Rule>& rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }

 private:
  std::vector<Rule> rules_;
};

struct TypeCandidate {
  AutType type;
  long m = 0;
  // Holds exactly when exclusion_reasons is empty.
  bool survives_bounds = true;
  std::vector<std::string> exclusion_reasons;
  std::vector<std::string> annotations;
};

// Every (p,z,f,s) with p prime <= 24m+1, z >= 1, f + z(p-1) = 24m and
// 0 <= s <= min(z,f), in canonical order (p descending, z ascending,
// s descending), with exclusion provenance:
//   constraint:<name>        parity rules for unimodular lattices
//   bound:fixed:<prov>       density of F with det p^s, min 2m+2
//   bound:image:<prov>       same for Z
//   rule:<reason>            matching exclude rule
// A matching needs-bound rule on a candidate that survives everything
// else adds the annotation "needs-stronger-bound:<reason>".
std::vector<TypeCandidate> enumerate_types(long m, const BoundTable& table, const RuleSet& rules,
                                           const BoundsConfig& cfg = {});
std::vector<TypeCandidate> survivors(const std::vector<TypeCandidate>& all);

// (pi(m+1))^(2a) <= (2a+1)(a+1)^2 (a!)^2 with a = (p-1)/2; true means not excluded.
bool star_inequality_check(long m, long p, const BoundsConfig& cfg = {});
// (pi(m+1))^(2a) <= p ((a+1)!)^2 with p = 24m - 2a + 1.
bool starstar_inequality_check(long m, long a, const BoundsConfig& cfg = {});

}  // namespace latkit
