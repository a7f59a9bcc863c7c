#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "latkit/bounds.hpp"

namespace golden {

inline std::vector<std::string> lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

inline std::pair<long, long> range(const std::string& t) {
  auto dots = t.find("..");
  if (dots == std::string::npos) return {std::stol(t), std::stol(t)};
  return {std::stol(t.substr(0, dots)), std::stol(t.substr(dots + 2))};
}

// Expands "p z f s" lines; '*' in f means 24m - z(p-1); '*' in s takes
// every s of the reference set with the same p, z.
inline std::set<latkit::AutType> expand_types(const std::string& path, long m,
                                             const std::vector<latkit::TypeCandidate>& reference) {
  std::set<latkit::AutType> out;
  for (const auto& line : lines(path)) {
    std::istringstream ss(line);
    std::string ps, zs, fs, ss_;
    ss >> ps >> zs >> fs >> ss_;
    long p = std::stol(ps);
    auto [zlo, zhi] = range(zs);
    for (long z = zlo; z <= zhi; ++z) {
      long f = 24 * m - z * (p - 1);
      if (fs != "*" && std::stol(fs) != f) throw std::runtime_error("inconsistent golden line: " + line);
      if (ss_ == "*") {
        bool any = false;
        for (const auto& c : reference)
          if (c.type.p == p && c.type.z == z) {
            out.insert(c.type);
            any = true;
          }
        if (!any) out.insert({p, z, f, -1});  // forces a mismatch
      } else {
        out.insert({p, z, f, std::stol(ss_)});
      }
    }
  }
  return out;
}

struct HighExpectation {
  long m;
  latkit::AutType type;
  std::string expect;
};

inline std::vector<HighExpectation> high_expectations(const std::string& path) {
  std::vector<HighExpectation> out;
  for (const auto& line : lines(path)) {
    std::istringstream ss(line);
    HighExpectation h;
    std::string t;
    ss >> h.m >> t >> h.expect;
    h.type = latkit::parse_type(t);
    out.push_back(h);
  }
  return out;
}

inline const latkit::TypeCandidate* find(const std::vector<latkit::TypeCandidate>& all, const latkit::AutType& t) {
  for (const auto& c : all)
    if (c.type == t) return &c;
  return nullptr;
}

// Checks one expectation against a bounds-only run and a run with rules.
inline bool check_high(const HighExpectation& h, const std::vector<latkit::TypeCandidate>& bounds_only,
                       const std::vector<latkit::TypeCandidate>& with_rules, std::string& why) {
  const auto* b = find(bounds_only, h.type);
  const auto* r = find(with_rules, h.type);
  if (!b || !r) {
    why = "type not enumerated";
    return false;
  }
  if (!b->survives_bounds) {
    why = "excluded by bounds: " + b->exclusion_reasons.front();
    return false;
  }
  if (h.expect == "survive") {
    if (!r->survives_bounds) why = "excluded by " + r->exclusion_reasons.front();
    return r->survives_bounds;
  }
  if (h.expect.rfind("rule:", 0) == 0) {
    bool ok = r->exclusion_reasons == std::vector<std::string>{h.expect};
    if (!ok) why = "unexpected provenance";
    return ok;
  }
  if (h.expect.rfind("needs-bound:", 0) == 0) {
    std::string want = "needs-stronger-bound:" + h.expect.substr(12);
    bool ok = r->survives_bounds && r->annotations == std::vector<std::string>{want};
    if (!ok) why = "missing annotation";
    return ok;
  }
  why = "unknown expectation " + h.expect;
  return false;
}

}  // namespace golden
