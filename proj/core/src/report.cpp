#include <cmath>
#include <cstdio>
#include <string>

#include "charsum/verify.hpp"
#include "json.hpp"

namespace charsum::verify {

namespace {

using json = nlohmann::json;

// NaN and infinities have no JSON literal; they become null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string to_json(const TheoremReport& r) {
  json j;
  j["theorem"] = r.theorem;
  j["x"] = r.x;
  j["tau"] = number(r.tau);
  j["members"] = r.members;
  j["vacuous"] = r.vacuous;
  j["hard_pass"] = r.hard_pass();
  j["soft_pass"] = r.soft_pass();
  json params = json::object();
  for (const auto& [k, v] : r.parameters) params[k] = number(v);
  j["parameters"] = params;
  json sums = json::array();
  for (const auto& s : r.summaries)
    sums.push_back({{"name", s.name},
                    {"count", s.count},
                    {"median", number(s.median)},
                    {"max", number(s.max)},
                    {"mean", number(s.mean)}});
  j["summaries"] = sums;
  json asserts = json::array();
  for (const auto& a : r.assertions)
    asserts.push_back({{"name", a.name},
                       {"kind", a.hard ? "hard" : "soft"},
                       {"value", number(a.value)},
                       {"relation", a.relation},
                       {"threshold", number(a.threshold)},
                       {"pass", a.pass}});
  j["assertions"] = asserts;
  j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

std::string to_text(const TheoremReport& r) {
  std::string out;
  char line[512];
  std::snprintf(line, sizeof line, "theorem %s  x=%llu  tau=%s  members=%zu%s\n", r.theorem.c_str(),
                static_cast<unsigned long long>(r.x), fmt(r.tau).c_str(), r.members, r.vacuous ? "  (vacuous)" : "");
  out += line;
  out += "parameters:\n";
  for (const auto& [k, v] : r.parameters) {
    std::snprintf(line, sizeof line, "  %-40s %s\n", k.c_str(), fmt(v).c_str());
    out += line;
  }
  if (!r.summaries.empty()) {
    std::snprintf(line, sizeof line, "%-52s %8s %12s %12s %12s\n", "summary", "count", "median", "max", "mean");
    out += line;
    for (const auto& s : r.summaries) {
      std::snprintf(line, sizeof line, "%-52s %8zu %12s %12s %12s\n", s.name.c_str(), s.count, fmt(s.median).c_str(),
                    fmt(s.max).c_str(), fmt(s.mean).c_str());
      out += line;
    }
  }
  for (const auto& a : r.assertions) {
    std::snprintf(line, sizeof line, "%s [%s] %s: %s %s %s\n", a.pass ? "PASS" : "FAIL", a.hard ? "hard" : "soft",
                  a.name.c_str(), fmt(a.value).c_str(), a.relation.c_str(), fmt(a.threshold).c_str());
    out += line;
  }
  for (const auto& n : r.notes) out += "note: " + n + "\n";
  return out;
}

std::string to_json(const DistributionTable& t) {
  json j;
  j["x"] = t.x;
  j["family"] = family_name(t.family);
  j["total"] = t.total;
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"tau", number(r.tau)},
                    {"count", r.count},
                    {"psi", number(r.psi)},
                    {"lower_main", number(r.lower_main)},
                    {"upper_main", number(r.upper_main)}});
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

std::string to_text(const DistributionTable& t) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "family=%s  x=%llu  total=%zu\n", family_name(t.family),
                static_cast<unsigned long long>(t.x), t.total);
  out += line;
  std::snprintf(line, sizeof line, "%8s %10s %12s %12s %12s\n", "tau", "count", "psi", "lower_main", "upper_main");
  out += line;
  for (const auto& r : t.rows) {
    std::snprintf(line, sizeof line, "%8s %10zu %12s %12s %12s\n", fmt(r.tau).c_str(), r.count, fmt(r.psi).c_str(),
                  fmt(r.lower_main).c_str(), fmt(r.upper_main).c_str());
    out += line;
  }
  return out;
}

}  // namespace charsum::verify
