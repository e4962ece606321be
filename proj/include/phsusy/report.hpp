#pragma once

#include <algorithm>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

namespace phsusy {

using ordered_json = nlohmann::ordered_json;

// One verified identity. `paper_anchor` is the stable anchor id of the
// identity in the report schema (e.g. "Eq-0333"); downstream tooling keys on
// it, so it is data, not commentary.
struct CheckResult {
  std::string suite;
  std::string check_id;
  std::string paper_anchor;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

inline CheckResult make_check(std::string suite, std::string check_id, std::string anchor,
                              double residual, double tolerance) {
  const bool ok = residual == residual && residual <= tolerance;  // NaN fails
  return CheckResult{std::move(suite), std::move(check_id), std::move(anchor), residual,
                     tolerance, ok};
}

struct Report {
  ordered_json config = ordered_json::object();
  std::vector<CheckResult> checks;

  void add(CheckResult c) { checks.push_back(std::move(c)); }

  void add_all(const std::vector<CheckResult>& cs) {
    checks.insert(checks.end(), cs.begin(), cs.end());
  }

  void sort_checks() {
    std::stable_sort(checks.begin(), checks.end(), [](const CheckResult& a, const CheckResult& b) {
      return std::tie(a.suite, a.check_id) < std::tie(b.suite, b.check_id);
    });
  }

  int failures() const {
    int n = 0;
    for (const auto& c : checks)
      if (!c.pass) ++n;
    return n;
  }
};

// Shortest round-trip decimal form, identical to the JSON rendering, so the
// two output formats always print the same digits for the same bits.
inline std::string number_repr(double v) { return ordered_json(v).dump(); }

inline ordered_json report_to_json(const Report& r) {
  Report sorted = r;
  sorted.sort_checks();
  ordered_json out = ordered_json::object();
  out["config"] = r.config;
  ordered_json arr = ordered_json::array();
  for (const auto& c : sorted.checks) {
    ordered_json row = ordered_json::object();
    row["suite"] = c.suite;
    row["check_id"] = c.check_id;
    row["paper_anchor"] = c.paper_anchor;
    row["residual"] = c.residual;
    row["tolerance"] = c.tolerance;
    row["pass"] = c.pass;
    arr.push_back(std::move(row));
  }
  out["checks"] = std::move(arr);
  out["summary"] = {{"total", sorted.checks.size()},
                    {"failed", r.failures()}};
  return out;
}

// RFC 4180: CRLF record separators, quotes doubled, fields quoted when they
// contain a comma, quote, or line break.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += "\r\n";
  return out;
}

inline std::string report_to_csv(const Report& r) {
  Report sorted = r;
  sorted.sort_checks();
  std::string out = csv_row({"suite", "check_id", "paper_anchor", "residual", "tolerance", "pass"});
  for (const auto& c : sorted.checks)
    out += csv_row({c.suite, c.check_id, c.paper_anchor, number_repr(c.residual),
                    number_repr(c.tolerance), c.pass ? "true" : "false"});
  return out;
}

}  // namespace phsusy
