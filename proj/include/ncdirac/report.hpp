#pragma once

// Check reports and their deterministic JSON/CSV serialization.

#include "ncdirac/scalars.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ncdirac {

using Json = nlohmann::json;  // std::map objects: keys come out sorted

/// Double rounded to 15 significant digits; non-finite values become null.
inline Json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

inline std::string format_number(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

/// Exact value as {"exact": "p/q", "value": decimal}.
inline Json json_exact(const Rational& q) { return Json{{"exact", q.get_str()}, {"value", json_number(q.get_d())}}; }

inline Json json_exact(const ExactScalar& z) {
  if (z.is_real()) return json_exact(z.re());
  return Json{{"exact", z.str()}, {"re", json_number(z.re().get_d())}, {"im", json_number(z.im().get_d())}};
}

struct CheckReport {
  std::string check;
  std::string anchor;
  Json params = Json::object();
  bool pass = false;
  std::optional<double> residual;  // null when the check has no scalar residual
  double tolerance = 0.0;          // 0 for exact checks
  Json details = Json::object();
  std::optional<double> duration_ms;

  Json to_json() const {
    Json j{{"check", check},
           {"anchor", anchor},
           {"params", params},
           {"status", pass ? "pass" : "fail"},
           {"residual", residual ? json_number(*residual) : Json(nullptr)},
           {"tolerance", json_number(tolerance)},
           {"details", details}};
    if (duration_ms) j["duration_ms"] = json_number(*duration_ms);
    return j;
  }
};

/// Exact check: pass iff the number of nonzero residual items is zero.
inline CheckReport exact_report(std::string check, std::string anchor, Json params, std::size_t failures,
                                Json details = Json::object()) {
  CheckReport r;
  r.check = std::move(check);
  r.anchor = std::move(anchor);
  r.params = std::move(params);
  r.pass = failures == 0;
  r.residual = static_cast<double>(failures);
  r.details = std::move(details);
  return r;
}

/// Float check: pass iff residual <= tolerance (NaN fails).
inline CheckReport tolerance_report(std::string check, std::string anchor, Json params, double residual,
                                    double tolerance, Json details = Json::object()) {
  CheckReport r;
  r.check = std::move(check);
  r.anchor = std::move(anchor);
  r.params = std::move(params);
  r.pass = residual <= tolerance;
  r.residual = residual;
  r.tolerance = tolerance;
  r.details = std::move(details);
  return r;
}

inline void sort_reports(std::vector<CheckReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const CheckReport& a, const CheckReport& b) {
    if (a.check != b.check) return a.check < b.check;
    return a.params.dump() < b.params.dump();
  });
}

inline bool all_pass(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; });
}

/// One JSON document per run.
inline Json run_document(const std::string& command, const Json& config, std::vector<CheckReport> reports) {
  sort_reports(reports);
  Json list = Json::array();
  std::size_t failed = 0;
  for (const auto& r : reports) {
    list.push_back(r.to_json());
    if (!r.pass) ++failed;
  }
  return Json{{"command", command},
              {"config", config},
              {"reports", list},
              {"status", failed == 0 ? "pass" : "fail"},
              {"summary", {{"total", reports.size()}, {"passed", reports.size() - failed}, {"failed", failed}}}};
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return csv_field(v.get<std::string>());
  if (v.is_number_float()) return format_number(v.get<double>());
  return csv_field(v.dump());
}

/// Table with a fixed column order; missing cells are left empty.
inline std::string to_csv(const std::vector<std::string>& columns, const std::vector<Json>& rows) {
  std::ostringstream out;
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << csv_field(columns[c]);
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << (c ? "," : "");
      if (row.contains(columns[c])) out << csv_cell(row.at(columns[c]));
    }
    out << "\n";
  }
  return out.str();
}

inline std::string reports_to_csv(std::vector<CheckReport> reports) {
  sort_reports(reports);
  std::vector<Json> rows;
  for (const auto& r : reports) {
    Json j = r.to_json();
    j["params"] = r.params.dump();
    rows.push_back(j);
  }
  return to_csv({"check", "params", "status", "residual", "tolerance", "anchor"}, rows);
}

}  // namespace ncdirac
