#pragma once

// Serialization of integral results, gamma tables and check reports as JSON,
// CSV or aligned text tables. JSON keeps full double precision; tables print
// 12 significant digits.

#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tscalc/properties.hpp"
#include "tscalc/quadrature.hpp"
#include "tscalc/timescale.hpp"

namespace tscalc {

enum class OutputFormat { table, json, csv };

struct GammaRow {
  double t = 0.0;
  PointClass cls = PointClass::dense;
  double sigma = 0.0;
  double rho = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  double gamma = 0.5;
};

inline GammaRow gamma_row(const TimeScale& ts, double t) {
  const Located p = ts.require(t);
  return {p.t, ts.classify(p), ts.sigma(p), ts.rho(p), ts.mu(p), ts.nu(p), ts.gamma(p)};
}

/// One row per segment bound (one per isolated point).
inline std::vector<GammaRow> gamma_table(const TimeScale& ts) {
  std::vector<GammaRow> rows;
  for (const auto& s : ts.segments()) {
    rows.push_back(gamma_row(ts, s.lo));
    if (!s.is_point()) rows.push_back(gamma_row(ts, s.hi));
  }
  return rows;
}

namespace detail {

inline std::string table_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

inline std::string table_line(const std::vector<std::string>& cells,
                              const std::vector<std::size_t>& widths) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i + 1 == cells.size()) {
      line += cells[i];
    } else {
      line += pad(cells[i], widths[i]) + "  ";
    }
  }
  return line + '\n';
}

inline std::string render_table(const std::vector<std::string>& header,
                                const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) widths[i] = header[i].size();
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) widths[i] = std::max(widths[i], r[i].size());
  }
  std::string out = table_line(header, widths);
  for (const auto& r : rows) out += table_line(r, widths);
  return out;
}

}  // namespace detail

inline nlohmann::json to_json(const IntegralResult& r) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& s : r.scattered_terms) {
    terms.push_back({{"t", s.t},
                     {"side", std::string(to_string(s.side))},
                     {"weight", s.weight},
                     {"contribution", s.contribution}});
  }
  return {{"value", r.value},
          {"err_estimate", r.err_estimate},
          {"continuous_part", r.continuous_part},
          {"discrete_part", r.discrete_part},
          {"scattered_terms", std::move(terms)}};
}

inline nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json w = nlohmann::json::object();
  for (const auto& x : r.witnesses) w[x.name] = x.value;
  nlohmann::json j = {{"name", r.name},         {"lhs", r.lhs},
                      {"rhs", r.rhs},           {"slack", r.slack},
                      {"tolerance", r.tolerance}, {"passed", r.passed},
                      {"witnesses", std::move(w)}};
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

inline nlohmann::json to_json(const std::vector<CheckReport>& checks) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) arr.push_back(to_json(c));
  return arr;
}

inline nlohmann::json to_json(const GammaRow& row) {
  return {{"t", row.t},     {"class", std::string(to_string(row.cls))},
          {"sigma", row.sigma}, {"rho", row.rho},
          {"mu", row.mu},   {"nu", row.nu},
          {"gamma", row.gamma}};
}

inline nlohmann::json to_json(const std::vector<GammaRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) arr.push_back(to_json(r));
  return arr;
}

inline std::string emit(const IntegralResult& r, OutputFormat fmt,
                        std::string_view kind = "") {
  using detail::table_real;
  switch (fmt) {
    case OutputFormat::json: {
      auto j = to_json(r);
      if (!kind.empty()) j["kind"] = std::string(kind);
      return j.dump(2) + '\n';
    }
    case OutputFormat::csv: {
      std::string out = "t,side,weight,contribution\n";
      for (const auto& s : r.scattered_terms) {
        out += detail::format_real(s.t) + ',' + std::string(to_string(s.side)) + ',' +
               detail::format_real(s.weight) + ',' + detail::format_real(s.contribution) + '\n';
      }
      return out;
    }
    case OutputFormat::table: {
      std::vector<std::vector<std::string>> head;
      if (!kind.empty()) head.push_back({"kind", std::string(kind)});
      head.push_back({"value", table_real(r.value)});
      head.push_back({"err_estimate", table_real(r.err_estimate)});
      head.push_back({"continuous_part", table_real(r.continuous_part)});
      head.push_back({"discrete_part", table_real(r.discrete_part)});
      std::string out;
      for (const auto& kv : head) out += detail::pad(kv[0], 17) + kv[1] + '\n';
      if (!r.scattered_terms.empty()) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& s : r.scattered_terms) {
          rows.push_back({table_real(s.t), std::string(to_string(s.side)), table_real(s.weight),
                          table_real(s.contribution)});
        }
        out += '\n' + detail::render_table({"t", "side", "weight", "contribution"}, rows);
      }
      return out;
    }
  }
  return {};
}

inline std::string emit(const std::vector<GammaRow>& rows, OutputFormat fmt) {
  using detail::table_real;
  switch (fmt) {
    case OutputFormat::json: return to_json(rows).dump(2) + '\n';
    case OutputFormat::csv: {
      std::string out = "t,class,sigma,rho,mu,nu,gamma\n";
      for (const auto& r : rows) {
        out += detail::format_real(r.t) + ',' + std::string(to_string(r.cls)) + ',' +
               detail::format_real(r.sigma) + ',' + detail::format_real(r.rho) + ',' +
               detail::format_real(r.mu) + ',' + detail::format_real(r.nu) + ',' +
               detail::format_real(r.gamma) + '\n';
      }
      return out;
    }
    case OutputFormat::table: {
      std::vector<std::vector<std::string>> cells;
      for (const auto& r : rows) {
        cells.push_back({table_real(r.t), std::string(to_string(r.cls)), table_real(r.sigma),
                         table_real(r.rho), table_real(r.mu), table_real(r.nu),
                         table_real(r.gamma)});
      }
      return detail::render_table({"t", "class", "sigma", "rho", "mu", "nu", "gamma"}, cells);
    }
  }
  return {};
}

inline std::string emit(const std::vector<CheckReport>& checks, OutputFormat fmt) {
  using detail::table_real;
  switch (fmt) {
    case OutputFormat::json: return to_json(checks).dump(2) + '\n';
    case OutputFormat::csv: {
      std::string out = "name,lhs,rhs,slack,tolerance,passed\n";
      for (const auto& c : checks) {
        out += c.name + ',' + detail::format_real(c.lhs) + ',' + detail::format_real(c.rhs) +
               ',' + detail::format_real(c.slack) + ',' + detail::format_real(c.tolerance) + ',' +
               (c.passed ? "true" : "false") + '\n';
      }
      return out;
    }
    case OutputFormat::table: {
      std::vector<std::vector<std::string>> cells;
      for (const auto& c : checks) {
        cells.push_back({c.name, table_real(c.lhs), table_real(c.rhs), table_real(c.slack),
                         table_real(c.tolerance), c.passed ? "pass" : "FAIL"});
      }
      return detail::render_table({"check", "lhs", "rhs", "slack", "tolerance", "result"}, cells);
    }
  }
  return {};
}

}  // namespace tscalc
