#pragma once

// Command-line front end: integrate, derive, gamma-table, verify, compare.
//
// Exit status: 0 on success, 1 on domain errors (or failed checks in
// verify), 2 on usage and parse errors.

#include <cstdint>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tscalc/calculus.hpp"
#include "tscalc/error.hpp"
#include "tscalc/expr.hpp"
#include "tscalc/generators.hpp"
#include "tscalc/properties.hpp"
#include "tscalc/quadrature.hpp"
#include "tscalc/report.hpp"
#include "tscalc/timescale.hpp"

namespace tscalc::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_domain = 1;
inline constexpr int exit_usage = 2;

namespace detail {

struct Options {
  std::string scale;
  std::string func;
  std::string gfunc;
  double from = 0.0;
  double to = 0.0;
  double at = 0.0;
  std::vector<double> at_points;
  std::string kind = "diamond";
  std::optional<double> alpha;
  std::string output = "table";
  std::optional<double> tol;
  std::optional<int> max_depth;
  std::uint64_t seed = 0;
  int trials = 100;
  std::optional<double> c;
  double lambda = 2.0;
  double p = 2.0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  return OutputFormat::table;
}

inline IntegralKind parse_kind(const std::string& s) {
  if (s == "delta") return IntegralKind::delta;
  if (s == "nabla") return IntegralKind::nabla;
  if (s == "diamond-alpha") return IntegralKind::diamond_alpha;
  return IntegralKind::diamond;
}

inline QuadConfig quad_config(const Options& o) {
  QuadConfig cfg;
  if (o.tol) cfg.rel_tol = *o.tol;
  if (o.max_depth) cfg.max_depth = *o.max_depth;
  return cfg;
}

inline void check_alpha_flag(const Options& o, bool alpha_kind) {
  if (alpha_kind && !o.alpha) throw UsageError("--alpha is required with --kind diamond-alpha");
  if (!alpha_kind && o.alpha) throw UsageError("--alpha is only valid with --kind diamond-alpha");
}

inline int do_integrate(const Options& o, std::ostream& out) {
  const IntegralKind kind = parse_kind(o.kind);
  check_alpha_flag(o, kind == IntegralKind::diamond_alpha);
  const TimeScale ts = parse_scale(o.scale);
  const FuncExpr f = parse_func(o.func);
  const auto r = integrate(ts, f, o.from, o.to, kind, o.alpha.value_or(0.5), quad_config(o));
  out << emit(r, parse_format(o.output), to_string(kind));
  return exit_ok;
}

inline int do_derive(const Options& o, std::ostream& out) {
  const bool alpha_kind = o.kind == "diamond-alpha";
  check_alpha_flag(o, alpha_kind);
  const TimeScale ts = parse_scale(o.scale);
  const FuncExpr f = parse_func(o.func);
  DerivativeConfig cfg;
  if (o.tol) cfg.tol = *o.tol;
  double value = 0.0;
  if (o.kind == "delta") {
    value = delta_derivative(ts, f, o.at, cfg);
  } else if (o.kind == "nabla") {
    value = nabla_derivative(ts, f, o.at, cfg);
  } else {
    value = diamond_alpha_derivative(ts, f, o.at, *o.alpha, cfg);
  }
  const auto fmt = parse_format(o.output);
  if (fmt == OutputFormat::json) {
    nlohmann::json j = {{"kind", o.kind}, {"t", o.at}, {"value", value}};
    if (o.alpha) j["alpha"] = *o.alpha;
    out << j.dump(2) << '\n';
  } else if (fmt == OutputFormat::csv) {
    out << "kind,t,value\n"
        << o.kind << ',' << tscalc::detail::format_real(o.at) << ','
        << tscalc::detail::format_real(value) << '\n';
  } else {
    out << tscalc::detail::pad("kind", 17) << o.kind << '\n'
        << tscalc::detail::pad("t", 17) << tscalc::detail::table_real(o.at) << '\n'
        << tscalc::detail::pad("value", 17) << tscalc::detail::table_real(value) << '\n';
  }
  return exit_ok;
}

inline int do_gamma_table(const Options& o, std::ostream& out) {
  const TimeScale ts = parse_scale(o.scale);
  std::vector<GammaRow> rows;
  if (o.at_points.empty()) {
    rows = gamma_table(ts);
  } else {
    for (double t : o.at_points) rows.push_back(gamma_row(ts, t));
  }
  out << emit(rows, parse_format(o.output));
  return exit_ok;
}

inline int do_compare(const Options& o, std::ostream& out) {
  if (!o.alpha) throw UsageError("compare requires --alpha");
  const TimeScale ts = parse_scale(o.scale);
  const FuncExpr f = parse_func(o.func);
  const auto cfg = quad_config(o);
  const auto dia = diamond_integral(ts, f, o.from, o.to, cfg);
  const auto dia_alpha = diamond_alpha_integral(ts, f, o.from, o.to, *o.alpha, cfg);
  const double diff = dia.value - dia_alpha.value;
  switch (parse_format(o.output)) {
    case OutputFormat::json: {
      nlohmann::json j = {{"alpha", *o.alpha},
                          {"diamond", to_json(dia)},
                          {"diamond_alpha", to_json(dia_alpha)},
                          {"difference", diff}};
      out << j.dump(2) << '\n';
      break;
    }
    case OutputFormat::csv:
      out << "kind,alpha,value,err_estimate\n"
          << "diamond,," << tscalc::detail::format_real(dia.value) << ','
          << tscalc::detail::format_real(dia.err_estimate) << '\n'
          << "diamond-alpha," << tscalc::detail::format_real(*o.alpha) << ','
          << tscalc::detail::format_real(dia_alpha.value) << ','
          << tscalc::detail::format_real(dia_alpha.err_estimate) << '\n'
          << "difference,," << tscalc::detail::format_real(diff) << ",\n";
      break;
    case OutputFormat::table:
      out << tscalc::detail::pad("diamond", 17) << tscalc::detail::table_real(dia.value) << '\n'
          << tscalc::detail::pad("diamond-alpha", 17) << tscalc::detail::table_real(dia_alpha.value)
          << '\n'
          << tscalc::detail::pad("alpha", 17) << tscalc::detail::table_real(*o.alpha) << '\n'
          << tscalc::detail::pad("difference", 17) << tscalc::detail::table_real(diff) << '\n';
      break;
  }
  return exit_ok;
}

inline bool all_passed(const std::vector<CheckReport>& checks) {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

inline int do_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const auto cfg = quad_config(o);
  const auto fmt = parse_format(o.output);
  if (o.func.empty() && o.gfunc.empty()) {
    if (!o.scale.empty()) throw UsageError("--scale needs --func and --gfunc");
    if (o.trials < 1) throw UsageError("--trials must be >= 1");
    const auto s = gen::randomized_verification(o.seed, o.trials, cfg);
    if (fmt == OutputFormat::json) {
      nlohmann::json j = {{"seed", s.seed},
                          {"trials", s.trials},
                          {"checks_run", s.checks_run},
                          {"failures", s.failures.size()},
                          {"checks", to_json(s.failures)}};
      out << j.dump(2) << '\n';
    } else if (fmt == OutputFormat::csv) {
      out << emit(s.failures, fmt);
    } else {
      out << tscalc::detail::pad("seed", 17) << s.seed << '\n'
          << tscalc::detail::pad("trials", 17) << s.trials << '\n'
          << tscalc::detail::pad("checks_run", 17) << s.checks_run << '\n'
          << tscalc::detail::pad("failures", 17) << s.failures.size() << '\n';
      if (!s.failures.empty()) out << '\n' << emit(s.failures, fmt);
    }
    return s.failures.empty() ? exit_ok : exit_domain;
  }
  if (o.scale.empty() || o.func.empty() || o.gfunc.empty()) {
    throw UsageError("verify needs --scale, --func and --gfunc (or none of them)");
  }
  const TimeScale ts = parse_scale(o.scale);
  const FuncExpr f = parse_func(o.func);
  const FuncExpr g = parse_func(o.gfunc);
  const double c = o.c.value_or(o.from);
  auto checks = property_suite(ts, f, g, o.from, o.to, c, o.lambda, cfg, SuiteOptions{o.p});
  checks.push_back(holder_check(ts, f, g, o.from, o.to, o.p, cfg));
  checks.push_back(cauchy_schwarz_check(ts, f, g, o.from, o.to, cfg));
  checks.push_back(minkowski_check(ts, f, g, o.from, o.to, o.p, cfg));
  try {
    checks.push_back(mean_value_K(ts, f, g, o.from, o.to, cfg));
  } catch (const error& e) {
    if (e.code() != errc::sign_change) throw;
    err << "note: mean value check skipped, g changes sign\n";
  }
  out << emit(checks, fmt);
  return all_passed(checks) ? exit_ok : exit_domain;
}

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  detail::Options o;
  CLI::App app{"Calculus on bounded time scales: delta, nabla, diamond-alpha and diamond "
               "integrals and derivatives"};
  app.name("tscalc");
  app.require_subcommand(1);

  const std::vector<std::string> formats{"table", "json", "csv"};
  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", o.output, "Output format")->check(CLI::IsMember(formats));
  };
  const auto add_quad = [&](CLI::App* sub) {
    sub->add_option("--tol", o.tol, "Relative quadrature tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-depth", o.max_depth, "Adaptive recursion cap")
        ->check(CLI::PositiveNumber);
  };
  const auto add_range = [&](CLI::App* sub) {
    sub->add_option("--scale", o.scale, "Time scale, e.g. \"[0,1] u {2,4}\"")->required();
    sub->add_option("--func", o.func, "Integrand in t")->required();
    sub->add_option("--from", o.from, "Lower limit (a point of the scale)")->required();
    sub->add_option("--to", o.to, "Upper limit (a point of the scale)")->required();
  };

  auto* integ = app.add_subcommand("integrate", "Integrate a function over [from, to]");
  add_range(integ);
  integ->add_option("--kind", o.kind, "delta | nabla | diamond | diamond-alpha")
      ->check(CLI::IsMember({"delta", "nabla", "diamond", "diamond-alpha"}));
  integ->add_option("--alpha", o.alpha, "Weight for --kind diamond-alpha");
  add_output(integ);
  add_quad(integ);

  auto* derive = app.add_subcommand("derive", "Derivative at a point");
  derive->add_option("--scale", o.scale, "Time scale")->required();
  derive->add_option("--func", o.func, "Function of t")->required();
  derive->add_option("--at", o.at, "Point of the scale")->required();
  derive->add_option("--kind", o.kind, "delta | nabla | diamond-alpha")
      ->required()
      ->check(CLI::IsMember({"delta", "nabla", "diamond-alpha"}));
  derive->add_option("--alpha", o.alpha, "Weight for --kind diamond-alpha");
  derive->add_option("--tol", o.tol, "Richardson stopping tolerance")->check(CLI::PositiveNumber);
  add_output(derive);

  auto* gtab = app.add_subcommand("gamma-table", "Jump operators and gamma at scale points");
  gtab->add_option("--scale", o.scale, "Time scale")->required();
  gtab->add_option("--at", o.at_points, "Points to tabulate (default: every segment bound)");
  add_output(gtab);

  auto* verify = app.add_subcommand(
      "verify", "Check the integral properties and inequalities (randomized without --func)");
  verify->add_option("--scale", o.scale, "Time scale");
  verify->add_option("--func", o.func, "f");
  verify->add_option("--gfunc", o.gfunc, "g");
  verify->add_option("--from", o.from, "Lower limit");
  verify->add_option("--to", o.to, "Upper limit");
  verify->add_option("--c", o.c, "Split point for additivity (default: --from)");
  verify->add_option("--lambda", o.lambda, "Scalar for homogeneity");
  verify->add_option("--p", o.p, "Exponent for Hölder, Minkowski and |f|^p");
  verify->add_option("--seed", o.seed, "Seed of the randomized suite");
  verify->add_option("--trials", o.trials, "Trials of the randomized suite");
  add_output(verify);
  add_quad(verify);

  auto* compare = app.add_subcommand("compare", "Diamond against diamond-alpha");
  add_range(compare);
  compare->add_option("--alpha", o.alpha, "Weight of the diamond-alpha integral")->required();
  add_output(compare);
  add_quad(compare);

  std::vector<std::string> argv_store{"tscalc"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (integ->parsed()) return detail::do_integrate(o, out);
    if (derive->parsed()) return detail::do_derive(o, out);
    if (gtab->parsed()) return detail::do_gamma_table(o, out);
    if (verify->parsed()) return detail::do_verify(o, out, err);
    if (compare->parsed()) return detail::do_compare(o, out);
  } catch (const detail::UsageError& e) {
    err << "usage: " << e.what() << '\n';
    return exit_usage;
  } catch (const syntax_error& e) {
    err << e.what() << '\n';
    return exit_usage;
  } catch (const error& e) {
    err << to_string(e.code()) << ": " << e.what() << '\n';
    switch (e.code()) {
      case errc::invalid_segment:
      case errc::invalid_step:
      case errc::invalid_config:
        return exit_usage;
      default:
        return exit_domain;
    }
  }
  return exit_usage;
}

}  // namespace tscalc::cli
