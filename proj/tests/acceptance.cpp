// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracle.hpp"
#include "tscalc/cli.hpp"
#include "tscalc/generators.hpp"
#include "tscalc/tscalc.hpp"

namespace {

using tscalc::FuncExpr;
using tscalc::IntegralKind;
using tscalc::parse_func;
using tscalc::parse_scale;
using tscalc::QuadConfig;
using tscalc::TimeScale;
namespace gen = tscalc::gen;

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) detail = what;
    passed = passed && ok;
  }
};

std::string num(double x) { return tscalc::detail::format_real(x); }

/// Median wall time of `reps` calls, in milliseconds.
double median_ms(const std::function<void()>& fn, int reps = 21) {
  std::vector<double> times;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

double witness(const tscalc::CheckReport& r, const std::string& name) {
  for (const auto& w : r.witnesses) {
    if (w.name == name) return w.value;
  }
  return NAN;
}

// 1. Integer example: the scale is a window of Z wide enough that gamma is
// 1/2 at both limits, as it is on all of Z.
Outcome integer_example() {
  Outcome o;
  const auto ts = parse_scale("hZ(1;-3;5)");
  const auto f = parse_func("t^2");
  const auto r = tscalc::diamond_integral(ts, f, 0, 2);
  o.require(r.value == 3.0, "value " + num(r.value) + " != 3");
  o.require(r.continuous_part == 0.0 && r.err_estimate == 0.0, "quadrature was involved");
  const double ms = median_ms([&] { (void)tscalc::diamond_integral(ts, f, 0, 2); });
  o.require(ms < 1.0, "runtime " + num(ms) + " ms");
  if (o.passed) o.detail = "value 3, median " + num(ms) + " ms";
  return o;
}

// 2. Mixed scale example.
Outcome mixed_example() {
  Outcome o;
  const auto ts = parse_scale("[0,1] u {2,4}");
  const auto f = parse_func("1");
  const auto r = tscalc::diamond_integral(ts, f, 0, 4);
  o.require(std::abs(r.value - 17.0 / 3.0) <= 1e-9, "value " + num(r.value));
  const double ms = median_ms([&] { (void)tscalc::diamond_integral(ts, f, 0, 4); });
  o.require(ms < 10.0, "runtime " + num(ms) + " ms");
  if (o.passed) o.detail = "value " + num(r.value) + ", median " + num(ms) + " ms";
  return o;
}

// 3. Diamond-alpha contrast, library and CLI.
Outcome alpha_contrast() {
  Outcome o;
  const auto ts = parse_scale("[0,1] u {2,4}");
  const auto f = parse_func("1");
  for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const double v = tscalc::diamond_alpha_integral(ts, f, 0, 4, alpha).value;
    o.require(std::abs(v - 4.0) <= 1e-9, "alpha " + num(alpha) + " gives " + num(v));
  }
  std::ostringstream out;
  std::ostringstream err;
  const int code = tscalc::cli::run({"compare", "--scale", "[0,1] u {2,4}", "--func", "1", "--from",
                                     "0", "--to", "4", "--alpha", "0.5", "--output", "json"},
                                    out, err);
  o.require(code == 0, "compare exited " + std::to_string(code) + ": " + err.str());
  if (code == 0) {
    const double diff = nlohmann::json::parse(out.str()).at("difference").get<double>();
    o.require(std::abs(diff - 5.0 / 3.0) <= 1e-9, "difference " + num(diff));
    if (o.passed) o.detail = "all alpha give 4, compare difference " + num(diff);
  }
  return o;
}

// 4. On an interval every integral is the Riemann integral.
Outcome riemann_collapse() {
  Outcome o;
  const TimeScale ts({{0, 1}});
  const auto f = parse_func("t^2");
  const double want = 1.0 / 3.0;
  const auto check = [&](const char* name, double v) {
    o.require(std::abs(v - want) <= 1e-9, std::string(name) + " gives " + num(v));
  };
  check("diamond", tscalc::diamond_integral(ts, f, 0, 1).value);
  check("delta", tscalc::delta_integral(ts, f, 0, 1).value);
  check("nabla", tscalc::nabla_integral(ts, f, 0, 1).value);
  for (double alpha : {0.0, 0.3, 0.5, 1.0}) {
    check("diamond-alpha", tscalc::diamond_alpha_integral(ts, f, 0, 1, alpha).value);
  }
  if (o.passed) o.detail = "all kinds within 1e-9 of 1/3";
  return o;
}

// 5. hZ closed sums, exact.
Outcome hz_sums() {
  Outcome o;
  gen::Rng rng(5);
  int cases = 0;
  for (double h : {1.0, 0.5, 0.25}) {
    const int lo_k = -40;
    const int hi_k = 40;
    std::ostringstream spec;
    spec << "hZ(" << h << ";" << lo_k * h << ";" << hi_k * h << ")";
    const auto ts = parse_scale(spec.str());
    for (int trial = 0; trial < 100; ++trial) {
      const FuncExpr f = gen::random_polynomial(rng, 3);
      // limits strictly inside the window so gamma = 1/2 at both
      int ka = gen::uniform_int(rng, lo_k + 1, hi_k - 1);
      int kb = gen::uniform_int(rng, lo_k + 1, hi_k - 1);
      if (ka > kb) std::swap(ka, kb);
      const double a = ka * h;
      const double b = kb * h;
      double delta_sum = 0.0;
      for (int k = ka; k <= kb - 1; ++k) delta_sum += h * f(k * h);
      double nabla_sum = 0.0;
      for (int k = ka + 1; k <= kb; ++k) nabla_sum += h * f(k * h);
      const double d = tscalc::delta_integral(ts, f, a, b).value;
      const double n = tscalc::nabla_integral(ts, f, a, b).value;
      const double dia = tscalc::diamond_integral(ts, f, a, b).value;
      const double half = tscalc::diamond_alpha_integral(ts, f, a, b, 0.5).value;
      o.require(d == delta_sum, "delta " + num(d) + " vs sum " + num(delta_sum) + " (h " + num(h) + ")");
      o.require(n == nabla_sum, "nabla " + num(n) + " vs sum " + num(nabla_sum) + " (h " + num(h) + ")");
      o.require(dia == half, "diamond " + num(dia) + " vs diamond-1/2 " + num(half));
      ++cases;
    }
  }
  if (o.passed) o.detail = std::to_string(cases) + " ranges, all bit-exact";
  return o;
}

// 6. Discrete scales against the brute-force oracle.
Outcome oracle_equivalence() {
  Outcome o;
  gen::Rng rng(6);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto ts = gen::random_discrete_scale(rng, 12);
    const auto pts = oracle::points_of(ts);
    const FuncExpr f = gen::random_polynomial(rng);
    const int n = static_cast<int>(pts.size());
    const auto i = static_cast<std::size_t>(gen::uniform_int(rng, 0, n - 1));
    const auto j = static_cast<std::size_t>(gen::uniform_int(rng, 0, n - 1));
    const double alpha = gen::uniform(rng, 0.0, 1.0);
    const auto want = oracle::discrete_integrals(pts, f, i, j, alpha);
    // machine precision: a few ulps of the summed magnitudes
    const double tol = 16 * DBL_EPSILON * want.magnitude;
    const double got[] = {tscalc::delta_integral(ts, f, pts[i], pts[j]).value,
                          tscalc::nabla_integral(ts, f, pts[i], pts[j]).value,
                          tscalc::diamond_alpha_integral(ts, f, pts[i], pts[j], alpha).value,
                          tscalc::diamond_integral(ts, f, pts[i], pts[j]).value};
    const double ref[] = {want.delta, want.nabla, want.diamond_alpha, want.diamond};
    const char* names[] = {"delta", "nabla", "diamond-alpha", "diamond"};
    for (int k = 0; k < 4; ++k) {
      const double err = std::abs(got[k] - ref[k]);
      if (want.magnitude > 0) worst = std::max(worst, err / want.magnitude);
      o.require(err <= tol, std::string(names[k]) + " off by " + num(err) + " in trial " +
                                std::to_string(trial));
    }
  }
  if (o.passed) o.detail = "500 scales, worst relative error " + num(worst);
  return o;
}

// 7. The nine integral properties on randomized inputs.
Outcome property_items() {
  Outcome o;
  gen::Rng rng(7);
  const QuadConfig cfg;
  int checks = 0;
  int failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto in = gen::random_trial_inputs(rng);
    const auto reports = tscalc::property_suite(in.scale, in.f, in.g, in.a, in.b, in.c, in.lambda, cfg,
                                                tscalc::SuiteOptions{in.p});
    for (const auto& r : reports) {
      ++checks;
      if (!r.passed) {
        ++failures;
        o.require(false, r.name + " failed in trial " + std::to_string(trial) + ": lhs " +
                             num(r.lhs) + " rhs " + num(r.rhs) + " tol " + num(r.tolerance) +
                             " " + r.detail);
      }
    }
  }
  if (o.passed) o.detail = std::to_string(checks) + " checks, 0 failures";
  else o.detail += " (" + std::to_string(failures) + " failures)";
  return o;
}

// 8. Hölder, Cauchy-Schwarz, Minkowski and their equality cases.
Outcome inequalities() {
  Outcome o;
  gen::Rng rng(8);
  const QuadConfig cfg;
  int checks = 0;
  double worst_equality = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto in = gen::random_trial_inputs(rng);
    const auto expect = [&](const tscalc::CheckReport& r) {
      ++checks;
      o.require(r.passed, r.name + " failed in trial " + std::to_string(trial) + ": lhs " +
                              num(r.lhs) + " rhs " + num(r.rhs) + " tol " + num(r.tolerance));
    };
    expect(tscalc::holder_check(in.scale, in.f, in.g, in.a, in.b, in.p, cfg));
    expect(tscalc::cauchy_schwarz_check(in.scale, in.f, in.g, in.a, in.b, cfg));
    expect(tscalc::minkowski_check(in.scale, in.f, in.g, in.a, in.b, in.p, cfg));

    const double c = gen::uniform(rng, 0.1, 5.0);
    const FuncExpr cf = FuncExpr::constant(c) * in.f;
    const auto eq_holder = tscalc::holder_check(in.scale, in.f, cf, in.a, in.b, 2.0, cfg);
    expect(eq_holder);
    o.require(std::abs(eq_holder.slack) <= eq_holder.tolerance,
              "holder equality slack " + num(eq_holder.slack) + " > tol " + num(eq_holder.tolerance));
    const auto eq_mink = tscalc::minkowski_check(in.scale, in.f, parse_func("0"), in.a, in.b, in.p, cfg);
    expect(eq_mink);
    o.require(std::abs(eq_mink.slack) <= eq_mink.tolerance,
              "minkowski equality slack " + num(eq_mink.slack) + " > tol " + num(eq_mink.tolerance));
    worst_equality = std::max({worst_equality, std::abs(eq_holder.slack) / eq_holder.tolerance,
                               std::abs(eq_mink.slack) / eq_mink.tolerance});
  }
  if (o.passed) {
    o.detail = std::to_string(checks) + " checks, worst equality |slack|/tol " + num(worst_equality);
  }
  return o;
}

// 9. Mean value theorem with one-signed g.
Outcome mean_value() {
  Outcome o;
  gen::Rng rng(9);
  const QuadConfig cfg;
  int quotient_cases = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto in = gen::random_trial_inputs(rng);
    const auto r = tscalc::mean_value_K(in.scale, in.f, in.g_one_signed, in.a, in.b, cfg);
    const double K = witness(r, "K");
    o.require(r.passed, "K = " + num(K) + " outside [" + num(witness(r, "m")) + ", " +
                            num(witness(r, "M")) + "] in trial " + std::to_string(trial));
    if (!r.detail.empty()) continue;
    ++quotient_cases;
    const double i_g = witness(r, "int_g");
    const double i_fg = witness(r, "int_fg");
    const double err = witness(r, "err_int_fg") + std::abs(K) * witness(r, "err_int_g") +
                       4 * DBL_EPSILON * std::abs(i_fg);
    o.require(std::abs(K * i_g - i_fg) <= err,
              "K*int_g - int_fg = " + num(K * i_g - i_fg) + " in trial " + std::to_string(trial));
  }
  if (o.passed) o.detail = "500 trials, " + std::to_string(quotient_cases) + " with K = int_fg/int_g";
  return o;
}

// 10. gamma values on random scales.
Outcome gamma_properties() {
  Outcome o;
  gen::Rng rng(10);
  int evaluated = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto ts = gen::random_scale(rng);
    std::vector<double> pts;
    for (const auto& s : ts.segments()) {
      pts.push_back(s.lo);
      pts.push_back(s.hi);
      if (!s.is_point()) {
        for (int k = 0; k < 5; ++k) pts.push_back(gen::uniform(rng, s.lo, s.hi));
      }
    }
    for (double t : pts) {
      ++evaluated;
      const double g = tscalc::gamma(ts, t);
      const auto cls = tscalc::classify(ts, t);
      const std::string at = " at t = " + num(t) + " (" + std::string(to_string(cls)) + ")";
      o.require(g >= 0.0 && g <= 1.0, "gamma " + num(g) + at);
      if (cls == tscalc::PointClass::dense) o.require(g == 0.5, "gamma " + num(g) + at);
      if (cls == tscalc::PointClass::right_scattered_left_dense) o.require(g == 1.0, "gamma " + num(g) + at);
      if (cls == tscalc::PointClass::left_scattered_right_dense) o.require(g == 0.0, "gamma " + num(g) + at);
    }
  }
  if (o.passed) o.detail = std::to_string(evaluated) + " points on 500 scales";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"1. integer example: diamond of t^2 on [0,2] = 3 exactly, < 1 ms", integer_example},
      {"2. mixed scale example: diamond of 1 on [0,1] u {2,4} = 17/3, < 10 ms", mixed_example},
      {"3. diamond-alpha contrast: 4 for every alpha, compare difference 5/3", alpha_contrast},
      {"4. collapse to Riemann on [0,1]: all kinds = 1/3", riemann_collapse},
      {"5. hZ closed sums exact, diamond = diamond-1/2 exactly", hz_sums},
      {"6. brute-force oracle equivalence on 500 discrete scales", oracle_equivalence},
      {"7. nine integral properties on 1000 randomized trials", property_items},
      {"8. Hölder, Cauchy-Schwarz, Minkowski on 1000 trials with equality cases", inequalities},
      {"9. mean value theorem on 500 trials", mean_value},
      {"10. gamma properties on 500 random scales", gamma_properties},
  };

  const auto start = std::chrono::steady_clock::now();
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %s -- %s\n", o.passed ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.passed) ++failed;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d/%zu criteria passed in %.2f s\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria), secs);
  return failed == 0 ? 0 : 1;
}
