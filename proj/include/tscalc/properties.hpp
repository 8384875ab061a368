#pragma once

// Executable checks of the diamond-integral mean value theorem, the Hölder,
// Cauchy-Schwarz and Minkowski inequalities, and the basic integral
// properties. Every check reduces to `lhs <= rhs + tolerance`; equalities are
// reported as lhs = |difference|, rhs = 0.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "tscalc/error.hpp"
#include "tscalc/quadrature.hpp"
#include "tscalc/timescale.hpp"

namespace tscalc {

struct Witness {
  std::string name;
  double value = 0.0;
};

struct CheckReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::vector<Witness> witnesses;
  std::string detail;
};

struct HolderExponents {
  double p;
  double q;

  explicit HolderExponents(double p_) : p(p_), q(0.0) {
    if (!(p_ > 1.0) || !std::isfinite(p_)) {
      throw error(errc::exponent_out_of_range,
                  "exponent p = " + detail::format_real(p_) + " must exceed 1");
    }
    q = p_ / (p_ - 1.0);
  }
};

/// Smallest tolerance any check reports.
inline constexpr double check_tolerance_floor = 1e-9;

/// Sampled points per continuum piece when estimating extrema and signs.
inline constexpr int samples_per_piece = 64;

namespace detail {

inline CheckReport make_report(std::string name, double lhs, double rhs, double tol,
                               std::vector<Witness> witnesses = {}) {
  CheckReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.tolerance = std::max(tol, check_tolerance_floor);
  r.passed = lhs <= rhs + r.tolerance;
  r.witnesses = std::move(witnesses);
  return r;
}

/// Points of [a, b]_T at which sampled extrema are taken: every scattered
/// point and segment bound in range plus a uniform sweep of each continuum
/// piece.
inline std::vector<double> sample_points(const TimeScale& ts, double a, double b) {
  std::vector<double> pts{a, b};
  for (const auto& piece : grid(ts, a, b)) {
    if (piece.is_point()) {
      pts.push_back(piece.t());
      continue;
    }
    const double step = (piece.hi - piece.lo) / (samples_per_piece - 1);
    for (int i = 0; i < samples_per_piece - 1; ++i) pts.push_back(piece.lo + step * i);
    pts.push_back(piece.hi);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

template <RealFunction F>
double sampled_sup_abs(const F& f, const std::vector<double>& pts) {
  double m = 0.0;
  for (double t : pts) m = std::max(m, std::abs(static_cast<double>(f(t))));
  return m;
}

/// Bound on |x^r - A^r| for r in (0, 1] when |x - A| <= err.
inline double power_error(double value, double err, double r) {
  if (err <= 0.0) return 0.0;
  const double holder_bound = std::pow(err, r);
  if (r == 1.0) return err;
  if (value - err > 0.0) {
    return std::min(holder_bound, r * std::pow(value - err, r - 1.0) * err);
  }
  return holder_bound;
}

/// (∫|f|^p ◊)^(1/p) computed on f / sup|f| so large exponents stay finite.
struct NormResult {
  double norm = 0.0;
  double err = 0.0;
  double scale = 1.0;
  double integral = 0.0;
};

template <RealFunction F>
NormResult diamond_norm(const TimeScale& ts, const F& f, double a, double b, double p,
                        const std::vector<double>& pts, const QuadConfig& cfg) {
  NormResult out;
  const double sup = sampled_sup_abs(f, pts);
  out.scale = sup > 0.0 ? sup : 1.0;
  const auto scaled = [&](double t) {
    return std::pow(std::abs(static_cast<double>(f(t))) / out.scale, p);
  };
  const auto r = diamond_integral(ts, scaled, a, b, cfg);
  out.integral = std::max(r.value, 0.0);
  out.norm = out.scale * std::pow(out.integral, 1.0 / p);
  out.err = out.scale * power_error(out.integral, r.err_estimate, 1.0 / p);
  return out;
}

inline void require_increasing(const TimeScale& ts, double& a, double& b) {
  a = ts.require(a).t;
  b = ts.require(b).t;
  if (!(a < b)) throw error(errc::degenerate_range, "check requires a < b");
}

template <RealFunction F, RealFunction G>
CheckReport holder_impl(const TimeScale& ts, const F& f, const G& g, double a, double b,
                        double p, const QuadConfig& cfg, bool cauchy_schwarz) {
  const HolderExponents ex(p);
  cfg.validate();
  require_increasing(ts, a, b);
  const auto pts = sample_points(ts, a, b);
  const auto prod = [&](double t) {
    return std::abs(static_cast<double>(f(t)) * static_cast<double>(g(t)));
  };
  const auto lhs = diamond_integral(ts, prod, a, b, cfg);
  const auto nf = diamond_norm(ts, f, a, b, ex.p, pts, cfg);
  const auto ng = diamond_norm(ts, g, a, b, ex.q, pts, cfg);
  const double rhs = cauchy_schwarz ? std::sqrt((nf.norm * nf.norm) * (ng.norm * ng.norm))
                                    : nf.norm * ng.norm;
  const double tol = lhs.err_estimate + nf.err * ng.norm + nf.norm * ng.err + nf.err * ng.err +
                     100.0 * cfg.rel_tol * std::max(std::abs(lhs.value), std::abs(rhs));
  std::vector<Witness> w{{"p", ex.p}, {"q", ex.q}, {"int_abs_fg", lhs.value},
                         {"norm_f_p", nf.norm}, {"norm_g_q", ng.norm}};
  return make_report(cauchy_schwarz ? "cauchy-schwarz" : "holder", lhs.value, rhs, tol,
                     std::move(w));
}

}  // namespace detail

/// ∫|fg|◊ <= (∫|f|^p◊)^(1/p) (∫|g|^q◊)^(1/q), q = p/(p-1).
template <RealFunction F, RealFunction G>
CheckReport holder_check(const TimeScale& ts, const F& f, const G& g, double a, double b,
                         double p, const QuadConfig& cfg = {}) {
  return detail::holder_impl(ts, f, g, a, b, p, cfg, false);
}

template <RealFunction F, RealFunction G>
CheckReport cauchy_schwarz_check(const TimeScale& ts, const F& f, const G& g, double a, double b,
                                 const QuadConfig& cfg = {}) {
  return detail::holder_impl(ts, f, g, a, b, 2.0, cfg, true);
}

template <RealFunction F, RealFunction G>
CheckReport minkowski_check(const TimeScale& ts, const F& f, const G& g, double a, double b,
                            double p, const QuadConfig& cfg = {}) {
  const HolderExponents ex(p);
  cfg.validate();
  detail::require_increasing(ts, a, b);
  const auto pts = detail::sample_points(ts, a, b);
  const auto sum = [&](double t) {
    return static_cast<double>(f(t)) + static_cast<double>(g(t));
  };
  const auto ns = detail::diamond_norm(ts, sum, a, b, ex.p, pts, cfg);
  const auto nf = detail::diamond_norm(ts, f, a, b, ex.p, pts, cfg);
  const auto ng = detail::diamond_norm(ts, g, a, b, ex.p, pts, cfg);
  const double rhs = nf.norm + ng.norm;
  const double tol = ns.err + nf.err + ng.err +
                     100.0 * cfg.rel_tol * std::max(ns.norm, rhs);
  return detail::make_report("minkowski", ns.norm, rhs, tol,
                             {{"p", ex.p}, {"norm_f_plus_g", ns.norm},
                              {"norm_f", nf.norm}, {"norm_g", ng.norm}});
}

/// Mean value theorem: K = ∫fg◊ / ∫g◊ must lie in [m, M], the sampled
/// infimum and supremum of f over [a, b]_T. g must not change sign.
template <RealFunction F, RealFunction G>
CheckReport mean_value_K(const TimeScale& ts, const F& f, const G& g, double a, double b,
                         const QuadConfig& cfg = {}) {
  cfg.validate();
  detail::require_increasing(ts, a, b);
  const auto pts = detail::sample_points(ts, a, b);

  bool has_pos = false;
  bool has_neg = false;
  double m = std::numeric_limits<double>::infinity();
  double M = -std::numeric_limits<double>::infinity();
  for (double t : pts) {
    const double gv = static_cast<double>(g(t));
    has_pos = has_pos || gv > 0.0;
    has_neg = has_neg || gv < 0.0;
    const double fv = static_cast<double>(f(t));
    m = std::min(m, fv);
    M = std::max(M, fv);
  }
  if (has_pos && has_neg) {
    throw error(errc::sign_change, "g changes sign on [a, b]_T");
  }

  // f is also sampled at every quadrature node of the fg integral
  struct Range {
    double lo, hi;
  } seen{m, M};
  const auto fg = [&f, &g, &seen](double t) {
    const double fv = static_cast<double>(f(t));
    seen.lo = std::min(seen.lo, fv);
    seen.hi = std::max(seen.hi, fv);
    return fv * static_cast<double>(g(t));
  };
  const auto i_fg = diamond_integral(ts, fg, a, b, cfg);
  const auto i_g = diamond_integral(ts, g, a, b, cfg);
  m = seen.lo;
  M = seen.hi;

  const double zero_tol = std::max(i_g.err_estimate, check_tolerance_floor);
  if (std::abs(i_g.value) <= zero_tol) {
    const double K = 0.5 * (m + M);
    auto r = detail::make_report("mean-value", std::abs(i_fg.value), 0.0,
                                 i_fg.err_estimate + zero_tol,
                                 {{"K", K}, {"m", m}, {"M", M},
                                  {"int_g", i_g.value}, {"int_fg", i_fg.value},
                                  {"err_int_g", i_g.err_estimate},
                                  {"err_int_fg", i_fg.err_estimate}});
    r.detail = "integral of g vanishes; any K in [m, M] works";
    return r;
  }
  const double K = i_fg.value / i_g.value;
  const double tol = (i_fg.err_estimate + std::abs(K) * i_g.err_estimate) / std::abs(i_g.value) +
                     100.0 * cfg.rel_tol * std::max({std::abs(m), std::abs(M), std::abs(K)});
  // lhs is the distance of K outside [m, M]; negative when strictly inside
  return detail::make_report("mean-value", std::max(m - K, K - M), 0.0, tol,
                             {{"K", K}, {"m", m}, {"M", M},
                              {"int_g", i_g.value}, {"int_fg", i_fg.value},
                              {"err_int_g", i_g.err_estimate},
                              {"err_int_fg", i_fg.err_estimate}});
}

struct SuiteOptions {
  /// Exponent of the |f|^p integrability item.
  double power = 2.0;
};

/// The nine basic properties of the diamond integral, one report each:
/// empty range, split additivity at c, antisymmetry, additivity in the
/// integrand, homogeneity in lambda, integrability of fg, integrability of
/// |f|^p, monotonicity, triangle inequality. A failing item does not stop
/// the others.
template <RealFunction F, RealFunction G>
std::vector<CheckReport> property_suite(const TimeScale& ts, const F& f, const G& g, double a,
                                        double b, double c, double lambda,
                                        const QuadConfig& cfg = {}, SuiteOptions opts = {}) {
  cfg.validate();
  a = ts.require(a).t;
  b = ts.require(b).t;
  c = ts.require(c).t;
  if (!(a <= c && c <= b)) {
    throw error(errc::degenerate_range, "property suite requires a <= c <= b");
  }
  const double slack_scale = 100.0 * cfg.rel_tol;
  const auto I = [&](const auto& h, double from, double to) {
    return diamond_integral(ts, h, from, to, cfg);
  };
  const auto mag = [](std::initializer_list<double> xs) {
    double s = 0.0;
    for (double x : xs) s += std::abs(x);
    return s;
  };

  std::vector<CheckReport> out;
  const auto run = [&](const char* name, auto&& body) {
    try {
      out.push_back(body());
    } catch (const error& e) {
      CheckReport r;
      r.name = name;
      r.lhs = std::numeric_limits<double>::quiet_NaN();
      r.rhs = std::numeric_limits<double>::quiet_NaN();
      r.slack = std::numeric_limits<double>::quiet_NaN();
      r.tolerance = check_tolerance_floor;
      r.passed = false;
      r.detail = e.what();
      out.push_back(std::move(r));
    }
  };

  run("empty-range", [&] {
    const auto r = I(f, a, a);
    return detail::make_report("empty-range", std::abs(r.value), 0.0, 0.0, {{"a", a}});
  });

  run("additivity", [&] {
    const auto whole = I(f, a, b);
    const auto left = I(f, a, c);
    const auto right = I(f, c, b);
    const double diff = std::abs(whole.value - (left.value + right.value));
    const double tol = whole.err_estimate + left.err_estimate + right.err_estimate +
                       slack_scale * mag({whole.value, left.value, right.value});
    return detail::make_report("additivity", diff, 0.0, tol,
                               {{"c", c}, {"int_a_b", whole.value},
                                {"int_a_c", left.value}, {"int_c_b", right.value}});
  });

  run("antisymmetry", [&] {
    const auto fwd = I(f, a, b);
    const auto bwd = I(f, b, a);
    const double tol = fwd.err_estimate + bwd.err_estimate + slack_scale * mag({fwd.value, bwd.value});
    return detail::make_report("antisymmetry", std::abs(fwd.value + bwd.value), 0.0, tol,
                               {{"int_a_b", fwd.value}, {"int_b_a", bwd.value}});
  });

  run("sum-linearity", [&] {
    const auto sum = [&](double t) {
      return static_cast<double>(f(t)) + static_cast<double>(g(t));
    };
    const auto is = I(sum, a, b);
    const auto iff = I(f, a, b);
    const auto ig = I(g, a, b);
    const double tol = is.err_estimate + iff.err_estimate + ig.err_estimate +
                       slack_scale * mag({is.value, iff.value, ig.value});
    return detail::make_report("sum-linearity", std::abs(is.value - (iff.value + ig.value)), 0.0,
                               tol,
                               {{"int_f_plus_g", is.value}, {"int_f", iff.value}, {"int_g", ig.value}});
  });

  run("scalar-linearity", [&] {
    const auto scaled = [&](double t) { return lambda * static_cast<double>(f(t)); };
    const auto il = I(scaled, a, b);
    const auto iff = I(f, a, b);
    const double tol = il.err_estimate + std::abs(lambda) * iff.err_estimate +
                       slack_scale * mag({il.value, lambda * iff.value});
    return detail::make_report("scalar-linearity", std::abs(il.value - lambda * iff.value), 0.0,
                               tol,
                               {{"lambda", lambda}, {"int_lambda_f", il.value}, {"int_f", iff.value}});
  });

  run("product-integrable", [&] {
    const auto prod = [&](double t) {
      return static_cast<double>(f(t)) * static_cast<double>(g(t));
    };
    const auto ip = I(prod, a, b);
    auto r = detail::make_report("product-integrable", std::isfinite(ip.value) ? 0.0 : 1.0, 0.0,
                                 0.0, {{"int_fg", ip.value}});
    r.passed = std::isfinite(ip.value);
    return r;
  });

  run("power-integrable", [&] {
    const double p = opts.power;
    if (!(p > 0.0)) throw error(errc::exponent_out_of_range, "power must be positive");
    const auto pw = [&](double t) { return std::pow(std::abs(static_cast<double>(f(t))), p); };
    const auto ip = I(pw, a, b);
    auto r = detail::make_report("power-integrable", -ip.value, 0.0,
                                 ip.err_estimate + slack_scale * std::abs(ip.value),
                                 {{"p", p}, {"int_abs_f_p", ip.value}});
    r.passed = r.passed && std::isfinite(ip.value);
    return r;
  });

  run("monotonicity", [&] {
    // use (f, g) when f <= g on the sampled grid, otherwise the pair
    // (f, f + (f - g)^2) which is ordered everywhere
    bool ordered = true;
    if (a < b) {
      for (double t : detail::sample_points(ts, a, b)) {
        if (static_cast<double>(f(t)) > static_cast<double>(g(t))) {
          ordered = false;
          break;
        }
      }
    }
    const auto upper = [&](double t) {
      const double fv = static_cast<double>(f(t));
      if (ordered) return static_cast<double>(g(t));
      const double d = fv - static_cast<double>(g(t));
      return fv + d * d;
    };
    const auto lo = I(f, a, b);
    const auto hi = I(upper, a, b);
    const double tol = lo.err_estimate + hi.err_estimate + slack_scale * mag({lo.value, hi.value});
    auto r = detail::make_report("monotonicity", lo.value, hi.value, tol,
                                 {{"int_lower", lo.value}, {"int_upper", hi.value}});
    r.detail = ordered ? "upper = g" : "upper = f + (f - g)^2";
    return r;
  });

  run("triangle", [&] {
    const auto absf = [&](double t) { return std::abs(static_cast<double>(f(t))); };
    const auto iff = I(f, a, b);
    const auto ia = I(absf, a, b);
    const double tol = iff.err_estimate + ia.err_estimate + slack_scale * mag({iff.value, ia.value});
    return detail::make_report("triangle", std::abs(iff.value), ia.value, tol,
                               {{"int_f", iff.value}, {"int_abs_f", ia.value}});
  });

  return out;
}

}  // namespace tscalc
