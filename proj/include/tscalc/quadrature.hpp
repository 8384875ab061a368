#pragma once

// Delta, nabla, diamond-alpha and diamond integrals over [a, b]_T.
//
// [a, b]_T is split by grid() into continuum pieces, integrated with adaptive
// Simpson, and scattered points, whose graininess-weighted values are summed
// exactly: the delta side weights right-scattered t in [a, b) by mu(t), the
// nabla side weights left-scattered t in (a, b] by nu(t).

#include <cmath>
#include <concepts>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tscalc/error.hpp"
#include "tscalc/timescale.hpp"

namespace tscalc {

template <class F>
concept RealFunction = std::regular_invocable<const F&, double> &&
                       std::convertible_to<std::invoke_result_t<const F&, double>, double>;

struct QuadConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_depth = 40;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !std::isfinite(rel_tol) ||
        !std::isfinite(abs_tol)) {
      throw error(errc::invalid_config, "quadrature tolerances must be positive");
    }
    if (max_depth < 1) throw error(errc::invalid_config, "max_depth must be >= 1");
  }
};

enum class IntegralKind { delta, nabla, diamond, diamond_alpha };

constexpr std::string_view to_string(IntegralKind k) noexcept {
  switch (k) {
    case IntegralKind::delta: return "delta";
    case IntegralKind::nabla: return "nabla";
    case IntegralKind::diamond: return "diamond";
    case IntegralKind::diamond_alpha: return "diamond-alpha";
  }
  return "unknown";
}

enum class Side { delta, nabla };

constexpr std::string_view to_string(Side s) noexcept {
  return s == Side::delta ? "delta" : "nabla";
}

struct ScatteredTerm {
  double t = 0.0;
  double weight = 0.0;
  double contribution = 0.0;
  Side side = Side::delta;
};

/// value == continuous_part + discrete_part; err_estimate covers the
/// continuous part only.
struct IntegralResult {
  double value = 0.0;
  double err_estimate = 0.0;
  double continuous_part = 0.0;
  double discrete_part = 0.0;
  std::vector<ScatteredTerm> scattered_terms;
};

namespace detail {

struct SimpsonResult {
  double value = 0.0;
  double err = 0.0;
  bool depth_exhausted = false;
};

inline constexpr int simpson_initial_panels = 8;

template <class F>
class AdaptiveSimpson {
 public:
  AdaptiveSimpson(const F& f, const QuadConfig& cfg) : f_(f), cfg_(cfg) {}

  SimpsonResult integrate(double lo, double hi) {
    const int n = simpson_initial_panels;
    const double width = (hi - lo) / n;
    std::vector<double> x(2 * n + 1);
    std::vector<double> y(2 * n + 1);
    for (int i = 0; i <= 2 * n; ++i) {
      x[i] = i == 2 * n ? hi : lo + 0.5 * width * i;
      y[i] = static_cast<double>(f_(x[i]));
    }
    double rough = 0.0;
    std::vector<double> panel(n);
    for (int i = 0; i < n; ++i) {
      panel[i] = simpson(x[2 * i], x[2 * i + 2], y[2 * i], y[2 * i + 1], y[2 * i + 2]);
      rough += panel[i];
    }
    const double tol = std::max(cfg_.abs_tol, cfg_.rel_tol * std::abs(rough));
    SimpsonResult out;
    for (int i = 0; i < n; ++i) {
      recurse(x[2 * i], x[2 * i + 2], y[2 * i], y[2 * i + 1], y[2 * i + 2], panel[i],
              tol / n, 0, out);
    }
    if (out.depth_exhausted && out.err > std::max(cfg_.abs_tol, cfg_.rel_tol * std::abs(out.value))) {
      throw error(errc::quadrature_failure,
                  "adaptive Simpson reached max_depth on [" + format_real(lo) + ", " +
                      format_real(hi) + "] with error estimate " + format_real(out.err));
    }
    return out;
  }

 private:
  static double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  }

  void recurse(double a, double b, double fa, double fm, double fb, double whole,
               double tol, int depth, SimpsonResult& out) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = static_cast<double>(f_(lm));
    const double frm = static_cast<double>(f_(rm));
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double diff = left + right - whole;
    const bool too_narrow = !(a < lm && lm < m && m < rm && rm < b);
    if (std::abs(diff) <= 15.0 * tol || depth + 1 >= cfg_.max_depth || too_narrow) {
      if (std::abs(diff) > 15.0 * tol) out.depth_exhausted = true;
      out.value += left + right + diff / 15.0;
      out.err += std::abs(diff) / 15.0;
      return;
    }
    recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, out);
    recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, out);
  }

  const F& f_;
  const QuadConfig& cfg_;
};

/// Integral over the continuum [lo, hi] with adaptive Simpson.
template <RealFunction F>
SimpsonResult integrate_continuum(const F& f, double lo, double hi, const QuadConfig& cfg) {
  return AdaptiveSimpson<F>(f, cfg).integrate(lo, hi);
}

inline void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw error(errc::alpha_out_of_range,
                "alpha = " + format_real(alpha) + " is outside [0, 1]");
  }
}

template <RealFunction F>
IntegralResult integrate_forward(const TimeScale& ts, const F& f, double a, double b,
                                 IntegralKind kind, double alpha, const QuadConfig& cfg) {
  IntegralResult r;
  const auto pieces = grid(ts, a, b);

  // continuum: gamma is 1/2 on every interval interior, so both diamond
  // halves integrate f/2 there and sum to the plain integral
  double continuum = 0.0;
  for (const auto& p : pieces) {
    if (p.is_point()) continue;
    const auto s = integrate_continuum(f, p.lo, p.hi, cfg);
    continuum += s.value;
    r.err_estimate += s.err;
  }
  switch (kind) {
    case IntegralKind::delta:
    case IntegralKind::nabla:
    case IntegralKind::diamond:
      r.continuous_part = continuum;
      break;
    case IntegralKind::diamond_alpha:
      r.continuous_part = alpha * continuum + (1.0 - alpha) * continuum;
      break;
  }

  const auto delta_weight = [&](const GridPiece& p) {
    switch (kind) {
      case IntegralKind::delta: return p.mu;
      case IntegralKind::nabla: return 0.0;
      case IntegralKind::diamond: return p.mu * p.gamma;
      case IntegralKind::diamond_alpha: return alpha * p.mu;
    }
    return 0.0;
  };
  const auto nabla_weight = [&](const GridPiece& p) {
    switch (kind) {
      case IntegralKind::delta: return 0.0;
      case IntegralKind::nabla: return p.nu;
      case IntegralKind::diamond: return p.nu * (1.0 - p.gamma);
      case IntegralKind::diamond_alpha: return (1.0 - alpha) * p.nu;
    }
    return 0.0;
  };

  // each side is summed on its own, left to right, so that
  // diamond-alpha and diamond agree bit-for-bit wherever gamma == alpha
  double delta_sum = 0.0;
  double nabla_sum = 0.0;
  for (const auto& p : pieces) {
    if (!p.is_point()) continue;
    const double wd = delta_weight(p);
    const double wn = nabla_weight(p);
    if (wd == 0.0 && wn == 0.0) continue;
    const double ft = static_cast<double>(f(p.t()));
    if (wd != 0.0) {
      const double c = wd * ft;
      delta_sum += c;
      r.scattered_terms.push_back({p.t(), wd, c, Side::delta});
    }
    if (wn != 0.0) {
      const double c = wn * ft;
      nabla_sum += c;
      r.scattered_terms.push_back({p.t(), wn, c, Side::nabla});
    }
  }
  r.discrete_part = delta_sum + nabla_sum;
  r.value = r.continuous_part + r.discrete_part;
  return r;
}

}  // namespace detail

/// Integral of `f` of the requested kind from a to b; b < a gives the
/// negation of the integral from b to a.
template <RealFunction F>
IntegralResult integrate(const TimeScale& ts, const F& f, double a, double b,
                         IntegralKind kind, double alpha = 0.5, const QuadConfig& cfg = {}) {
  cfg.validate();
  if (kind == IntegralKind::diamond_alpha) detail::check_alpha(alpha);
  if (ts.is_single_point()) {
    throw error(errc::degenerate_range, "integrals on a single-point time scale are undefined");
  }
  const double la = ts.require(a).t;
  const double lb = ts.require(b).t;
  if (la <= lb) return detail::integrate_forward(ts, f, la, lb, kind, alpha, cfg);

  IntegralResult r = detail::integrate_forward(ts, f, lb, la, kind, alpha, cfg);
  r.value = -r.value;
  r.continuous_part = -r.continuous_part;
  r.discrete_part = -r.discrete_part;
  for (auto& term : r.scattered_terms) {
    term.weight = -term.weight;
    term.contribution = -term.contribution;
  }
  return r;
}

template <RealFunction F>
IntegralResult delta_integral(const TimeScale& ts, const F& f, double a, double b,
                              const QuadConfig& cfg = {}) {
  return integrate(ts, f, a, b, IntegralKind::delta, 0.5, cfg);
}

template <RealFunction F>
IntegralResult nabla_integral(const TimeScale& ts, const F& f, double a, double b,
                              const QuadConfig& cfg = {}) {
  return integrate(ts, f, a, b, IntegralKind::nabla, 0.5, cfg);
}

template <RealFunction F>
IntegralResult diamond_alpha_integral(const TimeScale& ts, const F& f, double a, double b,
                                      double alpha, const QuadConfig& cfg = {}) {
  return integrate(ts, f, a, b, IntegralKind::diamond_alpha, alpha, cfg);
}

/// The gamma-weighted combination of delta and nabla integrals.
template <RealFunction F>
IntegralResult diamond_integral(const TimeScale& ts, const F& f, double a, double b,
                                const QuadConfig& cfg = {}) {
  return integrate(ts, f, a, b, IntegralKind::diamond, 0.5, cfg);
}

}  // namespace tscalc
