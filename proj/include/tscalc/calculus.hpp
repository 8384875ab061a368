#pragma once

// Delta, nabla and diamond-alpha derivatives. Scattered points use the exact
// difference quotient across the gap; dense points use a one-sided
// difference inside the containing segment, refined by Richardson
// extrapolation until successive estimates agree to `tol`.

#include <algorithm>
#include <cmath>
#include <vector>

#include "tscalc/error.hpp"
#include "tscalc/quadrature.hpp"
#include "tscalc/timescale.hpp"

namespace tscalc {

struct DerivativeConfig {
  double dense_step_h0 = 1e-4;
  double shrink = 0.5;
  double tol = 1e-8;  // scaled by max(1, |estimate|)
  int max_iters = 30;

  void validate() const {
    if (!(dense_step_h0 > 0.0) || !std::isfinite(dense_step_h0)) {
      throw error(errc::invalid_config, "dense_step_h0 must be positive");
    }
    if (!(shrink > 0.0 && shrink < 1.0)) {
      throw error(errc::invalid_config, "shrink must lie in (0, 1)");
    }
    if (!(tol > 0.0)) throw error(errc::invalid_config, "tol must be positive");
    if (max_iters < 1) throw error(errc::invalid_config, "max_iters must be >= 1");
  }
};

namespace detail {

/// Limit of (f(t + dir*h) - f(t)) / (dir*h) as h -> 0+, with h starting at
/// min(h0, room). The error of the raw quotient is a power series in h, so
/// the Neville tableau over the geometric step sequence removes one order
/// per column.
template <RealFunction F>
double one_sided_limit(const F& f, double t, double dir, double room,
                       const DerivativeConfig& cfg) {
  const double ft = static_cast<double>(f(t));
  double h = std::min(cfg.dense_step_h0, room);
  std::vector<double> prev;
  std::vector<double> row;
  double last = 0.0;
  for (int k = 0; k < cfg.max_iters; ++k) {
    const double step = dir * h;
    // step actually representable relative to t
    const double dt = (t + step) - t;
    if (dt == 0.0) break;
    row.assign(1, (static_cast<double>(f(t + dt)) - ft) / dt);
    double factor = 1.0;
    for (std::size_t j = 1; j <= prev.size(); ++j) {
      factor *= cfg.shrink;
      row.push_back((row[j - 1] - factor * prev[j - 1]) / (1.0 - factor));
    }
    const double est = row.back();
    // tol is absolute for |f'| <= 1 and relative above: the quotient carries
    // roundoff of order eps*|f|/h, which no absolute bound can beat
    if (k > 0 && std::abs(est - last) < cfg.tol * std::max(1.0, std::abs(est))) return est;
    last = est;
    prev.swap(row);
    h *= cfg.shrink;
  }
  throw error(errc::no_convergence,
              "difference quotient at t = " + format_real(t) + " did not settle to tol " +
                  format_real(cfg.tol));
}

template <RealFunction F>
double dense_derivative(const TimeScale& ts, const F& f, const Located& p, bool forward_first,
                        const DerivativeConfig& cfg) {
  const auto& seg = ts.segments()[p.segment];
  const double right_room = seg.hi - p.t;
  const double left_room = p.t - seg.lo;
  if (forward_first ? right_room > 0.0 : left_room <= 0.0) {
    return one_sided_limit(f, p.t, 1.0, right_room, cfg);
  }
  return one_sided_limit(f, p.t, -1.0, left_room, cfg);
}

inline Located require_domain(const TimeScale& ts, double t, KappaDomain kind) {
  if (ts.is_single_point()) {
    throw error(errc::empty_domain, "derivatives are undefined on a single-point time scale");
  }
  const Located p = ts.require(t);
  if (!ts.in_kappa(p, kind)) {
    throw error(errc::point_not_in_domain,
                "t = " + format_real(t) + " lies outside the derivative's kappa domain");
  }
  return p;
}

template <RealFunction F>
double delta_at(const TimeScale& ts, const F& f, const Located& p, const DerivativeConfig& cfg) {
  const double s = ts.sigma(p);
  if (s > p.t) {
    return (static_cast<double>(f(s)) - static_cast<double>(f(p.t))) / (s - p.t);
  }
  return dense_derivative(ts, f, p, true, cfg);
}

template <RealFunction F>
double nabla_at(const TimeScale& ts, const F& f, const Located& p, const DerivativeConfig& cfg) {
  const double r = ts.rho(p);
  if (r < p.t) {
    return (static_cast<double>(f(p.t)) - static_cast<double>(f(r))) / (p.t - r);
  }
  return dense_derivative(ts, f, p, false, cfg);
}

}  // namespace detail

template <RealFunction F>
double delta_derivative(const TimeScale& ts, const F& f, double t,
                        const DerivativeConfig& cfg = {}) {
  cfg.validate();
  const Located p = detail::require_domain(ts, t, KappaDomain::delta);
  return detail::delta_at(ts, f, p, cfg);
}

template <RealFunction F>
double nabla_derivative(const TimeScale& ts, const F& f, double t,
                        const DerivativeConfig& cfg = {}) {
  cfg.validate();
  const Located p = detail::require_domain(ts, t, KappaDomain::nabla);
  return detail::nabla_at(ts, f, p, cfg);
}

/// alpha * delta + (1 - alpha) * nabla, on T^kappa_kappa.
template <RealFunction F>
double diamond_alpha_derivative(const TimeScale& ts, const F& f, double t, double alpha,
                                const DerivativeConfig& cfg = {}) {
  cfg.validate();
  detail::check_alpha(alpha);
  const Located p = detail::require_domain(ts, t, KappaDomain::both);
  return alpha * detail::delta_at(ts, f, p, cfg) + (1.0 - alpha) * detail::nabla_at(ts, f, p, cfg);
}

}  // namespace tscalc
