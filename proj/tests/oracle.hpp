#pragma once

// Brute-force reference sums for purely discrete time scales. Works from the
// sorted point list alone; jump operators and gamma are recomputed here from
// neighbouring points rather than taken from the library.

#include <cmath>
#include <cstddef>
#include <vector>

#include "tscalc/timescale.hpp"

namespace oracle {

inline std::vector<double> points_of(const tscalc::TimeScale& ts) {
  std::vector<double> pts;
  for (const auto& s : ts.segments()) pts.push_back(s.lo);
  return pts;
}

struct DiscreteIntegrals {
  double delta = 0.0;
  double nabla = 0.0;
  double diamond_alpha = 0.0;
  double diamond = 0.0;
  /// Sum of |terms|, the natural scale for rounding error.
  double magnitude = 0.0;
};

/// Integrals from pts[i] to pts[j] (j < i gives the negated reverse range).
template <class F>
DiscreteIntegrals discrete_integrals(const std::vector<double>& pts, const F& f, std::size_t i,
                                     std::size_t j, double alpha) {
  DiscreteIntegrals out;
  const double sign = j < i ? -1.0 : 1.0;
  const std::size_t lo = std::min(i, j);
  const std::size_t hi = std::max(i, j);
  const std::size_t n = pts.size();
  const auto gamma_at = [&](std::size_t k) {
    const double next = k + 1 < n ? pts[k + 1] : pts[k];
    const double prev = k > 0 ? pts[k - 1] : pts[k];
    if (next == prev) return 0.5;
    return (next - pts[k]) / (next - prev);
  };
  for (std::size_t k = lo; k < hi; ++k) {
    const double gap = pts[k + 1] - pts[k];
    const double fk = f(pts[k]);
    out.delta += gap * fk;
    out.diamond += gap * gamma_at(k) * fk;
    out.magnitude += std::abs(gap * fk);
  }
  for (std::size_t k = lo + 1; k <= hi; ++k) {
    const double gap = pts[k] - pts[k - 1];
    const double fk = f(pts[k]);
    out.nabla += gap * fk;
    out.diamond += gap * (1.0 - gamma_at(k)) * fk;
    out.magnitude += std::abs(gap * fk);
  }
  out.diamond_alpha = alpha * out.delta + (1.0 - alpha) * out.nabla;
  out.delta *= sign;
  out.nabla *= sign;
  out.diamond_alpha *= sign;
  out.diamond *= sign;
  return out;
}

}  // namespace oracle
