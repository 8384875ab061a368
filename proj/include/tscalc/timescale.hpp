#pragma once

// Bounded time scales: finite ordered unions of closed segments, together with
// the forward/backward jump operators, graininess, point classification and
// the weight function gamma used by the diamond integral.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tscalc/error.hpp"

namespace tscalc {

inline constexpr double default_eps_point = 1e-12;

/// Closed segment [lo, hi]; lo == hi is an isolated point.
struct Segment {
  double lo = 0.0;
  double hi = 0.0;

  bool is_point() const noexcept { return lo == hi; }
  double length() const noexcept { return hi - lo; }

  friend bool operator==(const Segment&, const Segment&) = default;
};

enum class PointClass {
  dense,
  right_scattered_left_dense,
  left_scattered_right_dense,
  isolated,
  left_endpoint_dense,
  right_endpoint_dense,
};

constexpr std::string_view to_string(PointClass c) noexcept {
  switch (c) {
    case PointClass::dense: return "dense";
    case PointClass::right_scattered_left_dense: return "right-scattered-left-dense";
    case PointClass::left_scattered_right_dense: return "left-scattered-right-dense";
    case PointClass::isolated: return "isolated";
    case PointClass::left_endpoint_dense: return "left-endpoint-dense";
    case PointClass::right_endpoint_dense: return "right-endpoint-dense";
  }
  return "unknown";
}

/// Which extremum is removed: delta -> T^kappa, nabla -> T_kappa, both -> T^kappa_kappa.
enum class KappaDomain { delta, nabla, both };

/// A point of a time scale resolved to its canonical value and the index of
/// the segment holding it.
struct Located {
  std::size_t segment = 0;
  double t = 0.0;
};

class TimeScale {
 public:
  /// Builds the canonical form: sorted, with overlapping segments and
  /// segments closer than `eps_point` merged.
  explicit TimeScale(std::vector<Segment> segments,
                     double eps_point = default_eps_point)
      : eps_(eps_point) {
    if (segments.empty()) {
      throw error(errc::invalid_segment, "time scale must be nonempty");
    }
    if (!(eps_point >= 0.0) || !std::isfinite(eps_point)) {
      throw error(errc::invalid_config, "eps_point must be finite and >= 0");
    }
    for (const auto& s : segments) {
      if (!std::isfinite(s.lo) || !std::isfinite(s.hi)) {
        throw error(errc::invalid_segment, "segment bounds must be finite");
      }
      if (s.lo > s.hi + eps_point) {
        throw error(errc::invalid_segment,
                    "segment [" + detail::format_real(s.lo) + ", " +
                        detail::format_real(s.hi) + "] has lo > hi");
      }
    }
    for (auto& s : segments) s.hi = std::max(s.lo, s.hi);
    std::sort(segments.begin(), segments.end(),
              [](const Segment& x, const Segment& y) {
                return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
              });
    segs_.reserve(segments.size());
    for (const auto& s : segments) {
      if (!segs_.empty() && s.lo <= segs_.back().hi + eps_point) {
        segs_.back().hi = std::max(segs_.back().hi, s.hi);
      } else {
        segs_.push_back(s);
      }
    }
  }

  /// Convenience: a scale of isolated points.
  static TimeScale from_points(std::span<const double> points,
                               double eps_point = default_eps_point) {
    std::vector<Segment> segs;
    segs.reserve(points.size());
    for (double p : points) segs.push_back({p, p});
    return TimeScale(std::move(segs), eps_point);
  }

  const std::vector<Segment>& segments() const noexcept { return segs_; }
  std::size_t size() const noexcept { return segs_.size(); }
  double min() const noexcept { return segs_.front().lo; }
  double max() const noexcept { return segs_.back().hi; }
  double eps_point() const noexcept { return eps_; }

  bool is_single_point() const noexcept {
    return segs_.size() == 1 && segs_.front().is_point();
  }
  bool is_discrete() const noexcept {
    return std::all_of(segs_.begin(), segs_.end(),
                       [](const Segment& s) { return s.is_point(); });
  }

  /// Resolves `t` to a point of the scale, snapping values within eps_point
  /// of a segment bound onto that bound.
  std::optional<Located> locate(double t) const noexcept {
    if (!std::isfinite(t)) return std::nullopt;
    auto it = std::upper_bound(
        segs_.begin(), segs_.end(), t,
        [](double v, const Segment& s) { return v < s.lo; });
    // candidates: the segment starting after t and the one before it
    if (it != segs_.end() && it->lo - t <= eps_) {
      return Located{static_cast<std::size_t>(it - segs_.begin()), it->lo};
    }
    if (it == segs_.begin()) return std::nullopt;
    --it;
    const auto idx = static_cast<std::size_t>(it - segs_.begin());
    if (t - it->lo <= eps_) return Located{idx, it->lo};
    if (std::abs(t - it->hi) <= eps_) return Located{idx, it->hi};
    if (t < it->hi) return Located{idx, t};
    return std::nullopt;
  }

  Located require(double t) const {
    auto loc = locate(t);
    if (!loc) {
      throw error(errc::point_not_in_scale,
                  "t = " + detail::format_real(t) + " is not a point of the time scale");
    }
    return *loc;
  }

  bool contains(double t) const noexcept { return locate(t).has_value(); }

  double sigma(const Located& p) const noexcept {
    const auto& s = segs_[p.segment];
    if (p.t < s.hi) return p.t;
    if (p.segment + 1 < segs_.size()) return segs_[p.segment + 1].lo;
    return p.t;
  }
  double rho(const Located& p) const noexcept {
    const auto& s = segs_[p.segment];
    if (p.t > s.lo) return p.t;
    if (p.segment > 0) return segs_[p.segment - 1].hi;
    return p.t;
  }
  double mu(const Located& p) const noexcept { return sigma(p) - p.t; }
  double nu(const Located& p) const noexcept { return p.t - rho(p); }

  double gamma(const Located& p) const noexcept {
    const double s = sigma(p);
    const double r = rho(p);
    if (s == r) return 0.5;
    return (s - p.t) / (s - r);
  }

  PointClass classify(const Located& p) const noexcept {
    const bool right_scattered = mu(p) > 0.0;
    const bool left_scattered = nu(p) > 0.0;
    if (right_scattered && left_scattered) return PointClass::isolated;
    if (right_scattered) return PointClass::right_scattered_left_dense;
    if (left_scattered) return PointClass::left_scattered_right_dense;
    if (is_single_point()) return PointClass::isolated;
    if (p.t == min()) return PointClass::left_endpoint_dense;
    if (p.t == max()) return PointClass::right_endpoint_dense;
    return PointClass::dense;
  }

  double sigma(double t) const { return sigma(require(t)); }
  double rho(double t) const { return rho(require(t)); }
  double mu(double t) const { return mu(require(t)); }
  double nu(double t) const { return nu(require(t)); }
  double gamma(double t) const { return gamma(require(t)); }
  PointClass classify(double t) const { return classify(require(t)); }

  /// True iff the maximum is excluded from T^kappa (left-scattered maximum).
  bool drops_max() const noexcept {
    return segs_.size() > 1 && segs_.back().is_point();
  }
  /// True iff the minimum is excluded from T_kappa (right-scattered minimum).
  bool drops_min() const noexcept {
    return segs_.size() > 1 && segs_.front().is_point();
  }

  /// Membership in T^kappa, T_kappa or their intersection. A single-point
  /// scale has an empty kappa domain of every kind.
  bool in_kappa(const Located& p, KappaDomain kind) const noexcept {
    if (is_single_point()) return false;
    const bool is_max = p.segment + 1 == segs_.size() && p.t == max();
    const bool is_min = p.segment == 0 && p.t == min();
    const bool out_delta = is_max && drops_max();
    const bool out_nabla = is_min && drops_min();
    switch (kind) {
      case KappaDomain::delta: return !out_delta;
      case KappaDomain::nabla: return !out_nabla;
      case KappaDomain::both: return !out_delta && !out_nabla;
    }
    return false;
  }

  friend bool operator==(const TimeScale& x, const TimeScale& y) noexcept {
    return x.segs_ == y.segs_;
  }

 private:
  std::vector<Segment> segs_;
  double eps_ = default_eps_point;
};

inline bool contains(const TimeScale& ts, double t) noexcept { return ts.contains(t); }
inline double sigma(const TimeScale& ts, double t) { return ts.sigma(t); }
inline double rho(const TimeScale& ts, double t) { return ts.rho(t); }
inline double mu(const TimeScale& ts, double t) { return ts.mu(t); }
inline double nu(const TimeScale& ts, double t) { return ts.nu(t); }
inline double gamma(const TimeScale& ts, double t) { return ts.gamma(t); }
inline PointClass classify(const TimeScale& ts, double t) { return ts.classify(t); }

/// T with the extremum points removed that the derivative of `kind` cannot
/// be taken at.
inline TimeScale kappa_domain(const TimeScale& ts, KappaDomain kind) {
  if (ts.is_single_point()) {
    throw error(errc::empty_domain, "kappa domain of a single-point time scale is empty");
  }
  const auto& segs = ts.segments();
  std::size_t first = 0;
  std::size_t last = segs.size();
  if (kind != KappaDomain::nabla && ts.drops_max()) --last;
  if (kind != KappaDomain::delta && ts.drops_min()) ++first;
  if (first >= last) {
    throw error(errc::empty_domain, "kappa domain is empty");
  }
  return TimeScale(std::vector<Segment>(segs.begin() + static_cast<std::ptrdiff_t>(first),
                                        segs.begin() + static_cast<std::ptrdiff_t>(last)),
                   ts.eps_point());
}

/// One element of the left-to-right decomposition of [a, b]_T.
///
/// Interval pieces carry the continuum sub-interval [lo, hi]. Point pieces
/// carry t (= lo = hi) and the graininess weights the delta and nabla
/// integrals attach to it on this range: `mu` is sigma(t) - t when t is
/// right-scattered and t < b, otherwise 0; `nu` is t - rho(t) when t is
/// left-scattered and t > a, otherwise 0. `gamma` is the time-scale weight at
/// t (not restricted to the range).
struct GridPiece {
  enum class Kind { interval, point };

  Kind kind = Kind::interval;
  double lo = 0.0;
  double hi = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  double gamma = 0.5;

  double t() const noexcept { return lo; }
  bool is_point() const noexcept { return kind == Kind::point; }

  static GridPiece interval(double lo, double hi) {
    return {Kind::interval, lo, hi, 0.0, 0.0, 0.5};
  }
  static GridPiece point(double t, double mu, double nu, double gamma) {
    return {Kind::point, t, t, mu, nu, gamma};
  }
};

/// Emits the maximal continuum sub-intervals and weighted scattered points of
/// [a, b]_T in increasing order. Empty when a == b.
inline std::vector<GridPiece> grid(const TimeScale& ts, double a, double b) {
  const Located la = ts.require(a);
  const Located lb = ts.require(b);
  if (la.t > lb.t) {
    throw error(errc::degenerate_range, "grid requires a <= b");
  }
  std::vector<GridPiece> out;
  if (la.t == lb.t) return out;

  const auto& segs = ts.segments();
  const auto emit_point = [&](std::size_t idx, double t) {
    const Located p{idx, t};
    const double m = t < lb.t ? ts.mu(p) : 0.0;
    const double n = t > la.t ? ts.nu(p) : 0.0;
    if (m > 0.0 || n > 0.0) out.push_back(GridPiece::point(t, m, n, ts.gamma(p)));
  };

  for (std::size_t i = la.segment; i <= lb.segment; ++i) {
    const double lo = std::max(segs[i].lo, la.t);
    const double hi = std::min(segs[i].hi, lb.t);
    if (lo == hi) {
      emit_point(i, lo);
      continue;
    }
    emit_point(i, lo);
    out.push_back(GridPiece::interval(lo, hi));
    emit_point(i, hi);
  }
  return out;
}

}  // namespace tscalc
