#pragma once

// Random time scales, polynomial integrands and whole verification trials,
// seeded for reproducibility.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "tscalc/expr.hpp"
#include "tscalc/properties.hpp"
#include "tscalc/timescale.hpp"

namespace tscalc::gen {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Mixed scale of 1..max_segments segments (intervals or isolated points);
/// never a single point.
inline TimeScale random_scale(Rng& rng, int max_segments = 8) {
  const int n = uniform_int(rng, 1, max_segments);
  std::vector<Segment> segs;
  double x = uniform(rng, -3.0, 0.0);
  for (int i = 0; i < n; ++i) {
    const bool point = n > 1 && uniform(rng, 0.0, 1.0) < 0.5;
    if (point) {
      segs.push_back({x, x});
    } else {
      const double len = uniform(rng, 0.1, 1.5);
      segs.push_back({x, x + len});
      x += len;
    }
    x += uniform(rng, 0.05, 1.0);
  }
  return TimeScale(std::move(segs));
}

/// 2..max_points isolated points with random gaps.
inline TimeScale random_discrete_scale(Rng& rng, int max_points = 12) {
  const int n = uniform_int(rng, 2, max_points);
  std::vector<double> pts;
  double x = uniform(rng, -3.0, 0.0);
  for (int i = 0; i < n; ++i) {
    pts.push_back(x);
    x += uniform(rng, 0.05, 1.5);
  }
  return TimeScale::from_points(pts);
}

/// A point of the scale: a segment bound or a uniform interior point.
inline double random_point(Rng& rng, const TimeScale& ts) {
  const auto& segs = ts.segments();
  const auto& s = segs[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(segs.size()) - 1))];
  if (s.is_point()) return s.lo;
  switch (uniform_int(rng, 0, 2)) {
    case 0: return s.lo;
    case 1: return s.hi;
    default: return uniform(rng, s.lo, s.hi);
  }
}

/// Horner-form polynomial of degree 0..max_degree, coefficients in
/// [-coef, coef].
inline FuncExpr random_polynomial(Rng& rng, int max_degree = 4, double coef = 2.0) {
  const int deg = uniform_int(rng, 0, max_degree);
  FuncExpr p = FuncExpr::constant(uniform(rng, -coef, coef));
  for (int k = 0; k < deg; ++k) {
    p = FuncExpr::constant(uniform(rng, -coef, coef)) + FuncExpr::variable() * p;
  }
  return p;
}

/// Nonnegative or nonpositive integrand: ±(poly^2 + c), c >= 0.
inline FuncExpr random_one_signed(Rng& rng, int max_degree = 2) {
  const FuncExpr base = random_polynomial(rng, max_degree);
  FuncExpr g = base * base + FuncExpr::constant(uniform(rng, 0.0, 1.0));
  if (uniform(rng, 0.0, 1.0) < 0.5) g = -g;
  return g;
}

struct TrialInputs {
  TimeScale scale;
  FuncExpr f;
  FuncExpr g;
  FuncExpr g_one_signed;
  double a;
  double c;
  double b;
  double lambda;
  double p;
};

inline TrialInputs random_trial_inputs(Rng& rng) {
  TimeScale ts = random_scale(rng);
  std::array<double, 3> abc{};
  do {
    for (auto& x : abc) x = random_point(rng, ts);
    std::sort(abc.begin(), abc.end());
  } while (!(abc[0] < abc[2]));
  FuncExpr f = random_polynomial(rng);
  FuncExpr g = random_polynomial(rng);
  FuncExpr h = random_one_signed(rng);
  const double lambda = uniform(rng, -3.0, 3.0);
  // p in (1, 5]
  const double p = 5.0 - uniform(rng, 0.0, 4.0);
  return {std::move(ts), std::move(f), std::move(g), std::move(h),
          abc[0], abc[1], abc[2], lambda, p};
}

/// Every check on one set of inputs: the nine properties, Hölder,
/// Cauchy-Schwarz, Minkowski and the mean value theorem.
inline std::vector<CheckReport> run_trial(const TrialInputs& in, const QuadConfig& cfg) {
  auto out = property_suite(in.scale, in.f, in.g, in.a, in.b, in.c, in.lambda, cfg,
                            SuiteOptions{in.p});
  out.push_back(holder_check(in.scale, in.f, in.g, in.a, in.b, in.p, cfg));
  out.push_back(cauchy_schwarz_check(in.scale, in.f, in.g, in.a, in.b, cfg));
  out.push_back(minkowski_check(in.scale, in.f, in.g, in.a, in.b, in.p, cfg));
  out.push_back(mean_value_K(in.scale, in.f, in.g_one_signed, in.a, in.b, cfg));
  return out;
}

struct VerificationSummary {
  std::uint64_t seed = 0;
  int trials = 0;
  int checks_run = 0;
  std::vector<CheckReport> failures;
};

inline VerificationSummary randomized_verification(std::uint64_t seed, int trials,
                                                   const QuadConfig& cfg = {}) {
  VerificationSummary s;
  s.seed = seed;
  s.trials = trials;
  Rng rng(seed);
  for (int i = 0; i < trials; ++i) {
    const auto in = random_trial_inputs(rng);
    std::vector<CheckReport> reports;
    try {
      reports = run_trial(in, cfg);
    } catch (const error& e) {
      // a check that throws counts as one failed check
      CheckReport r;
      r.name = "trial";
      r.detail = std::string(to_string(e.code())) + ": " + e.what();
      reports.push_back(std::move(r));
    }
    for (auto& r : reports) {
      ++s.checks_run;
      if (!r.passed) {
        r.detail += (r.detail.empty() ? "" : "; ") + std::string("trial ") + std::to_string(i) +
                    ", scale segments " + std::to_string(in.scale.size()) + ", f = " +
                    in.f.to_string() + ", g = " + in.g.to_string();
        s.failures.push_back(std::move(r));
      }
    }
  }
  return s;
}

}  // namespace tscalc::gen
