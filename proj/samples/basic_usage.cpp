// Diamond versus diamond-alpha on [0,1] u {2,4} with f = 1.

#include <cstdio>

#include "tscalc/tscalc.hpp"

int main() {
  const auto ts = tscalc::parse_scale("[0,1] u {2,4}");
  const auto one = tscalc::parse_func("1");

  const auto dia = tscalc::diamond_integral(ts, one, 0.0, 4.0);
  std::printf("diamond integral       %.12g\n", dia.value);
  for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const auto r = tscalc::diamond_alpha_integral(ts, one, 0.0, 4.0, alpha);
    std::printf("diamond-%-4g integral   %.12g\n", alpha, r.value);
  }

  // any callable works as an integrand
  const auto square = [](double t) { return t * t; };
  std::printf("delta integral of t^2  %.12g\n",
              tscalc::delta_integral(ts, square, 0.0, 4.0).value);
  std::printf("gamma(2)               %.12g\n", tscalc::gamma(ts, 2.0));
  return 0;
}
