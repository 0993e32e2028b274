#pragma once

#include <cmath>
#include <stdexcept>

namespace swflood::test {

// Exact wet/wet dam-break similarity solution (left rarefaction, right shock)
// for still initial states h_l > h_r > 0 separated at x = 0.
struct StokerSolution {
  double h_l, h_r, g;
  double h_m = 0.0, u_m = 0.0, shock_speed = 0.0;

  StokerSolution(double hl, double hr, double gravity = 9.81)
      : h_l(hl), h_r(hr), g(gravity) {
    if (!(hl > hr && hr > 0.0)) throw std::invalid_argument("need h_l > h_r > 0");
    const auto f = [&](double hm) {
      return 2.0 * (std::sqrt(g * h_l) - std::sqrt(g * hm)) -
             (hm - h_r) * std::sqrt(0.5 * g * (hm + h_r) / (hm * h_r));
    };
    double lo = h_r, hi = h_l;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (f(mid) > 0.0 ? lo : hi) = mid;
    }
    h_m = 0.5 * (lo + hi);
    u_m = 2.0 * (std::sqrt(g * h_l) - std::sqrt(g * h_m));
    shock_speed = h_m * u_m / (h_m - h_r);
  }

  double depth(double x, double t) const {
    const double xi = x / t;
    const double cl = std::sqrt(g * h_l);
    const double cm = std::sqrt(g * h_m);
    if (xi <= -cl) return h_l;
    if (xi < u_m - cm) {
      const double c = (2.0 * cl - xi) / 3.0;
      return c * c / g;
    }
    if (xi < shock_speed) return h_m;
    return h_r;
  }
};

}  // namespace swflood::test
