#include "swflood/fv_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace swflood {

EdgeState rotate_to_edge(double h, double qx, double qy, double nx, double ny) {
  const double len2 = nx * nx + ny * ny;
  if (std::abs(len2 - 1.0) > 1e-12) {
    throw std::invalid_argument("rotate_to_edge: normal (" + std::to_string(nx) +
                                ", " + std::to_string(ny) + ") is not unit length");
  }
  return {h, qx * nx + qy * ny, -qx * ny + qy * nx};
}

FluxXY rotate_back(const FluxVec& f, double nx, double ny) {
  return {f.mass, f.mom_n * nx - f.mom_t * ny, f.mom_n * ny + f.mom_t * nx};
}

FluxVec physical_flux(const EdgeState& s, double g, double dry) {
  if (s.h <= 0.0) return {};
  const double u = s.h > dry ? s.qn / s.h : 0.0;
  return {s.qn, s.qn * u + 0.5 * g * s.h * s.h, s.qt * u};
}

FluxVec hll_flux(const EdgeState& left, const EdgeState& right, double g, double dry) {
  const bool wet_l = left.h > dry;
  const bool wet_r = right.h > dry;
  if (!wet_l && !wet_r) return {};

  const double ul = wet_l ? left.qn / left.h : 0.0;
  const double ur = wet_r ? right.qn / right.h : 0.0;
  const double cl = std::sqrt(g * std::max(left.h, 0.0));
  const double cr = std::sqrt(g * std::max(right.h, 0.0));

  double sl, sr;
  if (!wet_r) {
    sl = ul - cl;
    sr = ul + 2.0 * cl;
  } else if (!wet_l) {
    sl = ur - 2.0 * cr;
    sr = ur + cr;
  } else {
    sl = std::min(ul - cl, ur - cr);
    sr = std::max(ul + cl, ur + cr);
  }

  if (sl >= 0.0) return physical_flux(left, g, dry);
  if (sr <= 0.0) return physical_flux(right, g, dry);

  const FluxVec fl = physical_flux(left, g, dry);
  const FluxVec fr = physical_flux(right, g, dry);
  const double inv = 1.0 / (sr - sl);
  return {(sr * fl.mass - sl * fr.mass + sl * sr * (right.h - left.h)) * inv,
          (sr * fl.mom_n - sl * fr.mom_n + sl * sr * (right.qn - left.qn)) * inv,
          (sr * fl.mom_t - sl * fr.mom_t + sl * sr * (right.qt - left.qt)) * inv};
}

HydrostaticPair hydrostatic_pair(double z_left, double h_left, double z_right,
                                 double h_right) {
  HydrostaticPair p;
  if (z_left >= z_right) {
    p.z_star = z_left;
    p.h_left = std::max(h_left, 0.0);
    p.h_right = std::max(z_right + h_right - z_left, 0.0);
  } else {
    p.z_star = z_right;
    p.h_left = std::max(z_left + h_left - z_right, 0.0);
    p.h_right = std::max(h_right, 0.0);
  }
  return p;
}

EdgeState scale_to_depth(const EdgeState& s, double h_tilde) {
  if (h_tilde > s.h + 1e-12 * std::max(1.0, s.h)) {
    throw std::invalid_argument("scale_to_depth: reconstructed depth exceeds cell depth");
  }
  const double r = s.h > 0.0 ? h_tilde / s.h : 0.0;
  return {h_tilde, s.qn * r, s.qt * r};
}

double interface_source(double h, double h_tilde, double g) {
  return 0.5 * g * (h * h - h_tilde * h_tilde);
}

double wave_speed_bound(double h, double q, double g, double dry) {
  if (h <= dry) return 0.0;
  return std::abs(q / h) + std::sqrt(g * h);
}

}  // namespace swflood
