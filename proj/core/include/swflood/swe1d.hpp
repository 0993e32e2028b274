#pragma once

#include <span>
#include <vector>

#include "swflood/constants.hpp"
#include "swflood/swe2d.hpp"

namespace swflood {

// Area / discharge state of the one-dimensional channel model.
struct ChannelState1d {
  std::vector<double> area;       // A [m^2]
  std::vector<double> discharge;  // Q [m^3/s]
};

// Geometry slice the 1D solver needs: per-cell bed elevation, top width and
// cell length.  Exactly conservative and well balanced for constant width;
// variable widths run best-effort with min-width interface fluxes.
struct Channel1dView {
  std::span<const double> bed;
  std::span<const double> width;
  std::span<const double> dx;
};

// Lateral source term for the 1D model, per cell and inflow-positive:
// mass_rate in m^2/s, x_momentum_rate in m^3/s^2.
struct CouplingFlux {
  std::vector<double> mass_rate;
  std::vector<double> x_momentum_rate;
  void reset(std::size_t n) {
    mass_rate.assign(n, 0.0);
    x_momentum_rate.assign(n, 0.0);
  }
};

struct Step1dOptions {
  SideBc left = SideBc::wall;
  SideBc right = SideBc::wall;
  double manning_n = 0.0;
  double gravity = kGravity;
  double dry_depth = kDryDepth;
};

struct Step1dStats {
  double boundary_inflow_rate = 0.0;  // m^3/s through open ends, inflow positive
  double clipped_volume = 0.0;        // m^3
};

// One first-order step of the channel model: per-unit-width HLL fluxes on
// hydrostatically reconstructed depths, momentum corrections, then
// semi-implicit Manning friction.  Depths use the straight-wall relation
// h = A / B of the rectangular sections.
Step1dStats step_1d(ChannelState1d& s, const Channel1dView& geom, double dt,
                    const Step1dOptions& opt);

// Applies dt * phi to (A, Q).  Returns false and leaves the state untouched
// if any area would become negative, so the caller can retry with a smaller
// step.
bool apply_coupling_flux(ChannelState1d& s, const CouplingFlux& phi, double dt);

// cfl * min over wet cells of dx / (|u| + sqrt(g A / B)); +inf if all dry.
double stable_dt_1d(const ChannelState1d& s, const Channel1dView& geom, double cfl,
                    double gravity = kGravity, double dry_depth = kDryDepth);

}  // namespace swflood
