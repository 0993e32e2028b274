#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "swflood/constants.hpp"
#include "swflood/fv_core.hpp"
#include "swflood/grid.hpp"

namespace swflood {

enum class SideBc { wall, open };
enum class TopographyMode { plain_bed, apparent_topography };

// Conserved shallow-water state on a tensor grid.  z_ref is the reference
// topography the depth h sits on: the bed in plain_bed mode, the lower-layer
// surface in apparent_topography mode.
struct Field2d {
  TensorGrid grid;
  std::vector<double> z_ref;
  std::vector<double> h;
  std::vector<double> qx;
  std::vector<double> qy;

  static Field2d zeros(TensorGrid g);
  int idx(int i, int j) const { return grid.index(i, j); }
};

// External per-cell contribution, precomputed by a coupler for edges this
// solver does not own (bank edges between patches).  Rates are d/dt values
// already divided by the cell area and include the momentum correction of the
// receiving side.
struct BankTap {
  int cell = 0;
  double rate_h = 0.0;
  double rate_qx = 0.0;
  double rate_qy = 0.0;
};

// Conservative fluxes per edge in the global frame plus edge lengths.
// x edges are indexed i * ny + j for i in [0, nx], y edges i * (ny + 1) + j
// for j in [0, ny].  Only edges the step actually computed are filled.
struct EdgeFluxRecord {
  std::vector<FluxXY> x_flux;
  std::vector<double> x_len;
  std::vector<FluxXY> y_flux;
  std::vector<double> y_len;
  void reset(const TensorGrid& g);
};

struct Step2dOptions {
  TopographyMode mode = TopographyMode::plain_bed;
  SideBc west = SideBc::wall;
  SideBc east = SideBc::wall;
  SideBc south = SideBc::wall;
  SideBc north = SideBc::wall;
  // Per-column flags: a nonzero entry means the coupler owns that boundary
  // edge and the step must not apply its own boundary condition there.
  const std::vector<std::uint8_t>* south_external = nullptr;
  const std::vector<std::uint8_t>* north_external = nullptr;
  // Optional per-cell activity mask; edges with both endpoints inactive are
  // skipped and inactive cells are not updated.  The caller must include every
  // cell that can gain or lose water this step.
  const std::vector<std::uint8_t>* active = nullptr;
  double manning_n = 0.0;
  double gravity = kGravity;
  double dry_depth = kDryDepth;
};

struct Step2dStats {
  double boundary_inflow_rate = 0.0;  // m^3/s through open sides, inflow positive
  double clipped_volume = 0.0;        // m^3 added by clipping negative depths
};

// One first-order finite-volume step, dimensionally split into an x sweep and
// a y sweep so the per-direction CFL bound of stable_dt_2d suffices on
// anisotropic cells: HLL fluxes on hydrostatically reconstructed edge states,
// per-cell momentum corrections, external taps (lateral, applied in the y
// sweep), negativity clipping and dry-cell discharge zeroing per sweep, then
// semi-implicit Manning friction.  Throws std::runtime_error if a non-finite
// value appears.
Step2dStats step_2d(Field2d& f, double dt, const Step2dOptions& opt,
                    std::span<const BankTap> taps = {},
                    EdgeFluxRecord* record = nullptr);

// cfl * min over wet (and active, if masked) cells of the per-direction
// crossing times; +inf if everything is dry.
double stable_dt_2d(const Field2d& f, double cfl,
                    const std::vector<std::uint8_t>* active = nullptr,
                    double gravity = kGravity, double dry_depth = kDryDepth);

// Semi-implicit Manning friction on one state vector entry.
inline void apply_manning(double& qx, double& qy, double h, double n, double g,
                          double dt, double dry) {
  if (h <= dry || n <= 0.0) return;
  const double u = qx / h;
  const double v = qy / h;
  const double speed = std::sqrt(u * u + v * v);
  const double denom = 1.0 + dt * g * n * n * speed / std::pow(h, 4.0 / 3.0);
  qx /= denom;
  qy /= denom;
}

}  // namespace swflood
