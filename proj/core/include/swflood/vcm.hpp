#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "swflood/bank.hpp"
#include "swflood/config.hpp"
#include "swflood/geometry.hpp"
#include "swflood/simulation.hpp"
#include "swflood/swe1d.hpp"
#include "swflood/swe2d.hpp"

namespace swflood {

// Vertical split of full channel fields into the 1D totals and the layer
// above the wall elevation.
struct ChannelSplit {
  ChannelState1d totals;  // A = integrated depth, Q = integrated x discharge
  Field2d upper;          // z_ref = lower-layer surface, h = depth above it
};

// Splits (H, qx, qy) given on the channel sub-grid.  Cells that are not full
// (every surface at or below the wall elevation) leave the upper layer exactly
// zero; full cells put the excess above the wall into the upper layer moving
// at the local column velocity.
ChannelSplit distribute_channel_state(const ChannelGeometry& geom, TensorGrid grid,
                                      std::span<const double> H,
                                      std::span<const double> qx,
                                      std::span<const double> qy,
                                      double dry = kDryDepth);

// Inputs of the per-cell layer reconciliation after both layers stepped.
struct ReconcileIn {
  double area_new = 0.0;       // A after the 1D step plus coupling flux
  double discharge_new = 0.0;  // Q likewise
  double bankfull_area = 0.0;
  double width = 0.0;
  std::span<const double> dy;
  std::span<const double> h2;  // upper layer after its own step
  std::span<const double> q2x;
  std::span<const double> q2y;
  double dt = 0.0;
  double dry = kDryDepth;
};

struct ReconcileOut {
  double area1 = 0.0;      // min(A, bankfull_area), exactly
  double discharge1 = 0.0; // Q minus the upper-layer discharge
  std::vector<double> h2, q2x, q2y;
  std::vector<double> exchange_rate;  // (h2_new - h2_old) / dt per sub-cell
  std::vector<double> iface_ux, iface_uy;  // interface velocity used
};

// Rebalances the vertical split so the lower layer holds min(A, bankfull)
// and the upper layer the excess, removing or adding water uniformly where
// possible and clearing dried sub-cells exactly.  Momentum moves with the
// exchanged water at the interface velocity.  Throws std::runtime_error if
// the gap-removal sweep fails to converge within 10^4 passes.
ReconcileOut reconcile_exchange(const ReconcileIn& in);

// Recombined full fields on the channel sub-grid.
struct AssembledChannel {
  std::vector<double> H, qx, qy;
};

AssembledChannel assemble_channel(const ChannelGeometry& geom,
                                  std::span<const double> area1,
                                  std::span<const double> discharge1,
                                  const Field2d& upper, double dry = kDryDepth);

// The layered channel model: a 1D lower layer coupled to a 2D upper layer in
// the channel plus a 2D floodplain, exchanging through stitched bank edges.
class VcmSimulation : public Simulation {
 public:
  explicit VcmSimulation(const SimulationConfig& cfg);

  const char* name() const override { return "vcm"; }
  double stable_dt(double cfl) const override;
  StepResult advance(double dt) override;
  double channel_volume() const override;
  double floodplain_volume() const override;
  double surface_at(double x, double y) const override;
  void write_snapshots(const std::string& dir, double t) const override;
  void audit_invariants() const override;
  double max_lateral_spread() const override { return max_spread_; }

  const ChannelGeometry& geometry() const { return geom_; }
  const ChannelState1d& totals() const { return ch_; }
  std::span<const double> lower_area() const { return a1_; }
  std::span<const double> lower_discharge() const { return q1_; }
  const Field2d& upper() const { return upper_; }
  const Field2d& floodplain() const { return fp_; }
  AssembledChannel assembled() const;
  bool any_open_bank_cell_full() const;

 private:
  bool attempt(double dt, StepResult& out);
  void refresh_apparent_topography();
  void build_activity_mask();

  SimulationConfig cfg_;
  ChannelGeometry geom_;
  ChannelState1d ch_;
  std::vector<double> a1_, q1_;
  Field2d upper_;
  Field2d fp_;

  std::vector<std::uint8_t> bank_open_;     // per channel column
  std::vector<int> fp_col_;                 // floodplain column per channel column
  std::vector<std::uint8_t> south_ext_;     // upper grid: bank edges owned by the coupler
  std::vector<std::uint8_t> north_ext_;     // floodplain grid
  std::vector<std::uint8_t> mask_;
  CouplingFlux phi_;
  std::vector<double> exch_rate_, iface_ux_, iface_uy_;
  std::vector<double> h1_work_, dy_row_;
  std::vector<double> bed_1d_, width_1d_, dx_1d_;
  double max_spread_ = 0.0;

  Step2dOptions upper_opt_;
  Step2dOptions fp_opt_;
  Step1dOptions ch_opt_;
};

}  // namespace swflood
