#pragma once

#include <cstdint>
#include <vector>

#include "swflood/config.hpp"
#include "swflood/geometry.hpp"
#include "swflood/simulation.hpp"
#include "swflood/swe1d.hpp"
#include "swflood/swe2d.hpp"

namespace swflood {

// Flux-based baseline: a plain 1D channel exchanging with the 2D floodplain
// through bank fluxes evaluated against a ghost channel state (depth from the
// straight-wall surface, zero bank-normal discharge, tangential velocity from
// Q/A).  Mass goes to both sides, momentum only to the floodplain, and the 1D
// momentum receives no coupling term.
class FbmSimulation : public Simulation {
 public:
  explicit FbmSimulation(const SimulationConfig& cfg);

  const char* name() const override { return "fbm"; }
  double stable_dt(double cfl) const override;
  StepResult advance(double dt) override;
  double channel_volume() const override;
  double floodplain_volume() const override;
  double surface_at(double x, double y) const override;
  void write_snapshots(const std::string& dir, double t) const override;

  const ChannelGeometry& geometry() const { return geom_; }
  const ChannelState1d& channel() const { return ch_; }
  const Field2d& floodplain() const { return fp_; }

 private:
  bool attempt(double dt, StepResult& out);

  SimulationConfig cfg_;
  ChannelGeometry geom_;
  ChannelState1d ch_;
  Field2d fp_;
  std::vector<std::uint8_t> bank_open_;
  std::vector<int> fp_col_;
  std::vector<std::uint8_t> north_ext_;
  CouplingFlux phi_;
  std::vector<double> bed_1d_, width_1d_, dx_1d_;
  Step2dOptions fp_opt_;
  Step1dOptions ch_opt_;
};

}  // namespace swflood
