#pragma once

#include <cstdint>
#include <vector>

#include "swflood/config.hpp"
#include "swflood/simulation.hpp"
#include "swflood/swe2d.hpp"

namespace swflood {

// Reference model: the channel meshed as a fine 2D patch, joined to the
// floodplain patch through conforming stitched bank edges.
class Full2dSimulation : public Simulation {
 public:
  explicit Full2dSimulation(const SimulationConfig& cfg);

  const char* name() const override { return "full2d"; }
  double stable_dt(double cfl) const override;
  StepResult advance(double dt) override;
  double channel_volume() const override;
  double floodplain_volume() const override;
  double surface_at(double x, double y) const override;
  void write_snapshots(const std::string& dir, double t) const override;

  const Field2d& channel() const { return ch_; }
  const Field2d& floodplain() const { return fp_; }

 private:
  SimulationConfig cfg_;
  Field2d ch_;
  Field2d fp_;
  std::vector<std::uint8_t> bank_open_;
  std::vector<int> fp_col_;
  std::vector<std::uint8_t> south_ext_;
  std::vector<std::uint8_t> north_ext_;
  Step2dOptions ch_opt_;
  Step2dOptions fp_opt_;
};

}  // namespace swflood
