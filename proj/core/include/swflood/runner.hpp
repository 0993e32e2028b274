#pragma once

#include <string>
#include <vector>

#include "swflood/config.hpp"
#include "swflood/simulation.hpp"

namespace swflood {

struct RunReport {
  std::string method;
  std::string out_dir;
  int steps = 0;
  double final_time = 0.0;
  double wall_seconds = 0.0;
  double initial_volume = 0.0;
  double final_volume = 0.0;
  double boundary_net = 0.0;          // m^3, inflow positive
  double clipped_net = 0.0;           // m^3 added by clipping
  double max_ledger_residual = 0.0;   // m^3, worst per-step budget error
  double max_lateral_spread = 0.0;    // m, layered channel diagnostic
  std::vector<double> probe_times;
  std::vector<std::vector<double>> probe_series;  // per probe, on probe_times
};

// Runs sim to cfg.t_end, writing ledger.csv, probes.csv, run.csv and the
// per-epoch snapshots into out_dir, plus timing.txt (wall clock; kept out of
// the CSVs so reruns stay byte-identical).  When cfg.audit is set, throws
// std::runtime_error if the per-step volume budget drifts beyond 1e-10
// relative or a model invariant fails.
RunReport run_simulation(Simulation& sim, const SimulationConfig& cfg,
                         const std::string& out_dir);

}  // namespace swflood
