#pragma once

#include <string>
#include <vector>

#include "swflood/config.hpp"

namespace swflood {

struct CompareResult {
  std::vector<std::string> probe_names;
  std::vector<double> probe_l2;  // sqrt(int (eta_cand - eta_ref)^2 dt) per probe
  double field_l2 = 0.0;         // final-snapshot surface over shared grid points
  int shared_points = 0;
};

// Compares two run directories produced by run_simulation.  Probe series must
// share the sampling grid; the final-field error is taken over grid points
// both snapshots contain (the floodplain always qualifies; channel points
// only where the lateral grids coincide).
CompareResult compare_runs(const std::string& ref_dir, const std::string& cand_dir,
                           const std::vector<ProbeSpec>& probes);

// Probe definitions from a text file of "name x y" lines (# comments).
std::vector<ProbeSpec> load_probes(const std::string& path);

}  // namespace swflood
