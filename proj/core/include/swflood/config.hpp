#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "swflood/swe2d.hpp"

namespace swflood {

enum class Method { full2d, vcm, fbm };

const char* method_name(Method m);
Method method_from_name(const std::string& name);

struct ProbeSpec {
  std::string name;
  double x = 0.0;
  double y = 0.0;
};

// Initial condition patch; the last patch covering a cell center wins.
struct InitPatch {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  double depth = 0.0;
  double u = 0.0, v = 0.0;
};

// Full description of a simulation case: a channel strip with an optional
// floodplain patch attached south of it across an open bank window.
struct SimulationConfig {
  Method method = Method::vcm;

  // Channel strip (the floodplain, if any, adjoins its south side).
  double channel_x0 = 0, channel_x1 = 1;
  double channel_y0 = 0, channel_y1 = 1;
  int channel_cells = 1;
  int upper_rows = 1;    // lateral sub-cells of the layered channel model
  int full2d_rows = 1;   // lateral cells of the full-2D reference
  double channel_bed = 0.0;
  // Elevation at which the channel counts as full and the upper layer
  // activates; unused by full2d/fbm.
  std::function<double(double)> wall_elevation;

  // Floodplain patch.
  bool has_floodplain = false;
  double fp_x0 = 0, fp_x1 = 0, fp_y0 = 0, fp_y1 = 0;
  int fp_nx = 0, fp_ny = 0;
  double fp_bed = 0.0;

  // x window of the shared bank over which the two patches exchange water;
  // outside it the bank is a solid wall.
  double bank_x0 = 0, bank_x1 = 0;

  // Boundary conditions on the outer sides.
  SideBc channel_west = SideBc::wall;
  SideBc channel_east = SideBc::wall;
  SideBc channel_north = SideBc::wall;
  SideBc fp_west = SideBc::wall;
  SideBc fp_east = SideBc::wall;
  SideBc fp_south = SideBc::wall;

  // Initial state: still water of init_depth everywhere, then patches.
  double init_depth = 0.0;
  std::vector<InitPatch> init;

  // Numerics.
  double cfl = 0.95;
  double t_end = 10.0;
  double fallback_dt = 1e-4;  // used when everything is dry
  double manning_n = 0.0;
  double manning_n_channel = -1.0;     // < 0 inherits manning_n
  double manning_n_upper = -1.0;
  double manning_n_floodplain = -1.0;
  bool audit = true;

  // Output.
  double probe_dt = 0.01;
  std::vector<ProbeSpec> probes;
  std::vector<double> snapshot_times;  // in addition to 0 and t_end

  double manning_channel() const { return manning_n_channel < 0 ? manning_n : manning_n_channel; }
  double manning_upper() const { return manning_n_upper < 0 ? manning_n : manning_n_upper; }
  double manning_floodplain() const { return manning_n_floodplain < 0 ? manning_n : manning_n_floodplain; }
};

// Laboratory dam-break case: 19.3 m x 0.5 m flat channel, reservoir released
// into a thin film, bank fully open to a flat floodplain beyond x = 12.5.
SimulationConfig make_dam_break_floodplain_config();

// Channel flow spilling through a long lateral breach onto a floodplain
// elevated 0.5 m above the channel bed.
SimulationConfig make_elevated_floodplain_config();

// Parses a key = value config file (see configs/ and the README for the key
// reference).  Throws std::invalid_argument on unknown keys or bad values.
SimulationConfig load_config(const std::string& path);

// Grid, bank-conformality and probe validation; throws std::invalid_argument.
void validate_config(const SimulationConfig& c);

class Simulation;
std::unique_ptr<Simulation> build_simulation(const SimulationConfig& c);

}  // namespace swflood
