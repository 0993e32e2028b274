#pragma once

#include "swflood/fv_core.hpp"
#include "swflood/swe2d.hpp"

namespace swflood {

// One conforming bank edge between a floodplain cell (south of the edge) and
// the channel side (north of the edge).  The channel side is either a 2D cell
// (full-2D reference, or the active upper layer) or a ghost state built from
// the 1D data.
struct BankSide {
  double z = 0.0;   // reference topography under the depth
  double h = 0.0;
  double qx = 0.0;
  double qy = 0.0;
};

struct BankGeometry {
  double edge_len = 0.0;
  double fp_area = 0.0;  // floodplain cell area
  double ch_area = 0.0;  // channel cell area; ignored for ghost sides
  int fp_cell = -1;
  int ch_cell = -1;      // -1 when the channel side is a ghost
};

// Flux through the edge with the normal pointing into the channel, plus
// ready-to-apply taps for each side.  flux is per unit edge length in the
// global frame, so flux.mass > 0 moves water from the floodplain into the
// channel.  ch_tap is meaningful only when ch_cell >= 0.
struct BankExchange {
  FluxXY flux;
  BankTap fp_tap;
  BankTap ch_tap;
};

BankExchange bank_edge_exchange(const BankGeometry& geom, const BankSide& fp,
                                const BankSide& ch, double gravity = kGravity,
                                double dry = kDryDepth);

}  // namespace swflood
