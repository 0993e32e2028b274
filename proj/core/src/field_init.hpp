#pragma once

#include <cmath>
#include <vector>

#include "swflood/config.hpp"
#include "swflood/geometry.hpp"
#include "swflood/swe2d.hpp"

namespace swflood::detail {

// Still-water-plus-patches initial condition; the last patch covering a cell
// center wins.  Depths are measured above the local reference topography.
inline void fill_initial_depth(Field2d& f, const SimulationConfig& c) {
  const TensorGrid& g = f.grid;
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.ny(); ++j) {
      const double x = g.x_center(i);
      const double y = g.y_center(j);
      double d = c.init_depth;
      double u = 0.0, v = 0.0;
      for (const InitPatch& p : c.init) {
        if (x >= p.x0 && x <= p.x1 && y >= p.y0 && y <= p.y1) {
          d = p.depth;
          u = p.u;
          v = p.v;
        }
      }
      const int cell = g.index(i, j);
      f.h[cell] = d;
      f.qx[cell] = d > kDryDepth ? d * u : 0.0;
      f.qy[cell] = d > kDryDepth ? d * v : 0.0;
    }
  }
}

inline std::vector<double> channel_x_edges(const SimulationConfig& c) {
  std::vector<double> e(c.channel_cells + 1);
  for (int k = 0; k <= c.channel_cells; ++k) {
    e[k] = c.channel_x0 + (c.channel_x1 - c.channel_x0) * k / c.channel_cells;
  }
  e.front() = c.channel_x0;
  e.back() = c.channel_x1;
  return e;
}

// Rectangular channel geometry with `rows` lateral sub-cells; wall_flat makes
// the wall coincide with the bed (no activation elevation, straight walls
// from the bed up), used by the models that have no layer split.
inline ChannelGeometry build_channel_geometry(const SimulationConfig& c, int rows,
                                              bool wall_flat) {
  ChannelGeometry::Input in;
  in.x_edges = channel_x_edges(c);
  in.lateral_cells = rows;
  in.dy.assign(static_cast<std::size_t>(c.channel_cells) * rows,
               (c.channel_y1 - c.channel_y0) / rows);
  in.bed.assign(static_cast<std::size_t>(c.channel_cells) * rows, c.channel_bed);
  in.wall.resize(c.channel_cells);
  for (int i = 0; i < c.channel_cells; ++i) {
    const double xc = 0.5 * (in.x_edges[i] + in.x_edges[i + 1]);
    in.wall[i] = wall_flat ? c.channel_bed : c.wall_elevation(xc);
  }
  return ChannelGeometry::build(std::move(in));
}

// Maps channel column i to the floodplain column under it (-1 outside the
// floodplain extent) and flags the columns whose bank edge is open.
inline void map_bank_columns(const SimulationConfig& c, const ChannelGeometry& geom,
                             std::vector<int>& fp_col, std::vector<std::uint8_t>& open) {
  const int n = geom.cells();
  fp_col.assign(n, -1);
  open.assign(n, 0);
  if (!c.has_floodplain) return;
  const double dx = (c.channel_x1 - c.channel_x0) / c.channel_cells;
  const int off = static_cast<int>(std::lround((c.fp_x0 - c.channel_x0) / dx));
  for (int i = 0; i < n; ++i) {
    const int k = i - off;
    if (k < 0 || k >= c.fp_nx) continue;
    fp_col[i] = k;
    const double xc = geom.x_center(i);
    if (xc >= c.bank_x0 && xc <= c.bank_x1) open[i] = 1;
  }
}

}  // namespace swflood::detail
