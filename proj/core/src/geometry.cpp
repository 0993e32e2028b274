#include "swflood/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "swflood/constants.hpp"

namespace swflood {

ChannelGeometry ChannelGeometry::build(Input in) {
  ChannelGeometry g;
  const int n = static_cast<int>(in.x_edges.size()) - 1;
  if (n < 1) throw std::invalid_argument("geometry: need at least one cell");
  if (in.lateral_cells < 1) throw std::invalid_argument("geometry: need at least one sub-cell");
  const int ny = in.lateral_cells;
  const auto cells = static_cast<std::size_t>(n) * ny;
  if (in.dy.size() != cells || in.bed.size() != cells) {
    throw std::invalid_argument("geometry: dy/bed size mismatch");
  }
  if (in.wall.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("geometry: wall size mismatch");
  }
  for (int i = 0; i < n; ++i) {
    if (!(in.x_edges[i + 1] > in.x_edges[i])) {
      throw std::invalid_argument("geometry: x edges not increasing at cell " + std::to_string(i));
    }
  }

  g.n_ = n;
  g.ny_ = ny;
  g.bed_min_.resize(n);
  g.top_width_.resize(n);
  g.bankfull_area_.resize(n);
  g.bankfull_depth_.resize(cells);
  g.flat_bed_.resize(n);

  for (int i = 0; i < n; ++i) {
    double zmin = in.bed[i * ny];
    double zmax = zmin;
    double width = 0.0;
    for (int j = 0; j < ny; ++j) {
      const double w = in.dy[i * ny + j];
      if (!(w > 0.0)) {
        throw std::invalid_argument("geometry: non-positive sub-cell width at cell " +
                                    std::to_string(i));
      }
      width += w;
      zmin = std::min(zmin, in.bed[i * ny + j]);
      zmax = std::max(zmax, in.bed[i * ny + j]);
    }
    if (in.wall[i] < zmin) {
      throw std::invalid_argument("geometry: wall below bed minimum at cell " +
                                  std::to_string(i));
    }
    double area = 0.0;
    for (int j = 0; j < ny; ++j) {
      const double beta = std::max(0.0, in.wall[i] - in.bed[i * ny + j]);
      g.bankfull_depth_[i * ny + j] = beta;
      area += beta * in.dy[i * ny + j];
    }
    g.bed_min_[i] = zmin;
    g.top_width_[i] = width;
    g.bankfull_area_[i] = area;
    g.flat_bed_[i] = (zmax == zmin) ? 1 : 0;
  }
  g.in_ = std::move(in);
  return g;
}

double ChannelGeometry::wetted_area(int i, double eta) const {
  const double wall = in_.wall[i];
  if (eta > wall) return bankfull_area_[i] + (eta - wall) * top_width_[i];
  double area = 0.0;
  for (int j = 0; j < ny_; ++j) {
    area += std::max(0.0, eta - in_.bed[i * ny_ + j]) * in_.dy[i * ny_ + j];
  }
  return area;
}

double ChannelGeometry::surface_for_area(int i, double area) const {
  if (area < 0.0) throw std::invalid_argument("surface_for_area: negative area");
  if (area == 0.0) return bed_min_[i];
  const double ac = bankfull_area_[i];
  if (area >= ac) {
    // Straight-wall regime; exact at area == ac, also covers ac == 0.
    return in_.wall[i] + (area - ac) / top_width_[i];
  }
  if (flat_bed_[i]) return bed_min_[i] + area / top_width_[i];

  double lo = bed_min_[i];
  double hi = in_.wall[i];
  while (hi - lo > kSurfaceTol) {
    const double mid = 0.5 * (lo + hi);
    if (wetted_area(i, mid) < area) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void ChannelGeometry::depth_profile(int i, double area, std::span<double> out) const {
  if (out.size() != static_cast<std::size_t>(ny_)) {
    throw std::invalid_argument("depth_profile: output span size mismatch");
  }
  if (area <= 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  // Exactly bankfull area maps to exactly the bankfull depths, so that a full
  // lower layer reproduces the wall elevation bit for bit.
  if (area == bankfull_area_[i]) {
    for (int j = 0; j < ny_; ++j) out[j] = bankfull_depth_[i * ny_ + j];
    return;
  }
  const double eta = surface_for_area(i, area);
  for (int j = 0; j < ny_; ++j) {
    out[j] = std::max(0.0, eta - in_.bed[i * ny_ + j]);
  }
}

}  // namespace swflood
