#pragma once

#include <span>
#include <vector>

namespace swflood {

// Discrete channel cross-section geometry.
//
// The channel is split longitudinally into cells i (edges x_edges) and each
// cell laterally into sub-cells j of width dy(i, j) with bed elevation
// bed(i, j).  Above the per-cell wall elevation the section continues with
// straight vertical walls at the full top width, so the area/surface relation
// stays invertible for arbitrarily large areas.
class ChannelGeometry {
 public:
  struct Input {
    std::vector<double> x_edges;  // size cells + 1, strictly increasing
    int lateral_cells = 0;
    std::vector<double> dy;    // per (i, j), flattened i * lateral_cells + j, > 0
    std::vector<double> bed;   // per (i, j)
    std::vector<double> wall;  // per i, >= min_j bed(i, j)
  };

  // Validates and precomputes per-cell aggregates.
  // Throws std::invalid_argument on non-positive widths, non-increasing x
  // edges, size mismatches, or a wall below the bed minimum.
  static ChannelGeometry build(Input in);

  int cells() const { return n_; }
  int lateral_cells() const { return ny_; }

  double x_edge(int i) const { return in_.x_edges[i]; }
  double x_center(int i) const { return 0.5 * (in_.x_edges[i] + in_.x_edges[i + 1]); }
  double dx(int i) const { return in_.x_edges[i + 1] - in_.x_edges[i]; }

  double bed(int i, int j) const { return in_.bed[i * ny_ + j]; }
  double dy(int i, int j) const { return in_.dy[i * ny_ + j]; }

  double bed_min(int i) const { return bed_min_[i]; }          // Z_b
  double wall_elevation(int i) const { return in_.wall[i]; }   // activation elevation
  double bankfull_depth(int i, int j) const { return bankfull_depth_[i * ny_ + j]; }
  double top_width(int i) const { return top_width_[i]; }      // B = sum dy
  double bankfull_area(int i) const { return bankfull_area_[i]; }  // A at the wall

  // Free-surface elevation eta with wetted_area(i, eta) == area.
  // Closed form in the flat-bed and above-wall regimes, bisection to 1e-12 m
  // otherwise.  area == 0 returns the bed minimum.
  double surface_for_area(int i, double area) const;

  // Per-sub-cell depths max(0, eta - bed) for the surface matching area.
  // out must have lateral_cells() entries.
  void depth_profile(int i, double area, std::span<double> out) const;

  // sum_j max(0, eta - bed(i, j)) dy(i, j); continues with the full top width
  // above the wall elevation.
  double wetted_area(int i, double eta) const;

 private:
  Input in_;
  int n_ = 0;
  int ny_ = 0;
  std::vector<double> bed_min_;
  std::vector<double> bankfull_depth_;
  std::vector<double> top_width_;
  std::vector<double> bankfull_area_;
  std::vector<char> flat_bed_;
};

}  // namespace swflood
