#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace swflood {

// Structured tensor-product grid: cell (i, j) spans
// [x_edges[i], x_edges[i+1]] x [y_edges[j], y_edges[j+1]].
// Cells are stored row-major with i outermost: index = i * ny + j.
struct TensorGrid {
  std::vector<double> x_edges;
  std::vector<double> y_edges;

  static TensorGrid uniform(double x0, double x1, int nx, double y0, double y1, int ny) {
    TensorGrid g;
    g.x_edges.resize(nx + 1);
    g.y_edges.resize(ny + 1);
    for (int i = 0; i <= nx; ++i) g.x_edges[i] = x0 + (x1 - x0) * i / nx;
    for (int j = 0; j <= ny; ++j) g.y_edges[j] = y0 + (y1 - y0) * j / ny;
    g.x_edges[nx] = x1;
    g.y_edges[ny] = y1;
    return g;
  }

  int nx() const { return static_cast<int>(x_edges.size()) - 1; }
  int ny() const { return static_cast<int>(y_edges.size()) - 1; }
  int cells() const { return nx() * ny(); }
  int index(int i, int j) const { return i * ny() + j; }

  double dx(int i) const { return x_edges[i + 1] - x_edges[i]; }
  double dy(int j) const { return y_edges[j + 1] - y_edges[j]; }
  double area(int i, int j) const { return dx(i) * dy(j); }
  double x_center(int i) const { return 0.5 * (x_edges[i] + x_edges[i + 1]); }
  double y_center(int j) const { return 0.5 * (y_edges[j] + y_edges[j + 1]); }

  bool contains(double x, double y) const {
    return x >= x_edges.front() && x <= x_edges.back() && y >= y_edges.front() &&
           y <= y_edges.back();
  }
  // Index of the cell containing the point; the point must be inside the grid.
  int locate_x(double x) const {
    const auto it = std::upper_bound(x_edges.begin(), x_edges.end(), x);
    const int i = static_cast<int>(it - x_edges.begin()) - 1;
    return std::clamp(i, 0, nx() - 1);
  }
  int locate_y(double y) const {
    const auto it = std::upper_bound(y_edges.begin(), y_edges.end(), y);
    const int j = static_cast<int>(it - y_edges.begin()) - 1;
    return std::clamp(j, 0, ny() - 1);
  }
};

}  // namespace swflood
