#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace dstable {

struct Grid {
  std::vector<double> points;
  std::string spec;

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
};

// n points, endpoints included.
Grid uniform_grid(double lo, double hi, std::size_t n);
Grid log_grid(double lo, double hi, std::size_t n);

// 2001 points on [0, 1 - 1e-6].
Grid default_z_grid();
// 200 log-spaced points on [1e-3, 1e3].
Grid default_s_grid();
// 400 log-spaced points on [1e-4, 1e4], the stand-in for sup over s > 0.
Grid theorem_s_grid();

// Same range and spacing law with 2n - 1 points (every old point retained).
Grid refine(const Grid& grid);

// Sup-norm residual of an identity over a grid.
struct ResidualReport {
  double sup_residual = 0.0;
  double argmax_point = 0.0;
  std::string grid_spec;
};

}  // namespace dstable
