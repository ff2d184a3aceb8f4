#include "dstable/grid.hpp"

#include <cmath>
#include <sstream>

#include "dstable/error.hpp"

namespace dstable {

namespace {

std::string describe(const char* kind, double lo, double hi, std::size_t n) {
  std::ostringstream os;
  os.precision(17);
  os << kind << '[' << lo << ',' << hi << "]x" << n;
  return os.str();
}

}  // namespace

Grid uniform_grid(double lo, double hi, std::size_t n) {
  if (n == 0 || !(hi >= lo)) throw DomainError("uniform_grid: need n >= 1 and hi >= lo");
  Grid g{std::vector<double>(n), describe("uniform", lo, hi, n)};
  if (n == 1) {
    g.points[0] = lo;
    return g;
  }
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g.points[i] = lo + step * static_cast<double>(i);
  g.points.back() = hi;
  return g;
}

Grid log_grid(double lo, double hi, std::size_t n) {
  if (n == 0 || !(lo > 0.0) || !(hi >= lo)) throw DomainError("log_grid: need n >= 1 and 0 < lo <= hi");
  Grid g{std::vector<double>(n), describe("log", lo, hi, n)};
  if (n == 1) {
    g.points[0] = lo;
    return g;
  }
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g.points[i] = std::exp(a + step * static_cast<double>(i));
  g.points.front() = lo;
  g.points.back() = hi;
  return g;
}

Grid default_z_grid() { return uniform_grid(0.0, 1.0 - 1e-6, 2001); }

Grid default_s_grid() { return log_grid(1e-3, 1e3, 200); }

Grid theorem_s_grid() { return log_grid(1e-4, 1e4, 400); }

Grid refine(const Grid& grid) {
  const std::size_t n = grid.size();
  if (n < 2) return grid;
  Grid out;
  out.points.reserve(2 * n - 1);
  const bool logarithmic = grid.spec.rfind("log", 0) == 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = grid.points[i];
    const double b = grid.points[i + 1];
    out.points.push_back(a);
    out.points.push_back(logarithmic ? std::sqrt(a * b) : 0.5 * (a + b));
  }
  out.points.push_back(grid.points.back());
  std::ostringstream os;
  os << grid.spec << "/refined";
  out.spec = os.str();
  return out;
}

}  // namespace dstable
