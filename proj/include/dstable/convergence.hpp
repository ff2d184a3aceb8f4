#pragma once

// Transform-domain harness for the limit theorem: if |h(s) - L(s)| = O(s^a)
// and n s^a / |g_n^{-1}(e^{-s})|^a -> 0, the g_n-normalized sum of n i.i.d.
// draws with Laplace transform h converges to the casual-stable law L.

#include <functional>
#include <string>
#include <vector>

#include "dstable/grid.hpp"
#include "dstable/kernels.hpp"
#include "dstable/transforms.hpp"

namespace dstable {

using LaplaceFunction = std::function<double(double)>;

LaplaceFunction as_function(const LaplaceFamily& family);
// 1 / (1 + mean s).
LaplaceFunction exponential_transform(double mean);
// -L'(0).
double family_mean(const LaplaceFamily& family);
// The exponential law with the family's mean.
LaplaceFunction matched_exponential(const LaplaceFamily& family);

// h(-log g_n(s))^n.
double normalized_sum_transform(const LaplaceFunction& h, const LaplaceFamily& family, int n, double s);

struct ConditionA {
  double sup = 0.0;
  double argmax_s = 0.0;
  // value at the grid's smallest point over the value one decade above it;
  // a ratio well above 1 means the sup escapes as s -> 0.
  double lower_edge_growth = 1.0;
  double upper_edge_growth = 1.0;
  bool diverging = false;
};

// sup_s |h(s) - L(s)| / s^a.
ConditionA condition_a(const LaplaceFunction& h, const LaplaceFamily& family, double a,
                       const Grid& s_grid = theorem_s_grid(), Exec exec = Exec::parallel);

// For each n: sup_s n s^a / |g_n^{-1}(e^{-s})|^a.
std::vector<double> condition_b(const LaplaceFamily& family, double a, const std::vector<int>& n_list,
                                const Grid& s_grid = theorem_s_grid(), Exec exec = Exec::parallel);

// y with g_n(y) = e^{-s}. Closed form for Gamma, ((1 + b s)^n - 1) / b;
// bisection to 1e-12 relative for TemperedStable (InversionError on failure).
double g_inverse(const LaplaceFamily& family, int n, double s);

struct CurvePoint {
  int n;
  double sup_distance;
};

struct ConvergenceCurve {
  std::vector<CurvePoint> points;
  ConditionA condition_a;
  std::vector<double> condition_b;
  std::vector<std::string> warnings;
};

// sup_s |h(-log g_n(s))^n - L(s)| for each n, with both theorem conditions
// evaluated first; a failed condition is a warning, not an error.
ConvergenceCurve convergence_curve(const LaplaceFunction& h, const LaplaceFamily& family,
                                   const std::vector<int>& n_list, double a = 2.0,
                                   const Grid& s_grid = theorem_s_grid(), Exec exec = Exec::parallel);

}  // namespace dstable
