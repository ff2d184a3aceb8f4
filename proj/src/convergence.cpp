#include "dstable/convergence.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dstable/error.hpp"

namespace dstable {

namespace {

// Index of the grid point closest (in log) to target.
std::size_t nearest_log(const Grid& g, double target) {
  std::size_t best = 0;
  double dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double d = std::abs(std::log(g.points[i] / target));
    if (d < dist) {
      dist = d;
      best = i;
    }
  }
  return best;
}

constexpr double kDivergentGrowth = 2.0;

}  // namespace

LaplaceFunction as_function(const LaplaceFamily& family) {
  validate(family);
  return [family](double s) { return laplace_eval(family, s); };
}

LaplaceFunction exponential_transform(double mean) {
  if (!(mean > 0.0)) throw DomainError("exponential_transform: mean must be > 0");
  return [mean](double s) { return 1.0 / (1.0 + mean * s); };
}

double family_mean(const LaplaceFamily& family) {
  validate(family);
  if (const auto* g = std::get_if<Gamma>(&family)) return g->b * g->gamma_shape;
  const auto& t = std::get<TemperedStable>(family);
  const double scale = std::pow(t.lambda, t.alpha) * (1.0 + std::tan(std::numbers::pi * t.alpha / 2.0));
  return scale * t.alpha * std::pow(t.h, t.alpha - 1.0);
}

LaplaceFunction matched_exponential(const LaplaceFamily& family) {
  return exponential_transform(family_mean(family));
}

double normalized_sum_transform(const LaplaceFunction& h, const LaplaceFamily& family, int n, double s) {
  if (!(s >= 0.0)) throw DomainError("normalized_sum_transform: s must be >= 0");
  const double inner = h(gfun_neglog(family, n, s));
  return n == 1 ? inner : std::pow(inner, n);
}

ConditionA condition_a(const LaplaceFunction& h, const LaplaceFamily& family, double a, const Grid& s_grid,
                       Exec exec) {
  validate(family);
  if (!(a > 0.0)) throw DomainError("condition_a: a must be > 0");
  if (s_grid.size() < 2) throw DomainError("condition_a: grid needs at least two points");
  std::vector<double> ratio(s_grid.size());
  kernels::map<double>(exec, ratio, [&](std::size_t i) {
    const double s = s_grid.points[i];
    return std::abs(h(s) - laplace_eval(family, s)) / std::pow(s, a);
  });
  ConditionA out;
  const auto sup = kernels::sup_serial(ratio.size(), [&](std::size_t i) { return ratio[i]; });
  out.sup = sup.value;
  out.argmax_s = s_grid.points[sup.index];

  const double s_lo = s_grid.points.front();
  const double s_hi = s_grid.points.back();
  const std::size_t up = nearest_log(s_grid, 10.0 * s_lo);
  const std::size_t down = nearest_log(s_grid, s_hi / 10.0);
  auto growth = [](double edge, double inner) {
    if (inner == 0.0) return edge == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return edge / inner;
  };
  out.lower_edge_growth = growth(ratio.front(), ratio[up]);
  out.upper_edge_growth = growth(ratio.back(), ratio[down]);
  // A sup sitting at a grid edge that is still rising toward it.
  out.diverging = (sup.index == 0 && out.lower_edge_growth > kDivergentGrowth) ||
                  (sup.index + 1 == ratio.size() && out.upper_edge_growth > kDivergentGrowth);
  return out;
}

double g_inverse(const LaplaceFamily& family, int n, double s) {
  validate(family);
  if (n < 1) throw DomainError("g_inverse: n must be >= 1");
  if (!(s > 0.0)) throw DomainError("g_inverse: s must be > 0");
  if (n == 1) return s;  // g_1(s) = e^{-s}
  if (const auto* g = std::get_if<Gamma>(&family)) return std::expm1(n * std::log1p(g->b * s)) / g->b;

  // -log g_n is increasing from 0; bracket then bisect.
  double lo = 0.0;
  double hi = s;
  int expansions = 0;
  while (gfun_neglog(family, n, hi) < s) {
    lo = hi;
    hi *= 2.0;
    if (++expansions > 2000 || !std::isfinite(hi))
      throw InversionError("g_inverse: failed to bracket the root", lo, hi);
  }
  for (int it = 0; it < 400; ++it) {
    if (hi - lo <= 1e-12 * hi) return 0.5 * (lo + hi);
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return mid;
    if (gfun_neglog(family, n, mid) < s)
      lo = mid;
    else
      hi = mid;
  }
  throw InversionError("g_inverse: bisection did not converge", lo, hi);
}

std::vector<double> condition_b(const LaplaceFamily& family, double a, const std::vector<int>& n_list,
                                const Grid& s_grid, Exec exec) {
  validate(family);
  if (!(a > 0.0)) throw DomainError("condition_b: a must be > 0");
  if (s_grid.empty()) throw DomainError("condition_b: empty grid");
  std::vector<double> out;
  out.reserve(n_list.size());
  for (int n : n_list) {
    const auto sup = kernels::sup(exec, s_grid.size(), [&](std::size_t i) {
      const double s = s_grid.points[i];
      const double y = g_inverse(family, n, s);
      if (std::isinf(y)) return 0.0;
      // n s^a / y^a = n (s / y)^a, avoiding overflow in y^a
      return n * std::pow(s / y, a);
    });
    out.push_back(sup.value);
  }
  return out;
}

ConvergenceCurve convergence_curve(const LaplaceFunction& h, const LaplaceFamily& family,
                                   const std::vector<int>& n_list, double a, const Grid& s_grid, Exec exec) {
  validate(family);
  ConvergenceCurve curve;
  curve.condition_a = condition_a(h, family, a, s_grid, exec);
  if (curve.condition_a.diverging || !std::isfinite(curve.condition_a.sup)) {
    std::ostringstream os;
    os << "condition (a) fails on the grid: sup |h - L| / s^" << a << " = " << curve.condition_a.sup
       << " still growing toward the grid edge (growth x" << curve.condition_a.lower_edge_growth << " per decade)";
    curve.warnings.push_back(os.str());
  }
  curve.condition_b = condition_b(family, a, n_list, s_grid, exec);
  for (std::size_t i = 1; i < curve.condition_b.size(); ++i) {
    if (n_list[i] > n_list[i - 1] && !(curve.condition_b[i] < curve.condition_b[i - 1])) {
      curve.warnings.push_back("condition (b) is not decreasing at n = " + std::to_string(n_list[i]));
      break;
    }
  }
  for (int n : n_list) {
    const auto sup = kernels::sup(exec, s_grid.size(), [&](std::size_t i) {
      const double s = s_grid.points[i];
      return std::abs(normalized_sum_transform(h, family, n, s) - laplace_eval(family, s));
    });
    curve.points.push_back({n, sup.value});
  }
  return curve;
}

}  // namespace dstable
