#include "dstable/stability.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "dstable/error.hpp"

namespace dstable {

namespace {

cplx power_n(cplx v, int n) { return n == 1 ? v : std::pow(v, static_cast<double>(n)); }

ResidualReport report(const kernels::SupResult& r, const Grid& grid) {
  return {r.value, grid.points[r.index], grid.spec};
}

void require_grid(const Grid& grid, const char* what) {
  if (grid.empty()) throw DomainError(std::string(what) + ": empty grid");
}

// The families that reduce to Example 1 with their (kappa, m).
std::optional<Example1> as_example1(const PgfFamily& family) {
  if (const auto* f = std::get_if<SvhStable>(&family)) return Example1{f->lambda, f->alpha, 0.0, 1};
  if (const auto* f = std::get_if<Example1>(&family)) return *f;
  if (const auto* f = std::get_if<FieldCitations>(&family)) return Example1{f->lambda, f->p, 1.0 - f->q, 1};
  return std::nullopt;
}

std::optional<Example1Thin> as_example1_thin(const ThinningFamily& thinning) {
  if (std::holds_alternative<Bernoulli>(thinning)) return Example1Thin{0.0, 1};
  if (const auto* f = std::get_if<Example1Thin>(&thinning)) return *f;
  return std::nullopt;
}

bool same(double a, double b) { return std::abs(a - b) <= 1e-15; }

// Stability index of the family when `thinning` is its own normalizer, so
// that p(n) = n^{-1/index}.
std::optional<double> matched_index(const PgfFamily& family, const ThinningFamily& thinning) {
  const auto e1 = as_example1(family);
  const auto t1 = as_example1_thin(thinning);
  if (e1 && t1 && same(e1->kappa, t1->kappa) && e1->m == t1->m) return e1->gamma;
  const auto* e2 = std::get_if<Example2>(&family);
  const auto* t2 = std::get_if<Example2Thin>(&thinning);
  if (e2 && t2 && same(e2->b, t2->b)) return e2->gamma;
  return std::nullopt;
}

// Closed search interval inside the admissible range.
std::pair<double, double> search_interval(const ParamRange& range) {
  const double lo = range.lo + 1e-12;
  const double hi = range.hi_closed ? range.hi : range.hi * (1.0 - 1e-12);
  return {lo, hi};
}

}  // namespace

ResidualReport discrete_stability_residual(const PgfFamily& family, const ThinningFamily& thinning, int n,
                                           double p, const Grid& grid, Exec exec) {
  validate(family);
  validate(thinning, p);
  require_grid(grid, "discrete_stability_residual");
  if (n < 1) throw DomainError("discrete_stability_residual: n must be >= 1");
  const auto r = kernels::sup(exec, grid.size(), [&](std::size_t i) {
    const UnitArg z = UnitArg::at(grid.points[i]);
    const cplx lhs = pgf_eval(family, z);
    const cplx rhs = power_n(pgf_eval(family, thinning_eval(thinning, p, z)), n);
    return std::abs(lhs - rhs);
  });
  return report(r, grid);
}

PnSolution solve_pn(const PgfFamily& family, const ThinningFamily& thinning, int n, const Grid& grid, Exec exec) {
  validate(family);
  validate(thinning);
  if (n < 1) throw DomainError("solve_pn: n must be >= 1");
  if (n == 1) return {1.0, 0.0, true};

  if (const auto index = matched_index(family, thinning)) {
    const double p = std::pow(static_cast<double>(n), -1.0 / *index);
    validate(thinning, p);  // AdmissibilityError, e.g. m > 1 needs p < kappa
    return {p, discrete_stability_residual(family, thinning, n, p, grid, exec).sup_residual, true};
  }

  const auto [lo, hi] = search_interval(admissible_range(thinning));
  const auto best = golden_section(
      [&](double p) { return discrete_stability_residual(family, thinning, n, p, grid, exec).sup_residual; }, lo, hi);
  return {best.x, best.value, false};
}

ResidualReport casual_stability_residual(const LaplaceFamily& family, int n, const Grid& s_grid, Exec exec) {
  validate(family);
  require_grid(s_grid, "casual_stability_residual");
  if (n < 1) throw DomainError("casual_stability_residual: n must be >= 1");
  const auto r = kernels::sup(exec, s_grid.size(), [&](std::size_t i) {
    const double s = s_grid.points[i];
    const double lhs = laplace_eval(family, s);
    const double rhs = std::pow(laplace_eval(family, gfun_neglog(family, n, s)), n);
    return std::abs(lhs - rhs);
  });
  return report(r, s_grid);
}

ResidualReport commutativity_residual(const ThinningFamily& thinning, double p1, double p2, const Grid& grid,
                                      Exec exec) {
  validate(thinning, p1);
  validate(thinning, p2);
  require_grid(grid, "commutativity_residual");
  const auto r = kernels::sup(exec, grid.size(), [&](std::size_t i) {
    const UnitArg z = UnitArg::at(grid.points[i]);
    const UnitArg a = thinning_eval(thinning, p1, thinning_eval(thinning, p2, z));
    const UnitArg b = thinning_eval(thinning, p2, thinning_eval(thinning, p1, z));
    return std::abs(a.z - b.z);
  });
  return report(r, grid);
}

Composition compose_thinning(const ThinningFamily& thinning, double p1, double p2, const Grid& grid, Exec exec) {
  validate(thinning, p1);
  validate(thinning, p2);
  require_grid(grid, "compose_thinning");
  std::vector<UnitArg> composed(grid.size());
  kernels::map<UnitArg>(exec, composed, [&](std::size_t i) {
    return thinning_eval(thinning, p1, thinning_eval(thinning, p2, UnitArg::at(grid.points[i])));
  });
  // Distances are taken between complements 1 - Q, which carry the
  // precision when Q is close to 1.
  auto distance = [&](double p) {
    return kernels::sup(exec, grid.size(), [&](std::size_t i) {
             return std::abs(thinning_eval(thinning, p, UnitArg::at(grid.points[i])).co - composed[i].co);
           })
        .value;
  };
  const auto [lo, hi] = search_interval(admissible_range(thinning));
  const auto best = golden_section(distance, lo, hi, 1e-15);
  return {best.x, best.value};
}

GfunShape check_gfun_shape(const LaplaceFamily& family, int n, const Grid& s_grid) {
  validate(family);
  require_grid(s_grid, "check_gfun_shape");
  GfunShape shape;
  shape.unit_at_zero = std::abs(gfun_eval(family, n, 0.0) - 1.0) <= 1e-15;

  std::vector<double> s{0.0};
  s.insert(s.end(), s_grid.points.begin(), s_grid.points.end());
  std::vector<double> g(s.size());
  std::vector<double> log_g(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    log_g[i] = -gfun_neglog(family, n, s[i]);
    g[i] = std::exp(log_g[i]);
  }

  auto convex = [&](const std::vector<double>& v) {
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
      const double left = (v[i] - v[i - 1]) / (s[i] - s[i - 1]);
      const double right = (v[i + 1] - v[i]) / (s[i + 1] - s[i]);
      const double slack = 1e-9 * std::max(std::abs(left), std::abs(right)) + 1e-300;
      if (right < left - slack) return false;
    }
    return true;
  };
  shape.decreasing = true;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (g[i] > g[i - 1]) shape.decreasing = false;
  }
  shape.convex = convex(g);
  shape.log_convex = convex(log_g);
  return shape;
}

GoldenResult golden_section(const std::function<double(double)>& f, double lo, double hi, double tol, int max_iter) {
  if (!(hi >= lo)) throw DomainError("golden_section: empty interval");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  GoldenResult best = fc <= fd ? GoldenResult{c, fc} : GoldenResult{d, fd};
  // The bracket endpoints are candidates too; a monotone objective has its
  // minimum there.
  for (double x : {lo, hi}) {
    const double fx = f(x);
    if (fx < best.value || (fx == best.value && x < best.x)) best = {x, fx};
  }
  return best;
}

}  // namespace dstable
