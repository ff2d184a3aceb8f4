#pragma once

// Numerical certificates for the stability equations
//   discrete:  P(z) = P(Q_p(z))^n
//   casual:    L(s) = L(-log g_n(s))^n
// and for the semigroup structure of the thinning families.

#include <functional>

#include "dstable/grid.hpp"
#include "dstable/kernels.hpp"
#include "dstable/transforms.hpp"

namespace dstable {

// sup_z |P(z) - P(Q_p(z))^n|.
ResidualReport discrete_stability_residual(const PgfFamily& family, const ThinningFamily& thinning, int n,
                                           double p, const Grid& grid = default_z_grid(),
                                           Exec exec = Exec::parallel);

struct PnSolution {
  double p = 1.0;
  double residual = 0.0;
  bool closed_form = false;
};

// Normalizing parameter p(n). Closed forms are n^{-1/alpha} (SvH with
// Bernoulli thinning) and n^{-1/gamma} (Example 1/2 with their own thinning;
// FieldCitations is Example 1 with kappa = 1 - q). Other pairs fall back to a
// golden-section search of the residual over the admissible range.
// Throws AdmissibilityError when p(n) leaves the thinning domain.
PnSolution solve_pn(const PgfFamily& family, const ThinningFamily& thinning, int n,
                    const Grid& grid = default_z_grid(), Exec exec = Exec::parallel);

// sup_s |L(s) - L(-log g_n(s))^n|.
ResidualReport casual_stability_residual(const LaplaceFamily& family, int n, const Grid& s_grid = default_s_grid(),
                                         Exec exec = Exec::parallel);

// sup_z |Q_{p1}(Q_{p2}(z)) - Q_{p2}(Q_{p1}(z))|.
ResidualReport commutativity_residual(const ThinningFamily& thinning, double p1, double p2,
                                      const Grid& grid = default_z_grid(), Exec exec = Exec::parallel);

struct Composition {
  double p_eff = 0.0;
  double fit_residual = 0.0;
};

// Best single Q_{p_eff} approximating Q_{p1} o Q_{p2} in sup norm over the
// grid. A large fit_residual means the family is not closed under
// composition; that is reported, not thrown.
Composition compose_thinning(const ThinningFamily& thinning, double p1, double p2,
                             const Grid& grid = default_z_grid(), Exec exec = Exec::parallel);

// Necessary conditions for g_n to be a Laplace transform, checked on a grid.
struct GfunShape {
  bool unit_at_zero = false;
  bool decreasing = false;
  bool convex = false;
  bool log_convex = false;

  bool ok() const noexcept { return unit_at_zero && decreasing && convex && log_convex; }
};

GfunShape check_gfun_shape(const LaplaceFamily& family, int n, const Grid& s_grid = default_s_grid());

// Minimizes f over [lo, hi] by golden-section search; stops when the
// bracket is narrower than tol or after max_iter steps. Ties go to the
// smaller argument.
struct GoldenResult {
  double x;
  double value;
};
GoldenResult golden_section(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-10,
                            int max_iter = 200);

}  // namespace dstable
