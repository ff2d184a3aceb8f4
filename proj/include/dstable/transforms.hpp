#pragma once

// Probability generating functions, thinning p.g.f.s and Laplace transforms
// of the discrete-stable and casual-stable families, plus p.m.f. extraction
// by discrete Fourier inversion on a circle inside the unit disk.
//
// All fractional powers, logarithms and arccos use principal branches.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "dstable/grid.hpp"
#include "dstable/kernels.hpp"

namespace dstable {

using cplx = std::complex<double>;

// A point z carried together with 1 - z. Thinning maps with tiny p send z
// to within rounding of 1; keeping the complement separately preserves the
// relative precision that the (1 - z)^alpha branch terms depend on.
struct UnitArg {
  cplx z;
  cplx co;  // 1 - z

  static UnitArg at(cplx z) { return {z, 1.0 - z}; }
  static UnitArg from_complement(cplx co) { return {1.0 - co, co}; }
};

// ---------------------------------------------------------------------------
// Discrete families, described by their p.g.f.

// exp{-lambda (1 - z)^alpha}, alpha in (0, 1].
struct SvhStable {
  double lambda;
  double alpha;
};

// exp{-lambda ((1 - z^m) / (1 - kappa z^m))^gamma}.
struct Example1 {
  double lambda;
  double gamma;
  double kappa;
  int m = 1;
};

// exp{-lambda arccos(A(z))^gamma}, A(z) = ((1+b)z - 2b) / (2 - (1+b)z).
struct Example2 {
  double lambda;
  double gamma;
  double b;
};

// q z / (1 - (1 - q) z), support starting at 1.
struct Geometric {
  double q;
};

// 1 - (1 - z)^p.
struct Sibuya {
  double p;
};

// Sibuya(p) composed with Geometric(q).
struct AuthorCitations {
  double p;
  double q;
};

// exp{-lambda ((1 - z) / (1 - (1 - q) z))^p}.
struct FieldCitations {
  double lambda;
  double p;
  double q;
};

using PgfFamily =
    std::variant<SvhStable, Example1, Example2, Geometric, Sibuya, AuthorCitations, FieldCitations>;

// Throws DomainError when parameters leave the family's domain.
void validate(const PgfFamily& family);
std::string describe(const PgfFamily& family);
// Lattice span of the support (m for Example1, 1 otherwise).
int support_step(const PgfFamily& family);

// ---------------------------------------------------------------------------
// Thinning (normalizer) families Q_p(z).

struct Bernoulli {};

// ((1-p) + (p-kappa) z^m)^(1/m) / ((1-p kappa) - kappa (1-p) z^m)^(1/m).
struct Example1Thin {
  double kappa;
  int m = 1;
};

// A^{-1}(T_p(A(z))) with T_p(x) = cos(p arccos x).
struct Example2Thin {
  double b;
};

using ThinningFamily = std::variant<Bernoulli, Example1Thin, Example2Thin>;

// Admissible thinning parameters form the interval (lo, hi] or (lo, hi).
struct ParamRange {
  double lo;
  double hi;
  bool hi_closed;

  bool contains(double p) const noexcept { return p > lo && (hi_closed ? p <= hi : p < hi); }
};

void validate(const ThinningFamily& family);
// Family parameters and p together; throws AdmissibilityError for a p outside
// admissible_range.
void validate(const ThinningFamily& family, double p);
ParamRange admissible_range(const ThinningFamily& family);
std::string describe(const ThinningFamily& family);

// ---------------------------------------------------------------------------
// Positive laws, described by their Laplace transform.

// 1 / (1 + b s)^gamma_shape.
struct Gamma {
  double b;
  double gamma_shape;
};

// exp{-lambda^alpha (1 + tan(pi alpha / 2)) ((s + h)^alpha - h^alpha)},
// 1/alpha a positive integer.
struct TemperedStable {
  double lambda;
  double alpha;
  double h;
};

using LaplaceFamily = std::variant<Gamma, TemperedStable>;

void validate(const LaplaceFamily& family);
std::string describe(const LaplaceFamily& family);

// ---------------------------------------------------------------------------
// Evaluation

cplx pgf_eval(const PgfFamily& family, cplx z);
cplx pgf_eval(const PgfFamily& family, const UnitArg& z);

cplx thinning_eval(const ThinningFamily& family, double p, cplx z);
UnitArg thinning_eval(const ThinningFamily& family, double p, const UnitArg& z);

double laplace_eval(const LaplaceFamily& family, double s);
// Casual normalizer g_n(s).
double gfun_eval(const LaplaceFamily& family, int n, double s);
// -log g_n(s), computed without forming g_n.
double gfun_neglog(const LaplaceFamily& family, int n, double s);

using PgfFunction = std::function<cplx(cplx)>;

PgfFunction as_function(const PgfFamily& family);
PgfFunction as_function(const ThinningFamily& family, double p);

// ---------------------------------------------------------------------------
// Coefficient extraction

struct PmfAtom {
  std::uint64_t k;
  double mass;
};

struct PmfTable {
  std::vector<PmfAtom> atoms;  // k = 0, 1, ..., n_max
  double mass_deficit = 0.0;   // 1 - sum of masses, clamped to [0, 1]
  int support_step = 1;
  // Certified bound on |extracted - true| for every listed coefficient
  // (aliasing tail plus rounding amplified by r^-k); masses above -tol_neg
  // count as nonnegative.
  double tol_neg = 0.0;
  double radius = 0.0;
  std::size_t transform_size = 0;

  double mass(std::uint64_t k) const noexcept { return k < atoms.size() ? atoms[k].mass : 0.0; }
  double total() const noexcept;
};

struct ExtractOptions {
  double radius = 0.9;
  // 0 selects max(4096, 8 n_max).
  std::size_t transform_size = 0;
  // PrecisionError when the certified bound exceeds this.
  double tolerance = 1e-9;
  Exec exec = Exec::parallel;
};

PmfTable extract_pmf(const PgfFunction& pgf, std::size_t n_max, const ExtractOptions& options = {});
PmfTable extract_pmf(const PgfFamily& family, std::size_t n_max, const ExtractOptions& options = {});

// Certified error bound of extract_pmf for a given radius, transform size and
// max |P| on the circle.
double extraction_bound(double radius, std::size_t transform_size, std::size_t n_max, double max_modulus);

// lim_{r -> 1-} P(r), from P(1 - 10^-k), k = 2..6, with Aitken
// extrapolation on the last three points.
double radial_limit(const PgfFunction& pgf);

struct PgfValidation {
  // sup_residual = max(0, -min coefficient); argmax_point = that k.
  ResidualReport negativity;
  double min_coefficient = 0.0;
  double normalization_defect = 0.0;
  PmfTable table;
};

// Extracts n_max + 1 coefficients on the radius (from a fixed ladder in
// [0.9, 0.998]) with the smallest certified bound and reports the most
// negative one together with |P(1-) - 1|.
PgfValidation validate_pgf(const PgfFunction& pgf, std::size_t n_max, double tol,
                           Exec exec = Exec::parallel);

}  // namespace dstable
