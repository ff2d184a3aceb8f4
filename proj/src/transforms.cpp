#include "dstable/transforms.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "dstable/error.hpp"

namespace dstable {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Principal power with 0^a = 0 for a > 0.
cplx cpow(cplx base, double a) {
  if (base == cplx(0.0, 0.0)) return cplx(0.0, 0.0);
  return std::pow(base, a);
}

// 1 - z^m from 1 - z: (1 - z)(1 + z + ... + z^{m-1}).
cplx one_minus_power(const UnitArg& x, int m) {
  if (m == 1) return x.co;
  cplx sum(1.0, 0.0);
  for (int j = 1; j < m; ++j) sum = sum * x.z + 1.0;
  return x.co * sum;
}

// arccos(x) = 2 arcsin(sqrt((1 - x) / 2)), which keeps precision as x -> 1.
cplx arccos_from_complement(cplx co) { return 2.0 * std::asin(std::sqrt(0.5 * co)); }

void check_denominator(cplx d, const char* what) {
  if (std::abs(d) == 0.0 || !std::isfinite(d.real()) || !std::isfinite(d.imag()))
    throw EvaluationError(std::string(what) + ": denominator vanishes at this point");
}

cplx checked(cplx v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw EvaluationError(std::string(what) + ": non-finite value");
  return v;
}

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }
bool in_half_open_unit(double x) { return x > 0.0 && x <= 1.0; }

// Shortest text that reads back as the same double.
std::string fmt(double x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

// ((1 - z)-complement of Geometric(q)) = (1 - z) / (q + (1 - q)(1 - z)).
cplx geometric_complement(const UnitArg& x, double q, const char* what) {
  const cplx den = q + (1.0 - q) * x.co;
  check_denominator(den, what);
  return x.co / den;
}

}  // namespace

// ---------------------------------------------------------------------------
// Validation

void validate(const PgfFamily& family) {
  std::visit(
      overloaded{
          [](const SvhStable& f) {
            if (!(f.lambda > 0.0)) throw DomainError("SvhStable: lambda must be > 0");
            if (!in_half_open_unit(f.alpha))
              throw DomainError("SvhStable: alpha must lie in (0, 1]; alpha cannot be greater than 1, got " +
                                fmt(f.alpha));
          },
          [](const Example1& f) {
            if (!(f.lambda > 0.0)) throw DomainError("Example1: lambda must be > 0");
            if (!(f.gamma > 0.0)) throw DomainError("Example1: gamma must be > 0");
            if (f.m < 1) throw DomainError("Example1: m must be a positive integer");
            if (!(f.kappa >= 0.0 && f.kappa < 1.0)) throw DomainError("Example1: kappa must lie in [0, 1)");
          },
          [](const Example2& f) {
            if (!(f.lambda > 0.0)) throw DomainError("Example2: lambda must be > 0");
            if (!(f.gamma > 0.0 && f.gamma <= 2.0)) throw DomainError("Example2: gamma must lie in (0, 2]");
            if (!(f.b > -1.0 && f.b < 1.0)) throw DomainError("Example2: b must lie in (-1, 1)");
          },
          [](const Geometric& f) {
            if (!in_half_open_unit(f.q)) throw DomainError("Geometric: q must lie in (0, 1]");
          },
          [](const Sibuya& f) {
            if (!in_half_open_unit(f.p)) throw DomainError("Sibuya: p must lie in (0, 1]");
          },
          [](const AuthorCitations& f) {
            if (!in_half_open_unit(f.p)) throw DomainError("AuthorCitations: p must lie in (0, 1]");
            if (!in_half_open_unit(f.q)) throw DomainError("AuthorCitations: q must lie in (0, 1]");
          },
          [](const FieldCitations& f) {
            if (!(f.lambda > 0.0)) throw DomainError("FieldCitations: lambda must be > 0");
            if (!in_half_open_unit(f.p)) throw DomainError("FieldCitations: p must lie in (0, 1]");
            if (!in_half_open_unit(f.q)) throw DomainError("FieldCitations: q must lie in (0, 1]");
          },
      },
      family);
}

std::string describe(const PgfFamily& family) {
  return std::visit(
      overloaded{
          [](const SvhStable& f) { return "SvhStable{lambda=" + fmt(f.lambda) + ",alpha=" + fmt(f.alpha) + "}"; },
          [](const Example1& f) {
            return "Example1{lambda=" + fmt(f.lambda) + ",gamma=" + fmt(f.gamma) + ",kappa=" + fmt(f.kappa) +
                   ",m=" + std::to_string(f.m) + "}";
          },
          [](const Example2& f) {
            return "Example2{lambda=" + fmt(f.lambda) + ",gamma=" + fmt(f.gamma) + ",b=" + fmt(f.b) + "}";
          },
          [](const Geometric& f) { return "Geometric{q=" + fmt(f.q) + "}"; },
          [](const Sibuya& f) { return "Sibuya{p=" + fmt(f.p) + "}"; },
          [](const AuthorCitations& f) { return "AuthorCitations{p=" + fmt(f.p) + ",q=" + fmt(f.q) + "}"; },
          [](const FieldCitations& f) {
            return "FieldCitations{lambda=" + fmt(f.lambda) + ",p=" + fmt(f.p) + ",q=" + fmt(f.q) + "}";
          },
      },
      family);
}

int support_step(const PgfFamily& family) {
  if (const auto* f = std::get_if<Example1>(&family)) return f->m;
  return 1;
}

void validate(const ThinningFamily& family) {
  std::visit(overloaded{
                 [](const Bernoulli&) {},
                 [](const Example1Thin& f) {
                   if (f.m < 1) throw DomainError("Example1Thin: m must be a positive integer");
                   if (f.m == 1 && !(f.kappa >= 0.0 && f.kappa < 1.0))
                     throw DomainError("Example1Thin: m = 1 requires 0 <= kappa < 1");
                   if (f.m > 1 && !in_open_unit(f.kappa))
                     throw DomainError("Example1Thin: m > 1 requires 0 < p < kappa < 1");
                 },
                 [](const Example2Thin& f) {
                   if (!(f.b > -1.0 && f.b < 1.0)) throw DomainError("Example2Thin: b must lie in (-1, 1)");
                 },
             },
             family);
}

ParamRange admissible_range(const ThinningFamily& family) {
  if (const auto* f = std::get_if<Example1Thin>(&family); f && f->m > 1) return {0.0, f->kappa, false};
  return {0.0, 1.0, true};
}

void validate(const ThinningFamily& family, double p) {
  validate(family);
  const ParamRange range = admissible_range(family);
  if (!range.contains(p)) {
    std::string msg = describe(family) + ": thinning parameter p=" + fmt(p) + " outside (" + fmt(range.lo) + ", " +
                      fmt(range.hi) + (range.hi_closed ? "]" : ")");
    if (const auto* f = std::get_if<Example1Thin>(&family); f && f->m > 1) msg += " (m > 1 requires 0 < p < kappa < 1)";
    throw AdmissibilityError(msg);
  }
}

std::string describe(const ThinningFamily& family) {
  return std::visit(overloaded{
                        [](const Bernoulli&) { return std::string("Bernoulli{}"); },
                        [](const Example1Thin& f) {
                          return "Example1Thin{kappa=" + fmt(f.kappa) + ",m=" + std::to_string(f.m) + "}";
                        },
                        [](const Example2Thin& f) { return "Example2Thin{b=" + fmt(f.b) + "}"; },
                    },
                    family);
}

void validate(const LaplaceFamily& family) {
  std::visit(overloaded{
                 [](const Gamma& f) {
                   if (!(f.b > 0.0)) throw DomainError("Gamma: b must be > 0");
                   if (!(f.gamma_shape > 0.0)) throw DomainError("Gamma: gamma must be > 0");
                 },
                 [](const TemperedStable& f) {
                   if (!(f.lambda > 0.0)) throw DomainError("TemperedStable: lambda must be > 0");
                   if (!(f.h > 0.0)) throw DomainError("TemperedStable: h must be > 0");
                   if (!in_open_unit(f.alpha)) throw DomainError("TemperedStable: alpha must lie in (0, 1)");
                   const double inv = 1.0 / f.alpha;
                   if (std::abs(inv - std::round(inv)) > 1e-9 * inv)
                     throw DomainError("TemperedStable: 1/alpha must be a positive integer, got alpha=" + fmt(f.alpha));
                 },
             },
             family);
}

std::string describe(const LaplaceFamily& family) {
  return std::visit(overloaded{
                        [](const Gamma& f) { return "Gamma{b=" + fmt(f.b) + ",gamma=" + fmt(f.gamma_shape) + "}"; },
                        [](const TemperedStable& f) {
                          return "TemperedStable{lambda=" + fmt(f.lambda) + ",alpha=" + fmt(f.alpha) +
                                 ",h=" + fmt(f.h) + "}";
                        },
                    },
                    family);
}

// ---------------------------------------------------------------------------
// P.g.f. evaluation

cplx pgf_eval(const PgfFamily& family, cplx z) { return pgf_eval(family, UnitArg::at(z)); }

cplx pgf_eval(const PgfFamily& family, const UnitArg& x) {
  validate(family);
  const cplx value = std::visit(
      overloaded{
          [&](const SvhStable& f) { return std::exp(-f.lambda * cpow(x.co, f.alpha)); },
          [&](const Example1& f) {
            const cplx co_w = one_minus_power(x, f.m);
            const cplx den = (1.0 - f.kappa) + f.kappa * co_w;
            check_denominator(den, "Example1");
            return std::exp(-f.lambda * cpow(co_w / den, f.gamma));
          },
          [&](const Example2& f) {
            const cplx den = (1.0 - f.b) + (1.0 + f.b) * x.co;  // 2 - (1+b) z
            check_denominator(den, "Example2");
            const cplx co_a = 2.0 * (1.0 + f.b) * x.co / den;  // 1 - A(z)
            return std::exp(-f.lambda * cpow(arccos_from_complement(co_a), f.gamma));
          },
          [&](const Geometric& f) {
            const cplx den = f.q + (1.0 - f.q) * x.co;
            check_denominator(den, "Geometric");
            return f.q * x.z / den;
          },
          [&](const Sibuya& f) { return 1.0 - cpow(x.co, f.p); },
          [&](const AuthorCitations& f) {
            return 1.0 - cpow(geometric_complement(x, f.q, "AuthorCitations"), f.p);
          },
          [&](const FieldCitations& f) {
            return std::exp(-f.lambda * cpow(geometric_complement(x, f.q, "FieldCitations"), f.p));
          },
      },
      family);
  return checked(value, "pgf_eval");
}

// ---------------------------------------------------------------------------
// Thinning evaluation

cplx thinning_eval(const ThinningFamily& family, double p, cplx z) {
  return thinning_eval(family, p, UnitArg::at(z)).z;
}

UnitArg thinning_eval(const ThinningFamily& family, double p, const UnitArg& x) {
  validate(family, p);
  const UnitArg out = std::visit(
      overloaded{
          [&](const Bernoulli&) {
            const cplx co = p * x.co;
            return UnitArg{(1.0 - p) + p * x.z, co};
          },
          [&](const Example1Thin& f) {
            const double k = f.kappa;
            if (f.m == 1) {
              const cplx den = (1.0 - k) + k * (1.0 - p) * x.co;  // (1 - p k) - k (1 - p) z
              check_denominator(den, "Example1Thin");
              return UnitArg{((1.0 - p) + (p - k) * x.z) / den, p * (1.0 - k) * x.co / den};
            }
            const cplx co_w = one_minus_power(x, f.m);
            const cplx w = 1.0 - co_w;
            const cplx den = (1.0 - k) + k * (1.0 - p) * co_w;
            check_denominator(den, "Example1Thin");
            const cplx big_w = ((1.0 - p) + (p - k) * w) / den;
            const cplx co_big_w = p * (1.0 - k) * co_w / den;
            const cplx q = cpow(big_w, 1.0 / f.m);
            // 1 - W = (1 - Q)(1 + Q + ... + Q^{m-1})
            cplx sum(1.0, 0.0);
            for (int j = 1; j < f.m; ++j) sum = sum * q + 1.0;
            check_denominator(sum, "Example1Thin");
            return UnitArg{q, co_big_w / sum};
          },
          [&](const Example2Thin& f) {
            const double b = f.b;
            const cplx den = (1.0 - b) + (1.0 + b) * x.co;
            check_denominator(den, "Example2Thin");
            const cplx co_a = 2.0 * (1.0 + b) * x.co / den;
            const cplx theta = arccos_from_complement(co_a);
            const cplx t = std::cos(p * theta);
            const cplx half = std::sin(0.5 * p * theta);
            const cplx co_t = 2.0 * half * half;  // 1 - T_p
            const cplx den_q = (1.0 + b) * (1.0 + t);
            check_denominator(den_q, "Example2Thin");
            return UnitArg{2.0 * (b + t) / den_q, co_t * (1.0 - b) / den_q};
          },
      },
      family);
  checked(out.z, "thinning_eval");
  checked(out.co, "thinning_eval");
  return out;
}

// ---------------------------------------------------------------------------
// Laplace transforms and casual normalizers

namespace {

double tempered_scale(const TemperedStable& f) {
  return std::pow(f.lambda, f.alpha) * (1.0 + std::tan(std::numbers::pi * f.alpha / 2.0));
}

void check_s(double s, const char* what) {
  if (!(s >= 0.0)) throw DomainError(std::string(what) + ": s must be >= 0");
}

void check_n(int n, const char* what) {
  if (n < 1) throw DomainError(std::string(what) + ": n must be >= 1");
}

}  // namespace

double laplace_eval(const LaplaceFamily& family, double s) {
  validate(family);
  check_s(s, "laplace_eval");
  return std::visit(overloaded{
                        [&](const Gamma& f) { return std::exp(-f.gamma_shape * std::log1p(f.b * s)); },
                        [&](const TemperedStable& f) {
                          // (s + h)^a - h^a = h^a expm1(a log1p(s / h))
                          const double shift = std::expm1(f.alpha * std::log1p(s / f.h));
                          return std::exp(-tempered_scale(f) * std::pow(f.h, f.alpha) * shift);
                        },
                    },
                    family);
}

double gfun_neglog(const LaplaceFamily& family, int n, double s) {
  validate(family);
  check_s(s, "gfun");
  check_n(n, "gfun");
  return std::visit(overloaded{
                        [&](const Gamma& f) { return std::expm1(std::log1p(f.b * s) / n) / f.b; },
                        [&](const TemperedStable& f) {
                          // ((s+h)^a / n + (n-1) h^a / n)^{1/a} - h = h expm1(log1p(delta) / a)
                          const double delta = std::expm1(f.alpha * std::log1p(s / f.h)) / n;
                          return f.h * std::expm1(std::log1p(delta) / f.alpha);
                        },
                    },
                    family);
}

double gfun_eval(const LaplaceFamily& family, int n, double s) { return std::exp(-gfun_neglog(family, n, s)); }

PgfFunction as_function(const PgfFamily& family) {
  validate(family);
  return [family](cplx z) { return pgf_eval(family, z); };
}

PgfFunction as_function(const ThinningFamily& family, double p) {
  validate(family, p);
  return [family, p](cplx z) { return thinning_eval(family, p, z); };
}

// ---------------------------------------------------------------------------
// Coefficient extraction

double PmfTable::total() const noexcept {
  double s = 0.0;
  for (const auto& a : atoms) s += a.mass;
  return s;
}

namespace {

// Rounding budget in ulps of max|P| per coefficient: evaluation of P,
// twiddle factors and the compensated sum.
constexpr double kRoundingUlps = 32.0;

}  // namespace

double extraction_bound(double radius, std::size_t transform_size, std::size_t n_max, double max_modulus) {
  const double scale = std::max(1.0, max_modulus);
  const double rn = std::pow(radius, static_cast<double>(transform_size));
  const double aliasing = scale * rn / (1.0 - rn);
  const double rounding = kRoundingUlps * kEps * scale / std::pow(radius, static_cast<double>(n_max));
  return aliasing + rounding;
}

PmfTable extract_pmf(const PgfFunction& pgf, std::size_t n_max, const ExtractOptions& options) {
  if (n_max < 1) throw DomainError("extract_pmf: n_max must be >= 1");
  const double r = options.radius;
  if (!(r > 0.0 && r < 1.0)) throw DomainError("extract_pmf: radius must lie in (0, 1)");
  const std::size_t n_points =
      options.transform_size != 0 ? options.transform_size : std::max<std::size_t>(4096, 8 * n_max);
  if (n_points <= n_max) throw DomainError("extract_pmf: transform size must exceed n_max");

  std::vector<cplx> values(n_points);
  kernels::map<cplx>(options.exec, values, [&](std::size_t j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_points);
    return pgf(cplx(r * std::cos(angle), r * std::sin(angle)));
  });
  double max_modulus = 0.0;
  for (const auto& v : values) max_modulus = std::max(max_modulus, std::abs(v));
  if (!std::isfinite(max_modulus)) throw EvaluationError("extract_pmf: p.g.f. not finite on the circle");

  const double bound = extraction_bound(r, n_points, n_max, max_modulus);
  if (bound > options.tolerance) {
    throw PrecisionError("extract_pmf: certified bound " + fmt(bound) + " exceeds tolerance " +
                         fmt(options.tolerance) + " (reduce radius or raise n_max/transform size)");
  }

  const auto coefficients = kernels::dft_head(options.exec, values, n_max + 1);
  PmfTable table;
  table.atoms.reserve(n_max + 1);
  double scale = 1.0;
  for (std::size_t k = 0; k <= n_max; ++k) {
    table.atoms.push_back({k, coefficients[k].real() / scale});
    scale *= r;
  }
  table.mass_deficit = std::clamp(1.0 - table.total(), 0.0, 1.0);
  table.tol_neg = bound;
  table.radius = r;
  table.transform_size = n_points;
  return table;
}

PmfTable extract_pmf(const PgfFamily& family, std::size_t n_max, const ExtractOptions& options) {
  PmfTable table = extract_pmf(as_function(family), n_max, options);
  table.support_step = support_step(family);
  return table;
}

double radial_limit(const PgfFunction& pgf) {
  std::array<double, 5> x{};
  for (int k = 2; k <= 6; ++k) x[k - 2] = pgf(cplx(1.0 - std::pow(10.0, -k), 0.0)).real();
  const double d1 = x[3] - x[2];
  const double d2 = x[4] - x[3];
  const double den = d2 - d1;
  if (den == 0.0 || !std::isfinite(den)) return x[4];
  return x[4] - d2 * d2 / den;
}

PgfValidation validate_pgf(const PgfFunction& pgf, std::size_t n_max, double tol, Exec exec) {
  static constexpr std::array<double, 6> kRadii{0.9, 0.95, 0.98, 0.99, 0.995, 0.998};
  const std::size_t n_points = std::max<std::size_t>(4096, 8 * n_max);
  double radius = kRadii.front();
  double best = std::numeric_limits<double>::infinity();
  for (double r : kRadii) {
    const double b = extraction_bound(r, n_points, n_max, 1.0);
    if (b < best) {
      best = b;
      radius = r;
    }
  }

  PgfValidation out;
  out.table = extract_pmf(pgf, n_max, ExtractOptions{radius, n_points, tol, exec});
  std::size_t argmin = 0;
  out.min_coefficient = out.table.atoms.front().mass;
  for (const auto& a : out.table.atoms) {
    if (a.mass < out.min_coefficient) {
      out.min_coefficient = a.mass;
      argmin = a.k;
    }
  }
  out.negativity.sup_residual = std::max(0.0, -out.min_coefficient);
  out.negativity.argmax_point = static_cast<double>(argmin);
  out.negativity.grid_spec = "coefficients k=0.." + std::to_string(n_max) + " r=" + fmt(radius) +
                             " N=" + std::to_string(n_points);
  out.normalization_defect = std::abs(radial_limit(pgf) - 1.0);
  return out;
}

}  // namespace dstable
