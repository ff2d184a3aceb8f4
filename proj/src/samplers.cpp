#include "dstable/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "dstable/error.hpp"

namespace dstable {

namespace {

void check_probability(double x, const char* what) {
  if (!(x > 0.0 && x <= 1.0)) throw DomainError(std::string(what) + " must lie in (0, 1]");
}

// Geometric(b) on {1, 2, ...} by inversion; stays accurate for b near 0
// where 1 - b rounds to 1.
double geometric_by_inversion(double b, Rng& rng) {
  return 1.0 + std::floor(std::log(rng.uniform_pos()) / std::log1p(-b));
}

}  // namespace

std::uint64_t sample_geometric(double q, Rng& rng) {
  check_probability(q, "sample_geometric: q");
  if (q == 1.0) return 1;
  return std::geometric_distribution<std::uint64_t>(q)(rng.engine()) + 1;
}

std::uint64_t sample_sibuya(double p, Rng& rng) {
  check_probability(p, "sample_sibuya: p");
  for (std::uint64_t k = 1; k <= kSibuyaSequentialSteps; ++k) {
    if (rng.uniform() < p / static_cast<double>(k)) return k;
  }
  // Surviving K steps, the law is a Geometric(B) mixture with
  // B ~ Beta(p, K + 1 - p), shifted by K (memorylessness of the geometric).
  constexpr auto K = static_cast<double>(kSibuyaSequentialSteps);
  const double x1 = std::gamma_distribution<double>(p, 1.0)(rng.engine());
  const double x2 = std::gamma_distribution<double>(K + 1.0 - p, 1.0)(rng.engine());
  const double b = x1 / (x1 + x2);
  const double tail = b > 0.0 ? geometric_by_inversion(b, rng) : HUGE_VAL;
  const double value = K + tail;
  if (!(value < static_cast<double>(kSibuyaCap))) {
    ++rng.counters().capped;
    return kSibuyaCap;
  }
  return static_cast<std::uint64_t>(value);
}

std::uint64_t sample_poisson(double lambda, Rng& rng) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("sample_poisson: lambda must be > 0");
  return std::poisson_distribution<std::uint64_t>(lambda)(rng.engine());
}

std::uint64_t sum_geometric(std::uint64_t count, double q, Rng& rng) {
  check_probability(q, "sum_geometric: q");
  if (count == 0) return 0;
  if (q == 1.0) return count;
  if (count <= 8) {
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < count; ++i) total += sample_geometric(q, rng);
    return total;
  }
  // count successes plus the failures before the count-th success
  return count + std::negative_binomial_distribution<std::uint64_t>(count, q)(rng.engine());
}

std::uint64_t thin_bernoulli(std::uint64_t x, double p, Rng& rng) {
  check_probability(p, "thin_bernoulli: p");
  if (x == 0) return 0;
  if (p == 1.0) return x;
  return std::binomial_distribution<std::uint64_t>(x, p)(rng.engine());
}

TabulatedLaw::TabulatedLaw(const PmfTable& table) {
  if (table.atoms.empty()) throw TableError("TabulatedLaw: empty table");
  if (table.mass_deficit > 1e-6)
    throw TableError("TabulatedLaw: mass deficit " + std::to_string(table.mass_deficit) + " exceeds 1e-6");
  cdf_.reserve(table.atoms.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < table.atoms.size(); ++i) {
    const auto& atom = table.atoms[i];
    if (atom.k != i) throw TableError("TabulatedLaw: atoms must be listed as k = 0, 1, 2, ...");
    if (atom.mass < -std::max(table.tol_neg, 1e-9))
      throw TableError("TabulatedLaw: negative mass at k = " + std::to_string(atom.k));
    acc += std::max(0.0, atom.mass);
    cdf_.push_back(acc);
  }
}

std::uint64_t TabulatedLaw::draw(Rng& rng) const {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) {
    ++rng.counters().overflow;
    return cdf_.size() - 1;
  }
  return static_cast<std::uint64_t>(it - cdf_.begin());
}

std::uint64_t thin_general(std::uint64_t x, const TabulatedLaw& law, Rng& rng) {
  std::uint64_t total = 0;
  for (std::uint64_t i = 0; i < x; ++i) total += law.draw(rng);
  return total;
}

std::uint64_t thin_general(std::uint64_t x, const PmfTable& law, Rng& rng) {
  return thin_general(x, TabulatedLaw(law), rng);
}

std::uint64_t sample_discrete_stable_svh(double lambda, double alpha, Rng& rng) {
  validate(PgfFamily{SvhStable{lambda, alpha}});
  const std::uint64_t clusters = sample_poisson(lambda, rng);
  std::uint64_t total = 0;
  for (std::uint64_t i = 0; i < clusters; ++i) total += sample_sibuya(alpha, rng);
  return total;
}

std::uint64_t sample_discrete_stable_ex1(double lambda, double gamma, double kappa, int m, Rng& rng) {
  validate(PgfFamily{Example1{lambda, gamma, kappa, m}});
  if (!(gamma <= 1.0)) throw DomainError("sample_discrete_stable_ex1: gamma must lie in (0, 1]");
  const std::uint64_t clusters = sample_poisson(lambda, rng);
  std::uint64_t total = 0;
  for (std::uint64_t i = 0; i < clusters; ++i) total += sum_geometric(sample_sibuya(gamma, rng), 1.0 - kappa, rng);
  return static_cast<std::uint64_t>(m) * total;
}

InverseGaussianParams inverse_gaussian_params(const TemperedStable& family) {
  validate(LaplaceFamily{family});
  if (family.alpha != 0.5) throw UnsupportedError("inverse Gaussian sampling requires alpha = 1/2");
  // exp{-c (sqrt(s + h) - sqrt(h))} with c = 2 sqrt(lambda) matches
  // exp{(shape / mean)(1 - sqrt(1 + 2 mean^2 s / shape))} when
  // shape / mean = c sqrt(h) and 2 mean^2 / shape = 1 / h.
  return {std::sqrt(family.lambda / family.h), 2.0 * family.lambda};
}

double sample_inverse_gaussian(const TemperedStable& family, Rng& rng) {
  const auto [mu, shape] = inverse_gaussian_params(family);
  // Michael, Schucany and Haas (1976).
  const double nu = std::normal_distribution<double>(0.0, 1.0)(rng.engine());
  const double y = nu * nu;
  const double mu_y = mu * y;
  const double x = mu + mu * mu_y / (2.0 * shape) - mu / (2.0 * shape) * std::sqrt(4.0 * shape * mu_y + mu_y * mu_y);
  return rng.uniform() * (mu + x) <= mu ? x : mu * mu / x;
}

}  // namespace dstable
