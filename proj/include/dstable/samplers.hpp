#pragma once

// Exact samplers for the discrete-stable families and their building blocks.
// Every sampler takes an explicit Rng; identical Seeds give identical draws.

#include <cstdint>
#include <vector>

#include "dstable/rng.hpp"
#include "dstable/transforms.hpp"

namespace dstable {

// Largest value a Sibuya draw may take; larger draws are clipped here and
// counted in Rng::counters().capped.
inline constexpr std::uint64_t kSibuyaCap = std::uint64_t{1} << 53;

// Steps of the sequential stopping mechanism simulated literally before the
// remaining tail is drawn from its exact conditional law.
inline constexpr std::uint64_t kSibuyaSequentialSteps = 32;

// P(k) = q (1 - q)^{k-1}, k >= 1.
std::uint64_t sample_geometric(double q, Rng& rng);

// P(k) = p (1 - p)_{k-1} / k!, k >= 1. Starting at k = 1 the draw stops with
// probability p / k, otherwise k grows by one.
std::uint64_t sample_sibuya(double p, Rng& rng);

std::uint64_t sample_poisson(double lambda, Rng& rng);

// Sum of `count` independent Geometric(q) draws (support >= count).
std::uint64_t sum_geometric(std::uint64_t count, double q, Rng& rng);

// Binomial thinning: survivors among x particles kept with probability p.
std::uint64_t thin_bernoulli(std::uint64_t x, double p, Rng& rng);

// Inverse-CDF sampler over a PmfTable. Small negative masses (within the
// table's tol_neg) are treated as zero; draws landing in the mass deficit go
// to the largest tabulated atom and bump Rng::counters().overflow.
class TabulatedLaw {
 public:
  // Throws TableError when table.mass_deficit > 1e-6.
  explicit TabulatedLaw(const PmfTable& table);

  std::uint64_t draw(Rng& rng) const;
  const std::vector<double>& cdf() const noexcept { return cdf_; }

 private:
  std::vector<double> cdf_;
};

// Generalized thinning: sum of x independent draws from `law`.
std::uint64_t thin_general(std::uint64_t x, const TabulatedLaw& law, Rng& rng);
std::uint64_t thin_general(std::uint64_t x, const PmfTable& law, Rng& rng);

// Poisson(lambda) many Sibuya(alpha) draws, summed. Exact because
// exp{-lambda (1 - z)^alpha} = exp{-lambda (1 - Sib_alpha(z))}.
std::uint64_t sample_discrete_stable_svh(double lambda, double alpha, Rng& rng);

// Poisson(lambda) many clusters, each a Sibuya(gamma) number of
// Geometric(1 - kappa) draws; the grand total is scaled by m.
std::uint64_t sample_discrete_stable_ex1(double lambda, double gamma, double kappa, int m, Rng& rng);

// Inverse-Gaussian parameters whose Laplace transform equals the tempered
// stable family at alpha = 1/2:
//   exp{-2 sqrt(lambda) (sqrt(s + h) - sqrt(h))}  <=>  IG(mean = sqrt(lambda / h), shape = 2 lambda).
struct InverseGaussianParams {
  double mean;
  double shape;
};
InverseGaussianParams inverse_gaussian_params(const TemperedStable& family);

// Throws UnsupportedError unless alpha == 1/2.
double sample_inverse_gaussian(const TemperedStable& family, Rng& rng);

}  // namespace dstable
