#pragma once

// Publication/citation generative model. An author's papers are geometric,
// each author's citation count has p.g.f. 1 - (1 - qz / (1 - (1-q)z))^p
// (Sibuya(p) composed with Geometric(q)), and a field holds a Poisson(lambda)
// number of authors, which gives the field total the discrete-stable p.g.f.
// exp{-lambda ((1 - z) / (1 - (1-q) z))^p}.

#include <cstdint>
#include <span>
#include <vector>

#include "dstable/kernels.hpp"
#include "dstable/rng.hpp"

namespace dstable {

struct FieldSim {
  double lambda = 1.0;  // expected number of authors
  double p = 0.5;       // Sibuya index
  double q = 0.5;       // rejection probability
  Seed seed{};
};

void validate(const FieldSim& cfg);

struct SimSummary {
  std::uint64_t n_scientists = 0;
  std::vector<std::uint64_t> per_author_citations;
  std::uint64_t total = 0;  // saturates at UINT64_MAX
  double mean = 0.0;
  double median = 0.0;  // lower median
  std::uint64_t mode = 0;
  double tail_exponent_hat = 0.0;  // NaN below 10^4 authors
  double top_share = 0.0;          // share of citations held by the top 1% of authors
};

// Sibuya(p) many Geometric(q) draws, summed.
std::uint64_t simulate_author(double p, double q, Rng& rng);

// N ~ Poisson(lambda) authors. N comes from Rng(cfg.seed); the authors are
// drawn in chunks from cfg.seed.child(1), so the result does not depend on exec.
SimSummary simulate_field(const FieldSim& cfg, Exec exec = Exec::parallel);

// Field totals of `count` independent replicates; replicate i is chunked on
// cfg.seed like every other bulk draw.
kernels::Draws<std::uint64_t> sample_field_totals(const FieldSim& cfg, std::size_t count,
                                                  Exec exec = Exec::parallel);

// `count` i.i.d. author citation counts.
kernels::Draws<std::uint64_t> sample_authors(double p, double q, Seed seed, std::size_t count,
                                             Exec exec = Exec::parallel);

// Summary statistics of a sample of per-author counts (per_author_citations
// is left empty).
SimSummary summarize(std::span<const std::uint64_t> samples);

double sample_mean(std::span<const std::uint64_t> samples);
// Smallest value with empirical CDF >= 1/2.
std::uint64_t lower_median(std::span<const std::uint64_t> samples);
// Most frequent value; ties go to the smaller one.
std::uint64_t sample_mode(std::span<const std::uint64_t> samples);
double top_share(std::span<const std::uint64_t> samples, double fraction = 0.01);

// Hill estimate of the survival exponent from the top `top_fraction` order
// statistics of the samples >= 1. Needs at least 10^4 samples and
// top_fraction in (0, 0.1]; +inf when the top order statistics are all tied.
double tail_exponent(std::span<const std::uint64_t> samples, double top_fraction = 0.01);

// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

struct RankingReport {
  std::vector<double> correlations;       // one per replicate pair
  double mean_correlation = 0.0;
  std::vector<double> mean_median_ratio;  // first field of each pair
};

// Replicate pair i simulates the field twice (seeds cfg.seed.child(2i) and
// cfg.seed.child(2i + 1)), matches authors by index and correlates their
// citation ranks.
RankingReport ranking_instability(const FieldSim& cfg, int n_replicates, Exec exec = Exec::parallel);

}  // namespace dstable
