#include "dstable/citations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dstable/error.hpp"
#include "dstable/samplers.hpp"

namespace dstable {

namespace {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = a + b;
  return s < a ? std::numeric_limits<std::uint64_t>::max() : s;
}

std::uint64_t draw_field_authors_into(const FieldSim& cfg, std::uint64_t n_authors, Rng& rng,
                                      std::vector<std::uint64_t>* out) {
  std::uint64_t total = 0;
  for (std::uint64_t i = 0; i < n_authors; ++i) {
    const std::uint64_t c = simulate_author(cfg.p, cfg.q, rng);
    if (out) out->push_back(c);
    total = saturating_add(total, c);
  }
  return total;
}

}  // namespace

void validate(const FieldSim& cfg) {
  if (!(cfg.lambda > 0.0) || !std::isfinite(cfg.lambda)) throw DomainError("FieldSim: lambda must be > 0");
  if (!(cfg.p > 0.0 && cfg.p <= 1.0)) throw DomainError("FieldSim: p must lie in (0, 1]");
  if (!(cfg.q > 0.0 && cfg.q <= 1.0)) throw DomainError("FieldSim: q must lie in (0, 1]");
}

std::uint64_t simulate_author(double p, double q, Rng& rng) {
  if (!(q > 0.0 && q <= 1.0)) throw DomainError("simulate_author: q must lie in (0, 1]");
  return sum_geometric(sample_sibuya(p, rng), q, rng);
}

SimSummary simulate_field(const FieldSim& cfg, Exec exec) {
  validate(cfg);
  Rng rng(cfg.seed);
  const std::uint64_t n = sample_poisson(cfg.lambda, rng);
  auto authors = kernels::draw_chunked<std::uint64_t>(
      exec, n, cfg.seed.child(1), [&](Rng& r) { return simulate_author(cfg.p, cfg.q, r); });
  SimSummary s = summarize(authors.values);
  s.per_author_citations = std::move(authors.values);
  return s;
}

kernels::Draws<std::uint64_t> sample_field_totals(const FieldSim& cfg, std::size_t count, Exec exec) {
  validate(cfg);
  return kernels::draw_chunked<std::uint64_t>(exec, count, cfg.seed, [&](Rng& rng) {
    return draw_field_authors_into(cfg, sample_poisson(cfg.lambda, rng), rng, nullptr);
  });
}

kernels::Draws<std::uint64_t> sample_authors(double p, double q, Seed seed, std::size_t count, Exec exec) {
  validate(FieldSim{1.0, p, q, seed});
  return kernels::draw_chunked<std::uint64_t>(exec, count, seed,
                                              [&](Rng& rng) { return simulate_author(p, q, rng); });
}

double sample_mean(std::span<const std::uint64_t> samples) {
  if (samples.empty()) return std::numeric_limits<double>::quiet_NaN();
  long double sum = 0.0L;
  for (auto v : samples) sum += static_cast<long double>(v);
  return static_cast<double>(sum / static_cast<long double>(samples.size()));
}

std::uint64_t lower_median(std::span<const std::uint64_t> samples) {
  if (samples.empty()) throw InsufficientDataError("lower_median: empty sample");
  std::vector<std::uint64_t> v(samples.begin(), samples.end());
  const std::size_t idx = (v.size() + 1) / 2 - 1;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(idx), v.end());
  return v[idx];
}

std::uint64_t sample_mode(std::span<const std::uint64_t> samples) {
  if (samples.empty()) throw InsufficientDataError("sample_mode: empty sample");
  std::vector<std::uint64_t> v(samples.begin(), samples.end());
  std::sort(v.begin(), v.end());
  std::uint64_t best = v.front();
  std::size_t best_run = 0;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if (j - i > best_run) {  // strict: ties keep the smaller value
      best_run = j - i;
      best = v[i];
    }
    i = j;
  }
  return best;
}

double top_share(std::span<const std::uint64_t> samples, double fraction) {
  if (samples.empty()) return 0.0;
  const auto k = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(fraction * samples.size())));
  std::vector<std::uint64_t> v(samples.begin(), samples.end());
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k - 1), v.end(), std::greater<>());
  long double top = 0.0L;
  long double all = 0.0L;
  for (std::size_t i = 0; i < v.size(); ++i) {
    all += static_cast<long double>(v[i]);
    if (i < k) top += static_cast<long double>(v[i]);
  }
  return all > 0.0L ? static_cast<double>(top / all) : 0.0;
}

double tail_exponent(std::span<const std::uint64_t> samples, double top_fraction) {
  if (!(top_fraction > 0.0 && top_fraction <= 0.1))
    throw DomainError("tail_exponent: top_fraction must lie in (0, 0.1]");
  if (samples.size() < 10000) throw InsufficientDataError("tail_exponent: need at least 10^4 samples");
  std::vector<std::uint64_t> v;
  v.reserve(samples.size());
  for (auto x : samples)
    if (x >= 1) v.push_back(x);
  const auto k = static_cast<std::size_t>(top_fraction * static_cast<double>(v.size()));
  if (k < 1 || k >= v.size()) throw InsufficientDataError("tail_exponent: too few positive samples");
  // v[0..k-1] are the k largest, v[k] is the threshold order statistic.
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end(), std::greater<>());
  const double threshold = static_cast<double>(v[k]);
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) acc += std::log(static_cast<double>(v[i]) / threshold);
  const double hill = acc / static_cast<double>(k);
  return hill > 0.0 ? 1.0 / hill : std::numeric_limits<double>::infinity();
}

SimSummary summarize(std::span<const std::uint64_t> samples) {
  SimSummary s;
  s.n_scientists = samples.size();
  for (auto v : samples) s.total = saturating_add(s.total, v);
  if (samples.empty()) {
    s.mean = s.median = std::numeric_limits<double>::quiet_NaN();
    s.tail_exponent_hat = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  s.mean = sample_mean(samples);
  s.median = static_cast<double>(lower_median(samples));
  s.mode = sample_mode(samples);
  s.top_share = top_share(samples, 0.01);
  s.tail_exponent_hat =
      samples.size() >= 10000 ? tail_exponent(samples, 0.01) : std::numeric_limits<double>::quiet_NaN();
  return s;
}

namespace {

std::vector<double> average_ranks(std::span<const std::uint64_t> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> rank(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && x[order[j]] == x[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j - 1) + 1.0;
    for (std::size_t t = i; t < j; ++t) rank[order[t]] = r;
    i = j;
  }
  return rank;
}

}  // namespace

double spearman(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  if (a.size() != b.size()) throw DomainError("spearman: samples differ in size");
  const std::size_t n = a.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const double mean = 0.5 * static_cast<double>(n + 1);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = ra[i] - mean;
    const double db = rb[i] - mean;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sab / std::sqrt(saa * sbb);
}

RankingReport ranking_instability(const FieldSim& cfg, int n_replicates, Exec exec) {
  validate(cfg);
  if (n_replicates < 2) throw DomainError("ranking_instability: need at least 2 replicates");
  struct PairResult {
    double correlation;
    double ratio;
  };
  std::vector<PairResult> pairs(static_cast<std::size_t>(n_replicates));
  kernels::map<PairResult>(exec, pairs, [&](std::size_t i) {
    FieldSim a = cfg;
    FieldSim b = cfg;
    a.seed = cfg.seed.child(2 * i);
    b.seed = cfg.seed.child(2 * i + 1);
    const SimSummary sa = simulate_field(a, Exec::serial);
    const SimSummary sb = simulate_field(b, Exec::serial);
    const std::size_t m = std::min(sa.per_author_citations.size(), sb.per_author_citations.size());
    const double rho = spearman(std::span(sa.per_author_citations).first(m),
                                std::span(sb.per_author_citations).first(m));
    return PairResult{rho, sa.mean / sa.median};
  });

  RankingReport report;
  double sum = 0.0;
  std::size_t used = 0;
  for (const auto& pr : pairs) {
    report.correlations.push_back(pr.correlation);
    report.mean_median_ratio.push_back(pr.ratio);
    if (std::isfinite(pr.correlation)) {
      sum += pr.correlation;
      ++used;
    }
  }
  report.mean_correlation = used ? sum / static_cast<double>(used) : std::numeric_limits<double>::quiet_NaN();
  return report;
}

}  // namespace dstable
