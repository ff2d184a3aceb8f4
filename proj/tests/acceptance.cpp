// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails (including its runtime budget).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dstable/citations.hpp"
#include "dstable/convergence.hpp"
#include "dstable/error.hpp"
#include "dstable/samplers.hpp"
#include "dstable/stability.hpp"

using namespace dstable;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string csv;  // machine-readable record, compared byte-for-byte by criterion 11
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<double> table_masses(const PmfTable& t) {
  std::vector<double> out;
  for (const auto& a : t.atoms) out.push_back(a.mass);
  return out;
}

double total_variation(const std::vector<double>& pmf, std::span<const std::uint64_t> xs) {
  std::vector<double> freq(pmf.size(), 0.0);
  for (auto x : xs)
    if (x < pmf.size()) freq[x] += 1.0;
  double tv = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) tv += std::abs(freq[k] / static_cast<double>(xs.size()) - pmf[k]);
  return 0.5 * tv;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

const std::vector<int> kStabilityN{2, 3, 5, 10, 50, 100};

// ---------------------------------------------------------------------------

Outcome svh_identity() {
  double worst = 0.0;
  int cases = 0;
  for (double lambda : {0.5, 1.0, 2.0})
    for (double alpha : {0.3, 0.5, 0.8, 1.0})
      for (int n : kStabilityN) {
        const double p = std::pow(n, -1.0 / alpha);
        worst = std::max(worst, discrete_stability_residual(SvhStable{lambda, alpha}, Bernoulli{}, n, p).sup_residual);
        ++cases;
      }
  return {worst < 1e-10, "max residual " + sci(worst) + " over " + std::to_string(cases) + " cases (< 1e-10)", ""};
}

Outcome example1_identity() {
  double worst = 0.0;
  int cases = 0, skipped = 0;
  for (double gamma : {0.4, 0.7, 1.0})
    for (double kappa : {0.0, 0.3, 0.7})
      for (int m : {1, 2}) {
        if (m > 1 && kappa == 0.0) continue;  // no admissible p at all
        for (int n : kStabilityN) {
          const double p = std::pow(n, -1.0 / gamma);
          if (!admissible_range(Example1Thin{kappa, m}).contains(p)) {
            ++skipped;
            continue;
          }
          for (double lambda : {0.5, 1.0, 2.0}) {
            const auto r = discrete_stability_residual(Example1{lambda, gamma, kappa, m}, Example1Thin{kappa, m}, n, p);
            worst = std::max(worst, r.sup_residual);
            ++cases;
          }
        }
      }
  return {worst < 1e-10,
          "max residual " + sci(worst) + " over " + std::to_string(cases) + " cases, " + std::to_string(skipped) +
              " inadmissible (gamma, kappa, m, n) skipped (< 1e-10)",
          ""};
}

Outcome example2_identity() {
  double worst = 0.0;
  int cases = 0;
  for (double gamma : {0.5, 1.0, 2.0})
    for (double b : {-0.5, 0.0, 0.5})
      for (int n : {2, 3, 5, 10})
        for (double lambda : {0.5, 1.0, 2.0}) {
          const double p = std::pow(n, -1.0 / gamma);
          worst = std::max(worst,
                           discrete_stability_residual(Example2{lambda, gamma, b}, Example2Thin{b}, n, p).sup_residual);
          ++cases;
        }
  return {worst < 1e-8, "max residual " + sci(worst) + " over " + std::to_string(cases) + " cases (< 1e-8)", ""};
}

Outcome pgf_validity() {
  double most_negative = 0.0;
  std::string where = "-";
  int cases = 0;
  auto check = [&](const ThinningFamily& t, double p) {
    const auto v = validate_pgf(as_function(t, p), 200, 1e-9);
    ++cases;
    if (v.min_coefficient < most_negative) {
      most_negative = v.min_coefficient;
      where = describe(t) + " p=" + sci(p);
    }
  };
  for (double gamma : {0.4, 0.7, 1.0})
    for (double kappa : {0.0, 0.3, 0.7})
      for (int m : {1, 2})
        for (int n : kStabilityN) {
          const double p = std::pow(n, -1.0 / gamma);
          if (admissible_range(Example1Thin{kappa, m}).contains(p)) check(Example1Thin{kappa, m}, p);
        }
  for (double gamma : {0.5, 1.0, 2.0})
    for (double b : {-0.5, 0.0, 0.5})
      for (int n : {2, 3, 5, 10}) check(Example2Thin{b}, std::pow(n, -1.0 / gamma));
  return {most_negative >= -1e-8,
          "most negative coefficient " + sci(most_negative) + " (" + where + ") over " + std::to_string(cases) +
              " thinning laws, n_max=200 (>= -1e-8)",
          ""};
}

Outcome commutativity() {
  std::mt19937_64 gen(20240601);
  double worst = 0.0;
  int cases = 0;
  const std::vector<ThinningFamily> families{Bernoulli{},        Example1Thin{0.0, 1}, Example1Thin{0.5, 1},
                                             Example1Thin{0.7, 2}, Example2Thin{-0.5}, Example2Thin{0.0},
                                             Example2Thin{0.5}};
  for (const auto& t : families) {
    const ParamRange range = admissible_range(t);
    std::uniform_real_distribution<double> u(range.lo, range.hi);
    for (int i = 0; i < 20; ++i) {
      double p1 = u(gen), p2 = u(gen);
      while (!range.contains(p1)) p1 = u(gen);
      while (!range.contains(p2)) p2 = u(gen);
      worst = std::max(worst, commutativity_residual(t, p1, p2).sup_residual);
      ++cases;
    }
  }
  return {worst < 1e-12, "max residual " + sci(worst) + " over " + std::to_string(cases) + " pairs (< 1e-12)", ""};
}

Outcome citation_model() {
  Outcome out;
  const FieldSim field{1.0, 0.5, 0.5, Seed{6, 0}};
  const auto totals = sample_field_totals(field, 1000000).values;
  const double tv = total_variation(table_masses(extract_pmf(FieldCitations{1.0, 0.5, 0.5}, 100)), totals);
  const std::uint64_t mode = sample_mode(totals);

  const auto sib_authors = sample_authors(0.5, 0.5, Seed{6, 1}, 1000000).values;
  const double tail = tail_exponent(sib_authors, 0.01);

  // Pooled authors of lambda = 100 fields are i.i.d. author draws. Ratio at
  // 10^6 authors and at 10^7 (the 10^6 run is a prefix), median over 3
  // independent replicates.
  std::vector<double> r6, r7;
  std::uint64_t capped = 0;
  for (std::uint64_t rep = 0; rep < 3; ++rep) {
    const auto d = sample_authors(0.5, 0.5, Seed{6, 100 + rep}, 10000000);
    capped += d.counters.capped;
    const auto prefix = std::span(d.values).first(1000000);
    r6.push_back(sample_mean(prefix) / static_cast<double>(lower_median(prefix)));
    r7.push_back(sample_mean(d.values) / static_cast<double>(lower_median(d.values)));
  }
  const double ratio6 = median_of(r6), ratio7 = median_of(r7);

  out.pass = tv < 8e-3 && mode == 0 && tail >= 0.4 && tail <= 0.6 && ratio6 > 5.0 && ratio7 > ratio6;
  out.detail = "TV " + sci(tv) + " (< 8e-3), mode " + std::to_string(mode) + " (= 0), tail exponent " + sci(tail) +
               " (in [0.4, 0.6]), mean/median " + sci(ratio6) + " at 1e6 (> 5) -> " + sci(ratio7) + " at 1e7 (growing)";
  out.csv = "tv,mode,tail_exponent,ratio_1e6,ratio_1e7,capped\n" + num(tv) + "," + std::to_string(mode) + "," +
            num(tail) + "," + num(ratio6) + "," + num(ratio7) + "," + std::to_string(capped) + "\n";
  return out;
}

Outcome gamma_casual() {
  double worst = 0.0;
  for (double b : {0.5, 1.0, 2.0})
    for (double g : {0.5, 1.0, 2.0, 5.0})
      for (int n = 1; n <= 100; ++n)
        worst = std::max(worst, casual_stability_residual(Gamma{b, g}, n).sup_residual);
  return {worst < 1e-12, "max residual " + sci(worst) + " over 1200 (b, gamma, n) cases (< 1e-12)", ""};
}

Outcome tempered_casual() {
  Outcome out;
  double worst = 0.0;
  for (double lambda : {0.5, 1.0})
    for (double alpha : {0.5, 1.0 / 3.0})
      for (double h : {0.5, 1.0, 2.0})
        for (int n = 1; n <= 50; ++n)
          worst = std::max(worst, casual_stability_residual(TemperedStable{lambda, alpha, h}, n).sup_residual);

  out.csv = "lambda,h,s,empirical,analytic,std_error\n";
  double worst_z = 0.0;
  std::uint64_t stream = 0;
  for (double lambda : {0.5, 1.0})
    for (double h : {0.5, 1.0, 2.0}) {
      const TemperedStable ts{lambda, 0.5, h};
      const auto xs = kernels::draw_chunked<double>(Exec::parallel, 1000000, Seed{8, stream++},
                                                    [&](Rng& r) { return sample_inverse_gaussian(ts, r); })
                          .values;
      for (double s : {0.5, 1.0, 2.0}) {
        double sum = 0.0, sum2 = 0.0;
        for (double x : xs) {
          const double v = std::exp(-s * x);
          sum += v;
          sum2 += v * v;
        }
        const double n = static_cast<double>(xs.size());
        const double mean = sum / n;
        const double se = std::sqrt(std::max(0.0, sum2 / n - mean * mean) / n);
        const double analytic = laplace_eval(ts, s);
        worst_z = std::max(worst_z, std::abs(mean - analytic) / se);
        out.csv += num(lambda) + "," + num(h) + "," + num(s) + "," + num(mean) + "," + num(analytic) + "," + num(se) + "\n";
      }
    }
  out.pass = worst < 1e-10 && worst_z < 4.0;
  out.detail = "max residual " + sci(worst) + " over 600 cases (< 1e-10); inverse-Gaussian Laplace transform within " +
               sci(worst_z) + " standard errors at 18 (law, s) points (< 4)";
  out.csv = "max_residual\n" + num(worst) + "\n" + out.csv;
  return out;
}

Outcome convergence() {
  const Gamma g{1.0, 2.0};
  std::vector<int> n_list;
  for (int n = 2; n <= 256; ++n) n_list.push_back(n);
  const auto curve = convergence_curve(matched_exponential(g), g, n_list, 2.0);
  bool bound_ok = true;
  double worst_bound = 0.0;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    worst_bound = std::max(worst_bound, curve.condition_b[i] * n_list[i]);
    if (!(curve.condition_b[i] <= 1.0 / n_list[i])) bound_ok = false;
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < curve.points.size(); ++i)
    if (curve.points[i - 1].n >= 8 && !(curve.points[i].sup_distance < curve.points[i - 1].sup_distance))
      decreasing = false;
  const double last = curve.points.back().sup_distance;
  return {bound_ok && decreasing && last < 1e-3,
          "max n * condition_b " + sci(worst_bound) + " (<= 1), sup distance " +
              (decreasing ? "strictly decreasing" : "NOT decreasing") + " for n >= 8, " + sci(last) +
              " at n = 256 (< 1e-3)",
          ""};
}

Outcome negative_control() {
  const double p = std::pow(10.0, -1.0 / 0.5);
  const double exact = discrete_stability_residual(SvhStable{1.0, 0.5}, Bernoulli{}, 10, p).sup_residual;
  const double off = discrete_stability_residual(SvhStable{1.0, 0.5}, Bernoulli{}, 10, 1.01 * p).sup_residual;
  return {off > 1e-4, "residual " + sci(off) + " with p(n) perturbed by 1% (> 1e-4), " + sci(exact) + " unperturbed", ""};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;  // <= 0: no stated limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  std::string csv6, csv8;
  const std::vector<Criterion> criteria{
      {1, "SvH stability identity", 5.0, svh_identity},
      {2, "Example 1 stability identity", 5.0, example1_identity},
      {3, "Example 2 stability identity", 10.0, example2_identity},
      {4, "thinning p.g.f. validity", 30.0, pgf_validity},
      {5, "semigroup commutativity", 5.0, commutativity},
      {6, "citation model consistency", 60.0,
       [&] {
         auto o = citation_model();
         csv6 = o.csv;
         return o;
       }},
      {7, "Gamma casual stability", 5.0, gamma_casual},
      {8, "tempered-stable casual stability", 60.0,
       [&] {
         auto o = tempered_casual();
         csv8 = o.csv;
         return o;
       }},
      {9, "convergence theorem", 10.0, convergence},
      {10, "negative control", 1.0, negative_control},
      {11, "determinism", 0.0,
       [&] {
         const bool same6 = citation_model().csv == csv6;
         const bool same8 = tempered_casual().csv == csv8;
         return Outcome{same6 && same8 && !csv6.empty() && !csv8.empty(),
                        std::string("rerun of criterion 6 ") + (same6 ? "byte-identical" : "DIFFERS") +
                            ", rerun of criterion 8 " + (same8 ? "byte-identical" : "DIFFERS"),
                        ""};
       }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what(), ""};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.budget_seconds <= 0.0 || seconds < c.budget_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::string timing = sci(seconds) + " s";
    if (c.budget_seconds > 0.0) timing += in_time ? " (< " + sci(c.budget_seconds) + " s)" : " (OVER " + sci(c.budget_seconds) + " s)";
    std::printf("%s %2d %s: %s; %s\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
