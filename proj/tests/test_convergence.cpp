#include <doctest.h>

#include "dstable/convergence.hpp"
#include "dstable/error.hpp"
#include "oracles.hpp"

using namespace dstable;

namespace {

std::vector<int> doubling(int from, int to) {
  std::vector<int> out;
  for (int n = from; n <= to; n *= 2) out.push_back(n);
  return out;
}

}  // namespace

TEST_CASE("normalized_sum_transform") {
  const Gamma g{1.0, 2.0};
  const auto L = as_function(LaplaceFamily{g});
  for (int n : {1, 3, 17, 100})
    for (double s : {1e-3, 0.5, 4.0, 300.0})
      CHECK(normalized_sum_transform(L, g, n, s) == doctest::Approx(laplace_eval(g, s)).epsilon(1e-13));

  const auto h = exponential_transform(0.7);
  for (double s : {0.1, 1.0, 9.0}) CHECK(normalized_sum_transform(h, g, 1, s) == doctest::Approx(h(s)).epsilon(1e-15));

  // h(s) = 1/(1 + b gamma s); -log g_n(1) = ((1 + b)^{1/n} - 1) / b.
  for (auto [b, gamma] : {std::pair{1.0, 2.0}, {0.5, 3.0}, {2.0, 0.5}}) {
    const Gamma fam{b, gamma};
    const auto hm = matched_exponential(fam);
    for (int n : {2, 5, 40}) {
      const double x = (std::pow(1.0 + b, 1.0 / n) - 1.0) / b;
      const double expected = std::pow(1.0 + b * gamma * x, -n);
      CHECK(normalized_sum_transform(hm, fam, n, 1.0) == doctest::Approx(expected).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(normalized_sum_transform(h, g, 2, -1.0), DomainError);
}

TEST_CASE("family_mean is -L'(0)") {
  for (const LaplaceFamily& f : {LaplaceFamily{Gamma{1.0, 2.0}}, LaplaceFamily{Gamma{0.3, 7.0}},
                                 LaplaceFamily{TemperedStable{1.0, 0.5, 1.0}},
                                 LaplaceFamily{TemperedStable{0.5, 1.0 / 3.0, 2.0}}}) {
    const double eps = 1e-6;
    const double slope = (laplace_eval(f, eps) - laplace_eval(f, 0.0)) / eps;
    CHECK(family_mean(f) == doctest::Approx(-slope).epsilon(1e-5));
  }
  CHECK(family_mean(Gamma{1.5, 2.0}) == 3.0);
}

TEST_CASE("condition (a)") {
  const Gamma g{1.0, 2.0};
  CHECK(condition_a(as_function(LaplaceFamily{g}), g, 2.0).sup == 0.0);

  const auto matched = condition_a(matched_exponential(g), g, 2.0);
  CHECK(std::isfinite(matched.sup));
  CHECK_FALSE(matched.diverging);
  // |h - L| / s^2 -> |h''(0) - L''(0)| / 2 = |2 (b gamma)^2 - b^2 gamma (gamma + 1)| / 2 = 1 as s -> 0.
  CHECK(matched.sup == doctest::Approx(1.0).epsilon(1e-3));

  const auto mismatched = condition_a(exponential_transform(4.0), g, 2.0);
  CHECK(mismatched.diverging);
  CHECK(mismatched.argmax_s == theorem_s_grid().points.front());
  const auto wider = condition_a(exponential_transform(4.0), g, 2.0, log_grid(1e-6, 1e4, 500));
  CHECK(wider.sup > 50.0 * mismatched.sup);
}

TEST_CASE("g_inverse") {
  CHECK(g_inverse(Gamma{1.0, 1.0}, 2, 1.0) == 3.0);
  for (double s : {1e-3, 0.7, 50.0}) {
    CHECK(g_inverse(Gamma{1.0, 1.0}, 1, s) == s);
    CHECK(g_inverse(TemperedStable{1.0, 0.5, 1.0}, 1, s) == s);
  }
  for (const TemperedStable ts : {TemperedStable{1.0, 0.5, 1.0}, TemperedStable{0.5, 1.0 / 3.0, 0.5},
                                  TemperedStable{1.0, 0.25, 2.0}}) {
    for (int n : {2, 7, 31, 100}) {
      for (double s : log_grid(1e-3, 1e2, 25).points) {
        const double y = g_inverse(ts, n, s);
        CHECK(std::abs(gfun_eval(ts, n, y) - std::exp(-s)) < 1e-10);
        CHECK(y == doctest::Approx(oracle::tempered_g_inverse(ts.alpha, ts.h, n, s)).epsilon(1e-10));
      }
    }
  }
  CHECK_THROWS_AS(g_inverse(Gamma{1.0, 1.0}, 2, 0.0), DomainError);
}

TEST_CASE("condition (b)") {
  const Gamma g{1.0, 1.0};
  const auto values = condition_b(g, 2.0, {1, 2, 4, 8, 16});
  CHECK(values[0] == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t i = 1; i < values.size(); ++i) {
    const int n = 1 << i;
    CHECK(values[i] <= 1.0 / n);
    CHECK(values[i] < values[i - 1]);
  }
  // Pointwise: n s^a b^a / ((1 + b s)^n - 1)^a, a = 2.
  for (double b : {0.5, 1.0, 2.0}) {
    for (int n : {2, 9, 64}) {
      for (double s : {1e-4, 0.01, 1.0, 30.0}) {
        const double y = g_inverse(Gamma{b, 1.0}, n, s);
        const double ours = n * std::pow(s / y, 2.0);
        // long double keeps (1 + b s)^n - 1 accurate at small s
        const long double grow = std::pow(1.0L + static_cast<long double>(b) * s, n) - 1.0L;
        const double closed = static_cast<double>(n * s * s * b * b / (grow * grow));
        CHECK(ours == doctest::Approx(closed).epsilon(1e-12));
      }
    }
  }
  const auto ts = condition_b(TemperedStable{1.0, 0.5, 1.0}, 2.0, {2, 4, 8});
  CHECK(ts[1] < ts[0]);
  CHECK(ts[2] < ts[1]);
}

TEST_CASE("convergence curve") {
  const Gamma g{1.0, 2.0};
  const auto fixed = convergence_curve(as_function(LaplaceFamily{g}), g, {1, 2, 5, 50});
  for (const auto& pt : fixed.points) CHECK(pt.sup_distance < 1e-12);

  const auto n_list = doubling(2, 256);
  const auto curve = convergence_curve(matched_exponential(g), g, n_list);
  CHECK(curve.warnings.empty());
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    CHECK(curve.points[i].sup_distance < curve.points[i - 1].sup_distance);
    if (curve.points[i - 1].n >= 16)
      CHECK(curve.points[i].sup_distance / curve.points[i - 1].sup_distance <= 0.6);
  }
  CHECK(curve.points.back().sup_distance < 1e-3);
  for (std::size_t i = 0; i < n_list.size(); ++i) CHECK(curve.condition_b[i] <= 1.0 / n_list[i]);

  const auto h = matched_exponential(g);
  const auto single = convergence_curve(h, g, {1});
  double direct = 0.0;
  for (double s : theorem_s_grid().points) direct = std::max(direct, std::abs(h(s) - laplace_eval(g, s)));
  CHECK(single.points[0].sup_distance == direct);

  const auto bad = convergence_curve(exponential_transform(4.0), g, {2, 4});
  REQUIRE_FALSE(bad.warnings.empty());
  CHECK(bad.warnings[0].find("condition (a)") != std::string::npos);
}

TEST_CASE("convergence sups are stable under grid refinement") {
  const Gamma g{1.0, 2.0};
  const Grid grid = theorem_s_grid();
  const Grid fine = refine(grid);
  const auto a = convergence_curve(matched_exponential(g), g, {2, 16, 128}, 2.0, grid);
  const auto b = convergence_curve(matched_exponential(g), g, {2, 16, 128}, 2.0, fine);
  for (std::size_t i = 0; i < a.points.size(); ++i)
    CHECK(std::abs(a.points[i].sup_distance - b.points[i].sup_distance) < 1e-9);
}
