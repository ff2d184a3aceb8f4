#pragma once

// Test-only reference computations. Nothing here calls into the library's
// evaluation code: the closed forms are written straight from their
// displayed formulas (std::acos, plain 1 - z), and p.m.f.s come from
// recurrences or truncated power-series arithmetic instead of Fourier
// inversion.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Direct formulas

inline cplx svh(double lambda, double alpha, cplx z) { return std::exp(-lambda * std::pow(1.0 - z, alpha)); }

inline cplx example1(double lambda, double gamma, double kappa, int m, cplx z) {
  const cplx w = std::pow(z, m);
  return std::exp(-lambda * std::pow((1.0 - w) / (1.0 - kappa * w), gamma));
}

inline cplx chebyshev_arg(double b, cplx z) { return ((1.0 + b) * z - 2.0 * b) / (2.0 - (1.0 + b) * z); }

inline cplx example2(double lambda, double gamma, double b, cplx z) {
  return std::exp(-lambda * std::pow(std::acos(chebyshev_arg(b, z)), gamma));
}

inline cplx field(double lambda, double p, double q, cplx z) {
  return std::exp(-lambda * std::pow((1.0 - z) / (1.0 - (1.0 - q) * z), p));
}

inline cplx geometric(double q, cplx z) { return q * z / (1.0 - (1.0 - q) * z); }

inline cplx author(double p, double q, cplx z) { return 1.0 - std::pow(1.0 - geometric(q, z), p); }

inline cplx ex1_thin(double kappa, int m, double p, cplx z) {
  const cplx w = std::pow(z, m);
  const cplx ratio = ((1.0 - p) + (p - kappa) * w) / ((1.0 - p * kappa) - kappa * (1.0 - p) * w);
  return std::pow(ratio, 1.0 / m);
}

inline cplx ex2_thin(double b, double p, cplx z) {
  const cplx t = std::cos(p * std::acos(chebyshev_arg(b, z)));
  return 2.0 * (b + t) / ((1.0 + b) * (1.0 + t));
}

// Tempered-stable normalizer written exactly as displayed:
// exp(h - ((s+h)^a / n + (n-1) h^a / n)^{1/a}).
inline double tempered_g(double alpha, double h, int n, double s) {
  const double inner = std::pow(s + h, alpha) / n + (n - 1.0) * std::pow(h, alpha) / n;
  return std::exp(h - std::pow(inner, 1.0 / alpha));
}

inline double tempered_laplace(double lambda, double alpha, double h, double s) {
  const double c = std::pow(lambda, alpha) * (1.0 + std::tan(std::numbers::pi * alpha / 2.0));
  return std::exp(-c * (std::pow(s + h, alpha) - std::pow(h, alpha)));
}

// Closed-form inverse of the tempered normalizer.
inline double tempered_g_inverse(double alpha, double h, int n, double s) {
  return std::pow(n * std::pow(s + h, alpha) - (n - 1.0) * std::pow(h, alpha), 1.0 / alpha) - h;
}

// ---------------------------------------------------------------------------
// P.m.f.s by recurrence

// q (1-q)^{k-1}, k >= 1
inline std::vector<double> geometric_pmf(double q, std::size_t n_max) {
  std::vector<double> out(n_max + 1, 0.0);
  double mass = q;
  for (std::size_t k = 1; k <= n_max; ++k, mass *= 1.0 - q) out[k] = mass;
  return out;
}

// p (1-p)_{k-1} / k!: P(1) = p, P(k+1) = P(k) (k - p) / (k + 1).
inline std::vector<double> sibuya_pmf(double p, std::size_t n_max) {
  std::vector<double> out(n_max + 1, 0.0);
  if (n_max >= 1) out[1] = p;
  for (std::size_t k = 1; k < n_max; ++k) out[k + 1] = out[k] * (static_cast<double>(k) - p) / (k + 1.0);
  return out;
}

// ---------------------------------------------------------------------------
// Truncated power series in z (coefficients 0..n)

using Series = std::vector<double>;

inline Series mul(const Series& a, const Series& b) {
  Series c(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < c.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

inline Series div(const Series& a, const Series& b) {
  Series c(a.size(), 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    double acc = a[k];
    for (std::size_t j = 1; j <= k; ++j) acc -= b[j] * c[k - j];
    c[k] = acc / b[0];
  }
  return c;
}

// a^e for a[0] > 0 (J.C.P. Miller recurrence).
inline Series pow(const Series& a, double e) {
  Series c(a.size(), 0.0);
  c[0] = std::pow(a[0], e);
  for (std::size_t k = 1; k < a.size(); ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += (e * static_cast<double>(j) - static_cast<double>(k - j)) * a[j] * c[k - j];
    c[k] = acc / (static_cast<double>(k) * a[0]);
  }
  return c;
}

// exp(a): c' = a' c.
inline Series exp(const Series& a) {
  Series c(a.size(), 0.0);
  c[0] = std::exp(a[0]);
  for (std::size_t k = 1; k < a.size(); ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * a[j] * c[k - j];
    c[k] = acc / static_cast<double>(k);
  }
  return c;
}

inline Series linear(double c0, double c1, std::size_t n) {
  Series s(n + 1, 0.0);
  s[0] = c0;
  if (n >= 1) s[1] = c1;
  return s;
}

// f(w) -> f(z^m)
inline Series spread(const Series& f, int m) {
  Series out(f.size(), 0.0);
  for (std::size_t k = 0; k * m < f.size(); ++k) out[k * m] = f[k];
  return out;
}

// Coefficients of the Example 1 thinning p.g.f.
inline Series ex1_thin_series(double kappa, int m, double p, std::size_t n) {
  const Series num = linear(1.0 - p, p - kappa, n);
  const Series den = linear(1.0 - p * kappa, -kappa * (1.0 - p), n);
  return spread(pow(div(num, den), 1.0 / m), m);
}

// Coefficients of exp{-lambda ((1 - w) / (1 - kappa w))^gamma}, w = z^m.
// (1 - w)^gamma has a zero constant term's base of 1, so the series is
// expanded as (1 - w)^gamma (1 - kappa w)^{-gamma}.
inline Series example1_series(double lambda, double gamma, double kappa, int m, std::size_t n) {
  Series inner = mul(pow(linear(1.0, -1.0, n), gamma), pow(linear(1.0, -kappa, n), -gamma));
  for (auto& c : inner) c *= -lambda;
  return spread(exp(inner), m);
}

inline Series field_series(double lambda, double p, double q, std::size_t n) {
  return example1_series(lambda, p, 1.0 - q, 1, n);
}

inline Series svh_series(double lambda, double alpha, std::size_t n) { return example1_series(lambda, alpha, 0.0, 1, n); }

// ---------------------------------------------------------------------------
// Monte Carlo helpers

inline double total_variation(const std::vector<double>& pmf, std::span<const std::uint64_t> samples,
                              std::size_t n_max) {
  std::vector<double> freq(n_max + 1, 0.0);
  for (auto x : samples)
    if (x <= n_max) freq[x] += 1.0;
  double tv = 0.0;
  for (std::size_t k = 0; k <= n_max; ++k) tv += std::abs(freq[k] / samples.size() - pmf[k]);
  return 0.5 * tv;
}

struct MeanSe {
  double mean;
  double se;
};

template <class F>
MeanSe mean_se(std::span<const std::uint64_t> samples, F f) {
  double s = 0.0, s2 = 0.0;
  for (auto x : samples) {
    const double v = f(x);
    s += v;
    s2 += v * v;
  }
  const double n = static_cast<double>(samples.size());
  const double mean = s / n;
  const double var = std::max(0.0, s2 / n - mean * mean);
  return {mean, std::sqrt(var / n)};
}

}  // namespace oracle
