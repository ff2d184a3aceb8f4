#include "dstable/kernels.hpp"

#include <numbers>

namespace dstable::kernels {

namespace {

using cplx = std::complex<double>;

std::vector<cplx> twiddles(std::size_t n) {
  std::vector<cplx> w(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    w[j] = {std::cos(angle), std::sin(angle)};
  }
  return w;
}

// Neumaier-compensated sum of values[j] * w[(j k) mod N].
cplx coefficient(std::span<const cplx> values, std::span<const cplx> w, std::size_t k) {
  const std::size_t n = values.size();
  double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
  auto add = [](double& s, double& c, double x) {
    const double t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  };
  std::size_t idx = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const cplx term = values[j] * w[idx];
    add(sr, cr, term.real());
    add(si, ci, term.imag());
    idx += k;
    if (idx >= n) idx %= n;
  }
  return cplx(sr + cr, si + ci) / static_cast<double>(n);
}

}  // namespace

std::vector<cplx> dft_head_serial(std::span<const cplx> values, std::size_t count) {
  const auto w = twiddles(values.size());
  std::vector<cplx> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = coefficient(values, w, k);
  return out;
}

std::vector<cplx> dft_head_parallel(std::span<const cplx> values, std::size_t count) {
  const auto w = twiddles(values.size());
  std::vector<cplx> out(count);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(count); ++k)
    out[static_cast<std::size_t>(k)] = coefficient(values, w, static_cast<std::size_t>(k));
  return out;
}

std::vector<cplx> dft_head(Exec exec, std::span<const cplx> values, std::size_t count) {
  return exec == Exec::parallel ? dft_head_parallel(values, count) : dft_head_serial(values, count);
}

}  // namespace dstable::kernels
