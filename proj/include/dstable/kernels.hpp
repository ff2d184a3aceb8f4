#pragma once

// Data-parallel inner loops. Every kernel has a serial reference and an
// OpenMP variant; the two must agree bit-for-bit (sup reductions break ties
// toward the smaller index, sampling is chunked on fixed Seed children).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <span>
#include <vector>

#include "dstable/rng.hpp"

namespace dstable {

enum class Exec { serial, parallel };

namespace kernels {

struct SupResult {
  double value = 0.0;
  std::size_t index = 0;
};

namespace detail {

// NaN is treated as +inf so a broken evaluation can never pass a check.
inline double sup_key(double v) noexcept {
  return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

// Keeps the exception raised at the smallest index so a parallel loop
// reports the same failure as its serial reference.
class FirstError {
 public:
  void capture(std::size_t index) {
    std::lock_guard lock(mutex_);
    if (!error_ || index < index_) {
      error_ = std::current_exception();
      index_ = index;
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
  std::size_t index_ = 0;
};

inline void merge(SupResult& acc, const SupResult& other) noexcept {
  if (other.value > acc.value || (other.value == acc.value && other.index < acc.index)) acc = other;
}

}  // namespace detail

// max_i f(i) over i in [0, count).
template <class F>
SupResult sup_serial(std::size_t count, F&& f) {
  SupResult best{-std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < count; ++i) {
    const double v = detail::sup_key(f(i));
    if (v > best.value) best = {v, i};
  }
  return best;
}

template <class F>
SupResult sup_parallel(std::size_t count, F&& f) {
  SupResult best{-std::numeric_limits<double>::infinity(), 0};
  detail::FirstError error;
#pragma omp parallel
  {
    SupResult local{-std::numeric_limits<double>::infinity(), 0};
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
      const auto idx = static_cast<std::size_t>(i);
      try {
        const double v = detail::sup_key(f(idx));
        if (v > local.value) local = {v, idx};
      } catch (...) {
        error.capture(idx);
      }
    }
#pragma omp critical(dstable_sup_merge)
    detail::merge(best, local);
  }
  error.rethrow();
  return best;
}

template <class F>
SupResult sup(Exec exec, std::size_t count, F&& f) {
  return exec == Exec::parallel ? sup_parallel(count, f) : sup_serial(count, f);
}

// out[i] = f(i).
template <class T, class F>
void map_serial(std::span<T> out, F&& f) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(i);
}

template <class T, class F>
void map_parallel(std::span<T> out, F&& f) {
  detail::FirstError error;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(out.size()); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      out[idx] = f(idx);
    } catch (...) {
      error.capture(idx);
    }
  }
  error.rethrow();
}

template <class T, class F>
void map(Exec exec, std::span<T> out, F&& f) {
  if (exec == Exec::parallel)
    map_parallel(out, f);
  else
    map_serial(out, f);
}

// Leading DFT coefficients c_k = (1/N) sum_j v_j exp(-2 pi i j k / N) for
// k < count, N = values.size(). Sums are compensated (Neumaier).
std::vector<std::complex<double>> dft_head_serial(std::span<const std::complex<double>> values,
                                                  std::size_t count);
std::vector<std::complex<double>> dft_head_parallel(std::span<const std::complex<double>> values,
                                                    std::size_t count);
std::vector<std::complex<double>> dft_head(Exec exec, std::span<const std::complex<double>> values,
                                           std::size_t count);

inline constexpr std::size_t kSampleChunk = 4096;

template <class T>
struct Draws {
  std::vector<T> values;
  DrawCounters counters;
};

// values[i] = draw(rng) where sample i lives in chunk i / kSampleChunk and
// chunk c draws from Rng(seed.child(c)). Output is independent of thread
// count, and a prefix of a longer run equals the shorter run.
template <class T, class Draw>
Draws<T> draw_chunked_serial(std::size_t count, Seed seed, Draw&& draw) {
  Draws<T> out{std::vector<T>(count), {}};
  const std::size_t chunks = (count + kSampleChunk - 1) / kSampleChunk;
  for (std::size_t c = 0; c < chunks; ++c) {
    Rng rng(seed.child(c));
    const std::size_t end = std::min(count, (c + 1) * kSampleChunk);
    for (std::size_t i = c * kSampleChunk; i < end; ++i) out.values[i] = draw(rng);
    out.counters.capped += rng.counters().capped;
    out.counters.overflow += rng.counters().overflow;
  }
  return out;
}

template <class T, class Draw>
Draws<T> draw_chunked_parallel(std::size_t count, Seed seed, Draw&& draw) {
  Draws<T> out{std::vector<T>(count), {}};
  const auto chunks = static_cast<std::ptrdiff_t>((count + kSampleChunk - 1) / kSampleChunk);
  std::uint64_t capped = 0;
  std::uint64_t overflow = 0;
  detail::FirstError error;
#pragma omp parallel for schedule(dynamic) reduction(+ : capped, overflow)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    Rng rng(seed.child(static_cast<std::uint64_t>(c)));
    const std::size_t begin = static_cast<std::size_t>(c) * kSampleChunk;
    const std::size_t end = std::min(count, begin + kSampleChunk);
    try {
      for (std::size_t i = begin; i < end; ++i) out.values[i] = draw(rng);
    } catch (...) {
      error.capture(begin);
    }
    capped += rng.counters().capped;
    overflow += rng.counters().overflow;
  }
  error.rethrow();
  out.counters = {capped, overflow};
  return out;
}

template <class T, class Draw>
Draws<T> draw_chunked(Exec exec, std::size_t count, Seed seed, Draw&& draw) {
  return exec == Exec::parallel ? draw_chunked_parallel<T>(count, seed, draw)
                                : draw_chunked_serial<T>(count, seed, draw);
}

}  // namespace kernels
}  // namespace dstable
