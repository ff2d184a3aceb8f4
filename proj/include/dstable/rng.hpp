#pragma once

#include <cstdint>
#include <random>

namespace dstable {

// Addresses one reproducible random stream. Child streams are derived by
// hashing, so a replicate or chunk index maps to the same stream no matter
// which thread consumes it.
struct Seed {
  std::uint64_t value = 0;
  std::uint64_t stream_id = 0;

  Seed child(std::uint64_t index) const noexcept;

  friend bool operator==(const Seed&, const Seed&) = default;
};

// Counters a sampler bumps instead of throwing mid-simulation.
struct DrawCounters {
  std::uint64_t capped = 0;    // Sibuya draws clipped at kSibuyaCap
  std::uint64_t overflow = 0;  // tabulated-law draws landing in the mass deficit
};

// Per-thread random state. Not shareable between threads; make one per
// stream with Seed::child.
class Rng {
 public:
  using engine_type = std::mt19937_64;

  explicit Rng(Seed seed);

  engine_type& engine() noexcept { return engine_; }
  const Seed& seed() const noexcept { return seed_; }

  // Uniform on [0, 1).
  double uniform();
  // Uniform on (0, 1].
  double uniform_pos();

  DrawCounters& counters() noexcept { return counters_; }
  const DrawCounters& counters() const noexcept { return counters_; }

 private:
  Seed seed_;
  engine_type engine_;
  DrawCounters counters_;
};

}  // namespace dstable
