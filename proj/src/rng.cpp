#include "dstable/rng.hpp"

#include <array>

namespace dstable {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_engine(const Seed& seed) {
  const std::array<std::uint32_t, 4> words{
      static_cast<std::uint32_t>(seed.value), static_cast<std::uint32_t>(seed.value >> 32),
      static_cast<std::uint32_t>(seed.stream_id), static_cast<std::uint32_t>(seed.stream_id >> 32)};
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace

Seed Seed::child(std::uint64_t index) const noexcept {
  return Seed{value, splitmix64(stream_id ^ splitmix64(index + 0x632be59bd9b4e019ULL))};
}

Rng::Rng(Seed seed) : seed_(seed), engine_(make_engine(seed)) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform_pos() { return 1.0 - uniform(); }

}  // namespace dstable
