// Counter-based splittable random streams.
//
// Every random draw in the code is keyed by a StreamKey derived from the
// user seed and a lineage of context integers (realization, time step,
// cell, particle, purpose). Generators are value types created per task,
// so results are independent of iteration order and worker count.

#ifndef POPMC_RNG_HPP
#define POPMC_RNG_HPP

#include <cstdint>

namespace popmc::rng {

// Lineage purpose tags. Keeping them distinct prevents two different
// consumers (e.g. roulette and emission sampling in the same cell) from
// ever sharing a stream.
enum class Purpose : std::uint64_t {
  emission = 1,
  roulette = 2,
  allocation = 3,
  scattering = 4,
  census = 5,
  init = 6,
};

namespace detail {

// SplitMix64 finalizer (Steele, Lea, Flood 2014). Bijective on 64 bits.
constexpr std::uint64_t mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

} // namespace detail

// Identifies one random stream: a 64-bit digest folded over
// (seed, lineage...). For a fixed parent, derive() is injective in the
// child context: child -> mix(child + golden) is a bijection, adding the
// parent digest is injective, and the outer mix is a bijection.
class StreamKey {
public:
  static constexpr StreamKey root(std::uint64_t seed) noexcept {
    return StreamKey{detail::mix(seed + detail::kGolden)};
  }

  [[nodiscard]] constexpr StreamKey derive(std::uint64_t child_context) const noexcept {
    return StreamKey{detail::mix(digest_ + detail::mix(child_context + detail::kGolden))};
  }

  [[nodiscard]] constexpr StreamKey derive(Purpose p) const noexcept {
    return derive(static_cast<std::uint64_t>(p));
  }

  constexpr std::uint64_t digest() const noexcept { return digest_; }

  friend constexpr bool operator==(StreamKey a, StreamKey b) noexcept {
    return a.digest_ == b.digest_;
  }

private:
  constexpr explicit StreamKey(std::uint64_t digest) noexcept : digest_(digest) {}
  std::uint64_t digest_;
};

// SplitMix64 sequence seeded by a StreamKey digest. Counter-based: the
// i-th output is mix(digest + (i+1)*golden), so streams with distinct
// keys never share state.
class Generator {
public:
  constexpr explicit Generator(StreamKey key) noexcept : state_(key.digest()) {}

  constexpr std::uint64_t next_u64() noexcept {
    state_ += detail::kGolden;
    return detail::mix(state_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  constexpr double uniform01() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

private:
  std::uint64_t state_;
};

inline double uniform01(Generator& g) noexcept { return g.uniform01(); }

} // namespace popmc::rng

#endif // POPMC_RNG_HPP
