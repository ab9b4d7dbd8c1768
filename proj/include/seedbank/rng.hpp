#pragma once

#include <cmath>
#include <cstdint>

// Deterministic randomness. All draws derive from one base seed through an
// explicit splitting rule: replicate seed = base seed + replicate index,
// stream key = stream_key(replicate seed, stream id). Field noise uses a
// counter-based generator so the value at (step, site) is a pure function of
// the key; parallel and serial evaluation orders produce identical bits.

namespace seedbank {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer; bijective on uint64 with full avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Stream identifiers keep draw sequences of different purposes disjoint even
// when they share a replicate seed.
enum class Stream : std::uint64_t {
  spde_noise = 1,
  dual_events = 2,
  onoff_path = 3,
  fk_paths = 4,
  hit_extension = 5,
  test_data = 900,
};

constexpr std::uint64_t stream_key(std::uint64_t seed, Stream stream) noexcept {
  return mix64(seed ^ mix64(kGoldenGamma * (static_cast<std::uint64_t>(stream) + 1)));
}

constexpr std::uint64_t replicate_seed(std::uint64_t base_seed, std::uint64_t replicate) noexcept {
  return base_seed + replicate;  // wraparound is harmless: keys are mixed afterwards
}

// w >> 11 has 53 uniform bits; +1 keeps the value strictly positive for logs.
constexpr double unit_from_bits(std::uint64_t w) noexcept {
  return static_cast<double>(w >> 11) * 0x1.0p-53;  // [0, 1)
}
constexpr double unit_open_from_bits(std::uint64_t w) noexcept {
  return static_cast<double>((w >> 11) + 1) * 0x1.0p-53;  // (0, 1]
}

inline double normal_from_bits(std::uint64_t a, std::uint64_t b) noexcept {
  const double u1 = unit_open_from_bits(a);
  const double u2 = unit_from_bits(b);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

// Stateless generator: word(i) is independent of evaluation order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t word(std::uint64_t counter) const noexcept {
    return mix64(key_ + kGoldenGamma * (counter + 1));
  }
  double uniform(std::uint64_t counter) const noexcept { return unit_from_bits(word(counter)); }
  // One normal per counter; consumes the word pair (2c, 2c+1).
  double normal(std::uint64_t counter) const noexcept {
    return normal_from_bits(word(2 * counter), word(2 * counter + 1));
  }
  std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
};

// Sequential SplitMix64 stream for event-driven simulation.
class SequenceRng {
 public:
  explicit SequenceRng(std::uint64_t key) : state_(key) {}

  std::uint64_t next() noexcept {
    state_ += kGoldenGamma;
    return mix64(state_);
  }
  double uniform() noexcept { return unit_from_bits(next()); }        // [0, 1)
  double uniform_open() noexcept { return unit_open_from_bits(next()); }  // (0, 1]
  double normal() noexcept {
    const std::uint64_t a = next();
    const std::uint64_t b = next();
    return normal_from_bits(a, b);
  }
  // Exponential waiting time with the given rate; rate must be positive.
  double exponential(double rate) noexcept { return -std::log(uniform_open()) / rate; }

 private:
  std::uint64_t state_;
};

}  // namespace seedbank
