// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace raterlens::rng {

// Stafford mix13 finalizer (the splitmix64 output function). Bijective on
// 64-bit words; the workhorse behind all keyed draws below.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Absorb one word into a running key. Chained mix64 keeps distinct input
// tuples on distinct streams without any sequential state.
constexpr std::uint64_t absorb(std::uint64_t key, std::uint64_t word) noexcept {
  return mix64(key + kGolden + word);
}

constexpr std::uint64_t key2(std::uint64_t seed, std::uint64_t a) noexcept {
  return absorb(mix64(seed + kGolden), a);
}

constexpr std::uint64_t key3(std::uint64_t seed, std::uint64_t a,
                             std::uint64_t b) noexcept {
  return absorb(key2(seed, a), b);
}

// Counter-based uniform draw: one double in [0,1) from a key. Order- and
// thread-independent by construction.
inline double uniform01(std::uint64_t key) noexcept {
  return static_cast<double>(mix64(key + kGolden) >> 11) * 0x1.0p-53;
}

// FNV-1a over bytes; used to fold stage names and string ids into seeds.
constexpr std::uint64_t fnv1a(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// One global seed fans out to per-stage sub-seeds by stable hashing of the
// stage name.
constexpr std::uint64_t stage_seed(std::uint64_t global_seed,
                                   std::string_view stage) noexcept {
  return absorb(mix64(global_seed + kGolden), fnv1a(stage));
}

// Small sequential PRNG (splitmix64) for shuffles and Gaussian init. Not
// stdlib so that the exact stream is pinned across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += kGolden;
    return mix64(state_);
  }

  double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Unbiased integer in [0, n) via rejection.
  std::uint64_t below(std::uint64_t n) noexcept {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  // Box-Muller with a cached spare.
  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// In-place Fisher-Yates. Hand-rolled (std::shuffle's draw sequence is not
// pinned by the standard).
template <typename T>
void shuffle(std::span<T> values, SplitMix64& gen) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(gen.below(i));
    std::swap(values[i - 1], values[j]);
  }
}

// First `take` entries of a Fisher-Yates shuffle of [0, n). Prefix-consistent:
// the same generator state yields nested selections as `take` grows.
std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                    std::size_t take,
                                                    SplitMix64& gen);

}  // namespace raterlens::rng
