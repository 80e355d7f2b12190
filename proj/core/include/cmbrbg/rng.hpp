// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace cmbrbg {

/// SplitMix64 finalizer (Steele, Lea & Flood 2014). Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// Derive an independent stream key from a parent seed and a list of tags.
/// Used to split one run seed into sky / per-detector / per-epoch seeds.
std::uint64_t derive_seed(std::uint64_t parent,
                          std::initializer_list<std::uint64_t> tags) noexcept;

/// Hash a short label (FNV-1a 64) so it can be used as a derive_seed tag.
std::uint64_t label_tag(std::string_view label) noexcept;

/// Counter-based generator: draw k is mix64(seed + (k + 1) * golden gamma).
///
/// This is exactly the SplitMix64 sequence, but the state is an explicit
/// counter so any draw can be addressed without replaying the stream.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t next_u64() noexcept { return at(counter_++); }

  /// Draw number `index` of this stream; does not move the counter.
  std::uint64_t at(std::uint64_t index) const noexcept {
    return mix64(seed_ + (index + 1) * kGoldenGamma);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal deviate, Box-Muller; both halves of each pair are used.
  double gaussian() noexcept;

  /// Uniform integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace cmbrbg
