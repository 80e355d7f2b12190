// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cmbrbg/rng.hpp"

#include <cmath>
#include <numbers>

namespace cmbrbg {

std::uint64_t derive_seed(std::uint64_t parent,
                          std::initializer_list<std::uint64_t> tags) noexcept {
  std::uint64_t h = mix64(parent ^ 0x6A09E667F3BCC909ULL);
  for (auto t : tags) {
    h = mix64(h + kGoldenGamma + mix64(t));
  }
  return h;
}

std::uint64_t label_tag(std::string_view label) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

double CounterRng::gaussian() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // 1 - u lies in (0, 1], so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

std::uint64_t CounterRng::below(std::uint64_t bound) noexcept {
  // Accept draws below the largest multiple of bound that fits in 2^64.
  const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x >= threshold) return x % bound;
  }
}

}  // namespace cmbrbg
