// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cmbrbg {

using Complex = std::complex<double>;

/// Spherical-harmonic coefficients a_lm of a real map, 0 <= m <= l <= lmax.
///
/// Negative m follow from the reality condition a_l,-m = (-1)^m conj(a_lm)
/// and are not stored. Storage is m-major: all l for m = 0, then m = 1, ...
class HarmonicCoeffs {
 public:
  HarmonicCoeffs() = default;
  explicit HarmonicCoeffs(int lmax, std::string detector_id = {});

  static constexpr std::size_t count(int lmax) noexcept {
    const auto n = static_cast<std::size_t>(lmax + 1);
    return n * (n + 1) / 2;
  }

  std::size_t index(int ell, int m) const noexcept {
    const auto l = static_cast<std::size_t>(lmax_);
    const auto mm = static_cast<std::size_t>(m);
    return mm * (2 * l + 3 - mm) / 2 + static_cast<std::size_t>(ell - m);
  }

  int lmax() const noexcept { return lmax_; }
  const std::string& detector_id() const noexcept { return detector_id_; }
  void set_detector_id(std::string id) { detector_id_ = std::move(id); }

  Complex& operator()(int ell, int m) { return values_[index(ell, m)]; }
  const Complex& operator()(int ell, int m) const { return values_[index(ell, m)]; }

  std::span<const Complex> values() const noexcept { return values_; }
  std::span<Complex> values() noexcept { return values_; }

 private:
  int lmax_ = -1;
  std::string detector_id_;
  std::vector<Complex> values_;
};

}  // namespace cmbrbg
