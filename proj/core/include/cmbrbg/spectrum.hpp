// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cmbrbg {

/// Angular power spectrum C_l for l = 0..lmax, in uK^2.
///
/// Holds either a model spectrum (non-negative by construction) or an
/// empirical one; only model spectra are required to be non-negative, which
/// `validate_model()` checks.
class AngularSpectrum {
 public:
  AngularSpectrum() = default;
  explicit AngularSpectrum(std::vector<double> values);

  int lmax() const noexcept { return static_cast<int>(values_.size()) - 1; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double operator[](int ell) const { return values_[static_cast<std::size_t>(ell)]; }
  double& operator[](int ell) { return values_[static_cast<std::size_t>(ell)]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  /// Throws ParameterError if any value is negative or non-finite.
  void validate_model() const;

 private:
  std::vector<double> values_;
};

}  // namespace cmbrbg
