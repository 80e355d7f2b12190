// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cmbrbg/alm.hpp"
#include "cmbrbg/grid.hpp"
#include "cmbrbg/spectrum.hpp"

namespace cmbrbg {

/// Forward transform by Gauss-Legendre quadrature:
///   a_lm = sum_pixels T Y*_lm Omega_pixel.
/// Exact for maps band-limited at the grid's lmax. Parallel over m with a
/// fixed ring summation order, so the result does not depend on `threads`.
HarmonicCoeffs analyze_map(const SkyMap& map, int lmax, int threads = 1);

/// Pseudo cross-spectrum of a detector pair.
struct PseudoSpectrum {
  std::string detector_i;
  std::string detector_j;
  AngularSpectrum values;
};

/// C_l^ij = 1/(2l+1) sum_{m=-l..l} a^i_lm conj(a^j_lm), with negative m folded
/// into m > 0 through the reality condition.
PseudoSpectrum pseudo_cross_spectrum(const HarmonicCoeffs& a, const HarmonicCoeffs& b);

struct Bin {
  int ell_min = 0;
  int ell_max = 0;
  std::vector<double> weights;  // weights[l - ell_min]

  double weight(int ell) const noexcept {
    if (ell < ell_min || ell > ell_max) return 0.0;
    return weights[static_cast<std::size_t>(ell - ell_min)];
  }
};

/// Ascending, non-overlapping bins with w(l) proportional to l(l+1)(2l+1).
class BinningScheme {
 public:
  BinningScheme() = default;
  explicit BinningScheme(std::vector<Bin> bins) : bins_(std::move(bins)) {}

  std::size_t size() const noexcept { return bins_.size(); }
  bool empty() const noexcept { return bins_.empty(); }
  const Bin& operator[](std::size_t r) const { return bins_[r]; }
  std::span<const Bin> bins() const noexcept { return bins_; }
  int ell_max() const noexcept { return bins_.empty() ? -1 : bins_.back().ell_max; }

 private:
  std::vector<Bin> bins_;
};

BinningScheme make_binning(std::span<const std::pair<int, int>> ranges);

/// One bin per multipole over [ell_min, ell_max].
BinningScheme single_ell_binning(int ell_min, int ell_max);

/// sum_l w_r(l) C_l for each bin. Works for empirical and model spectra alike.
std::vector<double> bin_spectrum(std::span<const double> spectrum, const BinningScheme& scheme);
inline std::vector<double> bin_spectrum(const AngularSpectrum& s, const BinningScheme& scheme) {
  return bin_spectrum(s.values(), scheme);
}

/// n_r = f_sky (sum (2l+1) w_r)^2 / sum (2l+1) w_r^2.
std::vector<double> effective_modes(const BinningScheme& scheme, double f_sky);

/// Binned data with its mode counts; `model` is optional (may be empty).
struct BinnedSpectrum {
  BinningScheme scheme;
  std::vector<double> values;
  std::vector<double> model;
  std::vector<double> n_modes;
  double f_sky = 1.0;
};

BinnedSpectrum make_binned(std::span<const double> spectrum, const BinningScheme& scheme,
                           double f_sky);

}  // namespace cmbrbg

namespace cmbrbg {

/// All auto- and cross-spectra of a set of detectors at one epoch.
class CrossSpectrumSet {
 public:
  CrossSpectrumSet(std::vector<std::string> detectors, int lmax, double f_sky = 1.0);

  std::size_t detector_count() const noexcept { return detectors_.size(); }
  const std::vector<std::string>& detectors() const noexcept { return detectors_; }
  int lmax() const noexcept { return lmax_; }
  double f_sky() const noexcept { return f_sky_; }

  /// Spectrum of pair (i, j); (j, i) refers to the same storage.
  AngularSpectrum& at(std::size_t i, std::size_t j);
  const AngularSpectrum& at(std::size_t i, std::size_t j) const;

  /// Whether pair (i, j) has been filled.
  bool has(std::size_t i, std::size_t j) const;

 private:
  std::size_t slot(std::size_t i, std::size_t j) const;

  std::vector<std::string> detectors_;
  int lmax_;
  double f_sky_;
  std::vector<AngularSpectrum> spectra_;
};

/// Every auto- and cross-spectrum of the given coefficient sets.
CrossSpectrumSet cross_spectrum_set(std::span<const HarmonicCoeffs> alms, double f_sky = 1.0);

}  // namespace cmbrbg
