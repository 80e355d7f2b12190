// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "cmbrbg/harmonics.hpp"
#include "cmbrbg/spectrum.hpp"

namespace cmbrbg {

/// Dense symmetric covariance over detectors, row-major, in uK^2.
class CovMatrix {
 public:
  CovMatrix() = default;
  explicit CovMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}
  CovMatrix(std::size_t n, std::vector<double> row_major);

  static CovMatrix scalar(double v) { return CovMatrix(1, {v}); }
  static CovMatrix identity(std::size_t n);
  static CovMatrix diagonal(std::span<const double> d);

  std::size_t dim() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  std::span<const double> values() const noexcept { return values_; }

  bool is_symmetric(double tol = 1e-12) const noexcept;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

/// Kullback divergence between zero-mean Gaussians with covariances
/// `empirical` and `model`:
///   0.5 [ tr(Chat C^-1) - log det(Chat C^-1) - n ].
/// Returns +infinity when `empirical` is only semi-definite (log det diverges).
/// Throws MatrixError when either input is not symmetric or `model` is not
/// positive definite.
double kullback(const CovMatrix& empirical, const CovMatrix& model);

/// Full-sky exact likelihood, as a negative log: sum_l (2l+1) kappa(Chat_l, C_l).
/// Both spans are indexed by l and must reach lmax.
double exact_neg_loglike(std::span<const CovMatrix> empirical, std::span<const CovMatrix> model,
                         int lmin, int lmax);
double exact_neg_loglike(std::span<const CovMatrix> empirical,
                         const std::function<CovMatrix(int)>& model, int lmin, int lmax);

/// Binned likelihood L = sum_r n_r kappa(Chat_r, C_r), single detector pair.
double binned_neg_loglike(std::span<const double> data, std::span<const double> model,
                          std::span<const double> n_modes);
/// Binned likelihood with a detector-pair matrix per bin.
double binned_neg_loglike(std::span<const CovMatrix> data, std::span<const CovMatrix> model,
                          std::span<const double> n_modes);

/// Empirical detector covariance at multipole l from a cross-spectrum set.
CovMatrix empirical_covariance(const CrossSpectrumSet& set, int ell);

/// Model covariance S_l * 1 1^T + diag(N_i(l)).
CovMatrix model_covariance(double signal, std::span<const double> noise);

struct NoiseEstimate {
  /// noise[i][l]: auto-spectrum excess of detector i over the signal.
  std::vector<AngularSpectrum> noise;
  /// Sampling error used for flagging, sqrt(2 / ((2l+1) f_sky)) C_l^ii.
  std::vector<AngularSpectrum> noise_sigma;
  /// Pair-mean cross-spectrum (first pass, autos included in noise fit).
  AngularSpectrum signal_first_pass;
  /// Signal re-extracted from cross-spectra only with the noise held fixed.
  AngularSpectrum signal;
  /// (detector, l) where noise < -5 sigma. Values are kept, not clipped.
  std::vector<std::pair<std::size_t, int>> flagged;
  int lmin = 2;
};

/// Two-step noise / signal separation.
///
/// Step 1 takes the signal as the mean of all distinct cross-spectra and the
/// noise of detector i as C^ii - signal. Step 2 holds that noise fixed and
/// re-extracts the signal from the cross-spectra alone, weighting pair (i, j)
/// by the inverse of its Gaussian variance C^ii C^jj + S^2.
NoiseEstimate estimate_noise_and_signal(const CrossSpectrumSet& spectra, int lmin = 2);

}  // namespace cmbrbg
