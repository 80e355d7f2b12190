// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cmbrbg/likelihood.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cmbrbg/error.hpp"

namespace cmbrbg {

namespace {

using EigenMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenMatrix> as_eigen(const CovMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  return Eigen::Map<const EigenMatrix>(m.values().data(), n, n);
}

double log_det(const Eigen::LLT<EigenMatrix>& llt) {
  const auto& l = llt.matrixLLT();
  double s = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) s += std::log(l(i, i));
  return 2.0 * s;
}

void check_lengths(std::size_t a, std::size_t b, std::size_t c) {
  if (a != b || a != c) {
    throw ShapeError("binned likelihood: data has " + std::to_string(a) + " bins, model " +
                     std::to_string(b) + ", modes " + std::to_string(c));
  }
}

}  // namespace

CovMatrix::CovMatrix(std::size_t n, std::vector<double> row_major)
    : n_(n), values_(std::move(row_major)) {
  if (values_.size() != n * n) throw ShapeError("covariance needs n*n values");
}

CovMatrix CovMatrix::identity(std::size_t n) {
  CovMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CovMatrix CovMatrix::diagonal(std::span<const double> d) {
  CovMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

bool CovMatrix::is_symmetric(double tol) const noexcept {
  double scale = 1.0;
  for (double v : values_) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol * scale) return false;
    }
  }
  return true;
}

double kullback(const CovMatrix& empirical, const CovMatrix& model) {
  if (empirical.dim() != model.dim() || model.dim() == 0) {
    throw ShapeError("kullback: dimension mismatch (" + std::to_string(empirical.dim()) + " vs " +
                     std::to_string(model.dim()) + ")");
  }
  if (!empirical.is_symmetric()) throw MatrixError("kullback: empirical matrix is not symmetric");
  if (!model.is_symmetric()) throw MatrixError("kullback: model matrix is not symmetric");

  const EigenMatrix c = as_eigen(model);
  const EigenMatrix chat = as_eigen(empirical);
  const Eigen::LLT<EigenMatrix> c_llt(c);
  if (c_llt.info() != Eigen::Success) {
    throw MatrixError("kullback: model matrix is not positive definite");
  }
  const Eigen::LLT<EigenMatrix> chat_llt(chat);
  if (chat_llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();

  const double trace = c_llt.solve(chat).trace();
  const double logdet = log_det(chat_llt) - log_det(c_llt);
  const auto n = static_cast<double>(model.dim());
  return 0.5 * (trace - logdet - n);
}

double exact_neg_loglike(std::span<const CovMatrix> empirical, std::span<const CovMatrix> model,
                         int lmin, int lmax) {
  if (lmin < 2 || lmax < lmin) throw ParameterError("exact likelihood needs 2 <= lmin <= lmax");
  const auto need = static_cast<std::size_t>(lmax + 1);
  if (empirical.size() < need || model.size() < need) {
    throw BandLimitError("exact likelihood: spectra stop before lmax = " + std::to_string(lmax));
  }
  double sum = 0.0;
  for (int l = lmin; l <= lmax; ++l) {
    const auto i = static_cast<std::size_t>(l);
    sum += (2.0 * l + 1.0) * kullback(empirical[i], model[i]);
  }
  return sum;
}

double exact_neg_loglike(std::span<const CovMatrix> empirical,
                         const std::function<CovMatrix(int)>& model, int lmin, int lmax) {
  if (lmin < 2 || lmax < lmin) throw ParameterError("exact likelihood needs 2 <= lmin <= lmax");
  if (empirical.size() < static_cast<std::size_t>(lmax + 1)) {
    throw BandLimitError("exact likelihood: spectra stop before lmax = " + std::to_string(lmax));
  }
  double sum = 0.0;
  for (int l = lmin; l <= lmax; ++l) {
    sum += (2.0 * l + 1.0) * kullback(empirical[static_cast<std::size_t>(l)], model(l));
  }
  return sum;
}

double binned_neg_loglike(std::span<const double> data, std::span<const double> model,
                          std::span<const double> n_modes) {
  check_lengths(data.size(), model.size(), n_modes.size());
  double sum = 0.0;
  for (std::size_t r = 0; r < data.size(); ++r) {
    if (!(model[r] > 0.0)) {
      throw ParameterError("binned likelihood: model bin " + std::to_string(r + 1) +
                           " is not positive");
    }
    sum += n_modes[r] * kullback(CovMatrix::scalar(data[r]), CovMatrix::scalar(model[r]));
  }
  return sum;
}

double binned_neg_loglike(std::span<const CovMatrix> data, std::span<const CovMatrix> model,
                          std::span<const double> n_modes) {
  check_lengths(data.size(), model.size(), n_modes.size());
  double sum = 0.0;
  for (std::size_t r = 0; r < data.size(); ++r) sum += n_modes[r] * kullback(data[r], model[r]);
  return sum;
}

CovMatrix empirical_covariance(const CrossSpectrumSet& set, int ell) {
  const std::size_t d = set.detector_count();
  CovMatrix m(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      const double v = set.at(i, j)[ell];
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

CovMatrix model_covariance(double signal, std::span<const double> noise) {
  CovMatrix m(noise.size());
  for (std::size_t i = 0; i < noise.size(); ++i) {
    for (std::size_t j = 0; j < noise.size(); ++j) m(i, j) = signal;
    m(i, i) += noise[i];
  }
  return m;
}

NoiseEstimate estimate_noise_and_signal(const CrossSpectrumSet& spectra, int lmin) {
  const std::size_t d = spectra.detector_count();
  if (d < 2) throw ParameterError("noise estimation needs at least two detectors");
  const int lmax = spectra.lmax();
  if (lmin < 0 || lmin > lmax) throw ParameterError("noise estimation: bad lmin");
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      if (!spectra.has(i, j) || spectra.at(i, j).lmax() < lmax) {
        throw ParameterError("noise estimation: missing spectrum for pair (" + std::to_string(i) +
                             ", " + std::to_string(j) + ")");
      }
    }
  }
  bool any_nonzero = false;
  for (std::size_t i = 0; i < d && !any_nonzero; ++i) {
    for (std::size_t j = i; j < d && !any_nonzero; ++j) {
      for (double v : spectra.at(i, j).values()) any_nonzero = any_nonzero || v != 0.0;
    }
  }
  if (!any_nonzero) throw ParameterError("noise estimation: all spectra are zero");

  const auto n_ell = static_cast<std::size_t>(lmax + 1);
  NoiseEstimate out;
  out.lmin = lmin;
  out.signal_first_pass = AngularSpectrum(std::vector<double>(n_ell, 0.0));
  out.signal = AngularSpectrum(std::vector<double>(n_ell, 0.0));
  out.noise.assign(d, AngularSpectrum(std::vector<double>(n_ell, 0.0)));
  out.noise_sigma.assign(d, AngularSpectrum(std::vector<double>(n_ell, 0.0)));

  const double pairs = static_cast<double>(d * (d - 1) / 2);
  for (int l = lmin; l <= lmax; ++l) {
    // Step 1: all parameters from autos and crosses together.
    double cross_mean = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) cross_mean += spectra.at(i, j)[l];
    }
    cross_mean /= pairs;
    out.signal_first_pass[l] = cross_mean;

    const double nu = (2.0 * l + 1.0) * spectra.f_sky();
    for (std::size_t i = 0; i < d; ++i) {
      const double auto_spec = spectra.at(i, i)[l];
      out.noise[i][l] = auto_spec - cross_mean;
      out.noise_sigma[i][l] = std::sqrt(2.0 / nu) * std::abs(auto_spec);
      if (out.noise[i][l] < -5.0 * out.noise_sigma[i][l]) out.flagged.emplace_back(i, l);
    }

    // Step 2: noise fixed, signal from crosses only.
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) {
        const double ci = cross_mean + out.noise[i][l];
        const double cj = cross_mean + out.noise[j][l];
        const double var = ci * cj + cross_mean * cross_mean;
        const double w = var > 0.0 ? 1.0 / var : 0.0;
        num += w * spectra.at(i, j)[l];
        den += w;
      }
    }
    out.signal[l] = den > 0.0 ? num / den : cross_mean;
  }
  return out;
}

}  // namespace cmbrbg
