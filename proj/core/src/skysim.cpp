// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cmbrbg/skysim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cmbrbg/error.hpp"
#include "cmbrbg/legendre.hpp"
#include "cmbrbg/rng.hpp"
#include "parallel.hpp"

namespace cmbrbg {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// Legendre P_n and its derivative at x by the standard recurrence.
void legendre_p(int n, double x, double& p, double& dp) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

// ---------------------------------------------------------------------------
// AngularSpectrum

AngularSpectrum::AngularSpectrum(std::vector<double> values) : values_(std::move(values)) {}

void AngularSpectrum::validate_model() const {
  for (std::size_t l = 0; l < values_.size(); ++l) {
    if (!std::isfinite(values_[l]) || values_[l] < 0.0) {
      throw ParameterError("model spectrum must be finite and non-negative; C_" +
                           std::to_string(l) + " = " + std::to_string(values_[l]));
    }
  }
}

// ---------------------------------------------------------------------------
// GaussLegendreGrid

GaussLegendreGrid::GaussLegendreGrid(int lmax) : lmax_(lmax) {
  if (lmax < 0) throw ParameterError("grid lmax must be >= 0");
  const int n = lmax + 1;
  n_phi_ = static_cast<std::size_t>(2 * lmax + 1);
  cos_theta_.resize(static_cast<std::size_t>(n));
  gl_weights_.resize(static_cast<std::size_t>(n));

  if (n == 1) {
    cos_theta_[0] = 0.0;
    gl_weights_[0] = 2.0;
  } else {
    // Nodes come in +/- pairs; solve for the positive half by Newton.
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double p = 0.0;
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        legendre_p(n, x, p, dp);
        const double dx = p / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      legendre_p(n, x, p, dp);
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      const auto lo = static_cast<std::size_t>(i);
      const auto hi = static_cast<std::size_t>(n - 1 - i);
      cos_theta_[lo] = x;
      cos_theta_[hi] = -x;
      gl_weights_[lo] = w;
      gl_weights_[hi] = w;
    }
    if (n % 2 == 1) cos_theta_[static_cast<std::size_t>(n / 2)] = 0.0;
  }

  pixel_weights_.resize(cos_theta_.size());
  const double dphi = 2.0 * std::numbers::pi / static_cast<double>(n_phi_);
  for (std::size_t j = 0; j < cos_theta_.size(); ++j) {
    pixel_weights_[j] = gl_weights_[j] * dphi;
  }

  // Edges run from +1 at the north pole down to -1; the last is pinned.
  cell_edges_.resize(cos_theta_.size() + 1);
  cell_edges_[0] = 1.0;
  for (std::size_t j = 0; j < cos_theta_.size(); ++j) {
    cell_edges_[j + 1] = cell_edges_[j] - gl_weights_[j];
  }
  cell_edges_.back() = -1.0;
}

double GaussLegendreGrid::phi(std::size_t k) const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_phi_);
}

// ---------------------------------------------------------------------------
// SkyMask

SkyMask::SkyMask(GaussLegendreGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.n_pixels()) {
    throw ShapeError("mask has " + std::to_string(values_.size()) + " values, grid has " +
                     std::to_string(grid_.n_pixels()) + " pixels");
  }
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) throw ParameterError("mask values must lie in [0, 1]");
  }
}

SkyMask SkyMask::full(const GaussLegendreGrid& grid) {
  return SkyMask(grid, std::vector<double>(grid.n_pixels(), 1.0));
}

SkyMask SkyMask::galactic_band(const GaussLegendreGrid& grid, double cos_cut) {
  if (!(cos_cut >= 0.0 && cos_cut <= 1.0)) {
    throw ParameterError("band mask cut must lie in [0, 1]");
  }
  std::vector<double> values(grid.n_pixels(), 0.0);
  const auto weights = grid.ring_weights();
  for (std::size_t j = 0; j < grid.n_theta(); ++j) {
    const double top = grid.cell_edge(j);
    const double bottom = grid.cell_edge(j + 1);
    const double kept = std::max(0.0, std::min(top, cos_cut) - std::max(bottom, -cos_cut));
    const double fraction = std::clamp(kept / weights[j], 0.0, 1.0);
    for (std::size_t k = 0; k < grid.n_phi(); ++k) values[j * grid.n_phi() + k] = fraction;
  }
  return SkyMask(grid, std::move(values));
}

double SkyMask::f_sky() const noexcept {
  double sum = 0.0;
  for (std::size_t j = 0; j < grid_.n_theta(); ++j) {
    double ring = 0.0;
    for (std::size_t k = 0; k < grid_.n_phi(); ++k) ring += values_[j * grid_.n_phi() + k];
    sum += ring * grid_.pixel_weight(j);
  }
  return sum / kFourPi;
}

// ---------------------------------------------------------------------------
// Operations

AngularSpectrum fiducial_spectrum(const ToyModelParams& params, int lmax) {
  if (lmax < 2) throw ParameterError("fiducial spectrum needs lmax >= 2");
  if (!(params.amplitude >= 0.0) || !std::isfinite(params.amplitude)) {
    throw ParameterError("amplitude must be finite and >= 0");
  }
  if (!(params.ell_damp > 0.0) || !std::isfinite(params.ell_damp)) {
    throw ParameterError("damping scale must be finite and > 0");
  }
  std::vector<double> c(static_cast<std::size_t>(lmax + 1), 0.0);
  for (int l = 2; l <= lmax; ++l) {
    const double r = l / params.ell_damp;
    c[static_cast<std::size_t>(l)] = params.amplitude * std::exp(-r * r) / (l * (l + 1.0));
  }
  return AngularSpectrum(std::move(c));
}

HarmonicCoeffs synthesize_alm(const AngularSpectrum& spectrum, std::uint64_t seed) {
  if (spectrum.empty()) throw ParameterError("empty spectrum");
  spectrum.validate_model();
  const int lmax = spectrum.lmax();
  HarmonicCoeffs alm(lmax);
  CounterRng rng(seed);
  // Draw order is m-major / l-minor, matching storage.
  for (int m = 0; m <= lmax; ++m) {
    for (int l = m; l <= lmax; ++l) {
      const double c = spectrum[l];
      if (m == 0) {
        alm(l, 0) = Complex(std::sqrt(c) * rng.gaussian(), 0.0);
      } else {
        const double s = std::sqrt(0.5 * c);
        const double re = rng.gaussian();
        const double im = rng.gaussian();
        alm(l, m) = Complex(s * re, s * im);
      }
    }
  }
  return alm;
}

SkyMap synthesize_map(const HarmonicCoeffs& alm, const GaussLegendreGrid& grid, int threads) {
  if (alm.lmax() > grid.lmax()) {
    throw BandLimitError("alm lmax " + std::to_string(alm.lmax()) + " exceeds grid band limit " +
                         std::to_string(grid.lmax()));
  }
  const int lmax = alm.lmax();
  const std::size_t n_phi = grid.n_phi();
  SkyMap map(grid, alm.detector_id());

  std::vector<double> cos_table(n_phi);
  std::vector<double> sin_table(n_phi);
  for (std::size_t t = 0; t < n_phi; ++t) {
    cos_table[t] = std::cos(grid.phi(t));
    sin_table[t] = std::sin(grid.phi(t));
  }

  detail::parallel_for(grid.n_theta(), threads, [&](std::size_t j) {
    const double x = grid.cos_theta()[j];
    std::vector<double> lambda(static_cast<std::size_t>(lmax + 1));
    std::vector<Complex> f(static_cast<std::size_t>(lmax + 1));
    for (int m = 0; m <= lmax; ++m) {
      legendre_column(m, x, lmax, lambda);
      Complex acc(0.0, 0.0);
      for (int l = m; l <= lmax; ++l) acc += alm(l, m) * lambda[static_cast<std::size_t>(l - m)];
      f[static_cast<std::size_t>(m)] = acc;
    }
    for (std::size_t k = 0; k < n_phi; ++k) {
      double value = f[0].real();
      for (int m = 1; m <= lmax; ++m) {
        const std::size_t t = (static_cast<std::size_t>(m) * k) % n_phi;
        const Complex& fm = f[static_cast<std::size_t>(m)];
        value += 2.0 * (fm.real() * cos_table[t] - fm.imag() * sin_table[t]);
      }
      map.at(j, k) = value;
    }
  });
  return map;
}

SkyMap add_noise(const SkyMap& map, double sigma_pix, std::uint64_t seed) {
  if (!(sigma_pix >= 0.0) || !std::isfinite(sigma_pix)) {
    throw ParameterError("noise sigma must be finite and >= 0");
  }
  SkyMap out = map;
  if (sigma_pix == 0.0) return out;
  CounterRng rng(seed);
  for (double& p : out.pixels) p += sigma_pix * rng.gaussian();
  return out;
}

SkyMap apply_mask(const SkyMap& map, const SkyMask& mask) {
  if (!(map.grid == mask.grid())) throw ShapeError("mask grid does not match map grid");
  SkyMap out = map;
  const auto values = mask.values();
  for (std::size_t p = 0; p < out.pixels.size(); ++p) out.pixels[p] *= values[p];
  out.masked = true;
  return out;
}

double white_noise_level(const GaussLegendreGrid& grid, double sigma_pix) {
  double sum = 0.0;
  for (std::size_t j = 0; j < grid.n_theta(); ++j) {
    const double w = grid.pixel_weight(j);
    sum += static_cast<double>(grid.n_phi()) * w * w;
  }
  return sigma_pix * sigma_pix * sum / kFourPi;
}

}  // namespace cmbrbg
