// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cmbrbg/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cmbrbg/error.hpp"
#include "cmbrbg/legendre.hpp"
#include "parallel.hpp"

namespace cmbrbg {

HarmonicCoeffs::HarmonicCoeffs(int lmax, std::string detector_id)
    : lmax_(lmax), detector_id_(std::move(detector_id)), values_(count(lmax)) {
  if (lmax < 0) throw ParameterError("alm lmax must be >= 0");
}

void legendre_column(int m, double x, int lmax, std::span<double> out) {
  if (m > lmax) return;
  // lambda_mm = (-1)^m sqrt((2m+1)/(4 pi) prod_{k<=m} (2k-1)/(2k)) sin^m theta
  const double sin_theta = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
  double pmm = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  for (int k = 1; k <= m; ++k) {
    pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * sin_theta;
  }
  out[0] = pmm;
  if (m == lmax) return;
  double prev = pmm;
  double cur = x * std::sqrt(2.0 * m + 3.0) * pmm;
  out[1] = cur;
  const double m2 = static_cast<double>(m) * m;
  double a_prev = std::sqrt((4.0 * (m + 1.0) * (m + 1.0) - 1.0) / ((m + 1.0) * (m + 1.0) - m2));
  for (int l = m + 2; l <= lmax; ++l) {
    const double l2 = static_cast<double>(l) * l;
    const double a = std::sqrt((4.0 * l2 - 1.0) / (l2 - m2));
    const double next = a * (x * cur - prev / a_prev);
    prev = cur;
    cur = next;
    a_prev = a;
    out[static_cast<std::size_t>(l - m)] = cur;
  }
}

HarmonicCoeffs analyze_map(const SkyMap& map, int lmax, int threads) {
  const auto& grid = map.grid;
  if (lmax < 0) throw ParameterError("analysis lmax must be >= 0");
  if (lmax > grid.lmax()) {
    throw BandLimitError("analysis lmax " + std::to_string(lmax) + " exceeds grid band limit " +
                         std::to_string(grid.lmax()));
  }
  if (map.pixels.size() != grid.n_pixels()) throw ShapeError("map pixel count does not match grid");

  const std::size_t n_theta = grid.n_theta();
  const std::size_t n_phi = grid.n_phi();
  const auto n_m = static_cast<std::size_t>(lmax + 1);

  std::vector<double> cos_table(n_phi);
  std::vector<double> sin_table(n_phi);
  for (std::size_t t = 0; t < n_phi; ++t) {
    cos_table[t] = std::cos(grid.phi(t));
    sin_table[t] = std::sin(grid.phi(t));
  }

  // Longitude transform per ring: g[j][m] = Omega_j sum_k T_jk e^{-i m phi_k}.
  std::vector<Complex> ring_modes(n_theta * n_m);
  detail::parallel_for(n_theta, threads, [&](std::size_t j) {
    const double w = grid.pixel_weight(j);
    for (std::size_t m = 0; m < n_m; ++m) {
      double re = 0.0;
      double im = 0.0;
      for (std::size_t k = 0; k < n_phi; ++k) {
        const std::size_t t = (m * k) % n_phi;
        const double v = map.at(j, k);
        re += v * cos_table[t];
        im -= v * sin_table[t];
      }
      ring_modes[j * n_m + m] = Complex(w * re, w * im);
    }
  });

  HarmonicCoeffs alm(lmax, map.detector_id);
  detail::parallel_for(n_m, threads, [&](std::size_t mi) {
    const int m = static_cast<int>(mi);
    std::vector<double> lambda(static_cast<std::size_t>(lmax - m + 1));
    std::vector<Complex> acc(lambda.size());
    for (std::size_t j = 0; j < n_theta; ++j) {
      legendre_column(m, grid.cos_theta()[j], lmax, lambda);
      const Complex g = ring_modes[j * n_m + mi];
      for (std::size_t i = 0; i < lambda.size(); ++i) acc[i] += lambda[i] * g;
    }
    for (std::size_t i = 0; i < lambda.size(); ++i) alm(m + static_cast<int>(i), m) = acc[i];
    // A real map has real a_l0; drop round-off in the imaginary part.
    if (m == 0) {
      for (int l = 0; l <= lmax; ++l) alm(l, 0) = Complex(alm(l, 0).real(), 0.0);
    }
  });
  return alm;
}

PseudoSpectrum pseudo_cross_spectrum(const HarmonicCoeffs& a, const HarmonicCoeffs& b) {
  if (a.lmax() != b.lmax()) {
    throw ShapeError("pseudo-spectrum needs equal lmax, got " + std::to_string(a.lmax()) +
                     " and " + std::to_string(b.lmax()));
  }
  const int lmax = a.lmax();
  std::vector<double> c(static_cast<std::size_t>(lmax + 1), 0.0);
  for (int l = 0; l <= lmax; ++l) {
    double sum = (a(l, 0) * std::conj(b(l, 0))).real();
    for (int m = 1; m <= l; ++m) sum += 2.0 * (a(l, m) * std::conj(b(l, m))).real();
    c[static_cast<std::size_t>(l)] = sum / (2.0 * l + 1.0);
  }
  return PseudoSpectrum{a.detector_id(), b.detector_id(), AngularSpectrum(std::move(c))};
}

BinningScheme make_binning(std::span<const std::pair<int, int>> ranges) {
  if (ranges.empty()) throw ParameterError("binning needs at least one range");
  std::vector<Bin> bins;
  bins.reserve(ranges.size());
  int previous_max = 1;
  for (const auto& [lo, hi] : ranges) {
    if (lo < 2) throw ParameterError("bin ell_min must be >= 2, got " + std::to_string(lo));
    if (hi < lo) {
      throw ParameterError("descending bin range [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
    }
    if (lo <= previous_max) {
      throw ParameterError("bin [" + std::to_string(lo) + ", " + std::to_string(hi) +
                           "] overlaps or precedes the previous bin");
    }
    Bin bin{lo, hi, {}};
    double norm = 0.0;
    for (int l = lo; l <= hi; ++l) {
      const double v = l * (l + 1.0) * (2.0 * l + 1.0);
      bin.weights.push_back(v);
      norm += v;
    }
    for (double& w : bin.weights) w /= norm;
    bins.push_back(std::move(bin));
    previous_max = hi;
  }
  return BinningScheme(std::move(bins));
}

BinningScheme single_ell_binning(int ell_min, int ell_max) {
  std::vector<std::pair<int, int>> ranges;
  for (int l = ell_min; l <= ell_max; ++l) ranges.emplace_back(l, l);
  return make_binning(ranges);
}

std::vector<double> bin_spectrum(std::span<const double> spectrum, const BinningScheme& scheme) {
  if (scheme.empty()) throw ParameterError("empty binning scheme");
  if (scheme.ell_max() >= static_cast<int>(spectrum.size())) {
    throw BandLimitError("binning reaches l = " + std::to_string(scheme.ell_max()) +
                         " but spectrum stops at l = " + std::to_string(spectrum.size() - 1));
  }
  std::vector<double> out;
  out.reserve(scheme.size());
  for (const auto& bin : scheme.bins()) {
    double sum = 0.0;
    for (int l = bin.ell_min; l <= bin.ell_max; ++l) {
      sum += bin.weight(l) * spectrum[static_cast<std::size_t>(l)];
    }
    out.push_back(sum);
  }
  return out;
}

std::vector<double> effective_modes(const BinningScheme& scheme, double f_sky) {
  if (!(f_sky > 0.0 && f_sky <= 1.0)) {
    throw ParameterError("f_sky must lie in (0, 1], got " + std::to_string(f_sky));
  }
  std::vector<double> out;
  out.reserve(scheme.size());
  for (const auto& bin : scheme.bins()) {
    double num = 0.0;
    double den = 0.0;
    for (int l = bin.ell_min; l <= bin.ell_max; ++l) {
      const double w = bin.weight(l);
      num += (2.0 * l + 1.0) * w;
      den += (2.0 * l + 1.0) * w * w;
    }
    out.push_back(f_sky * num * num / den);
  }
  return out;
}

BinnedSpectrum make_binned(std::span<const double> spectrum, const BinningScheme& scheme,
                           double f_sky) {
  BinnedSpectrum out;
  out.values = bin_spectrum(spectrum, scheme);
  out.n_modes = effective_modes(scheme, f_sky);
  out.scheme = scheme;
  out.f_sky = f_sky;
  return out;
}

}  // namespace cmbrbg

namespace cmbrbg {

CrossSpectrumSet::CrossSpectrumSet(std::vector<std::string> detectors, int lmax, double f_sky)
    : detectors_(std::move(detectors)), lmax_(lmax), f_sky_(f_sky) {
  const std::size_t d = detectors_.size();
  spectra_.resize(d * (d + 1) / 2);
}

std::size_t CrossSpectrumSet::slot(std::size_t i, std::size_t j) const {
  const std::size_t d = detectors_.size();
  if (i >= d || j >= d) throw ShapeError("detector index out of range");
  if (i > j) std::swap(i, j);
  return i * (2 * d - i + 1) / 2 + (j - i);
}

AngularSpectrum& CrossSpectrumSet::at(std::size_t i, std::size_t j) { return spectra_[slot(i, j)]; }

const AngularSpectrum& CrossSpectrumSet::at(std::size_t i, std::size_t j) const {
  return spectra_[slot(i, j)];
}

bool CrossSpectrumSet::has(std::size_t i, std::size_t j) const {
  return !spectra_[slot(i, j)].empty();
}

CrossSpectrumSet cross_spectrum_set(std::span<const HarmonicCoeffs> alms, double f_sky) {
  if (alms.empty()) throw ParameterError("no coefficient sets given");
  std::vector<std::string> ids;
  for (const auto& a : alms) ids.push_back(a.detector_id());
  CrossSpectrumSet set(std::move(ids), alms.front().lmax(), f_sky);
  for (std::size_t i = 0; i < alms.size(); ++i) {
    for (std::size_t j = i; j < alms.size(); ++j) {
      set.at(i, j) = pseudo_cross_spectrum(alms[i], alms[j]).values;
    }
  }
  return set;
}

}  // namespace cmbrbg
