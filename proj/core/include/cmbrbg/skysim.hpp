// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "cmbrbg/alm.hpp"
#include "cmbrbg/grid.hpp"
#include "cmbrbg/spectrum.hpp"

namespace cmbrbg {

/// Damped toy spectrum C_l = A exp(-(l/l_damp)^2) / (l(l+1)) for l >= 2.
struct ToyModelParams {
  double amplitude = 1000.0;  // uK^2
  double ell_damp = 30.0;
};

AngularSpectrum fiducial_spectrum(const ToyModelParams& params, int lmax);

/// Gaussian a_lm with <|a_lm|^2> = C_l. Deterministic in `seed`.
HarmonicCoeffs synthesize_alm(const AngularSpectrum& spectrum, std::uint64_t seed);

/// Evaluate sum_lm a_lm Y_lm on every pixel. Rings are processed in parallel
/// when threads > 1; the result does not depend on the thread count.
SkyMap synthesize_map(const HarmonicCoeffs& alm, const GaussLegendreGrid& grid,
                      int threads = 1);

/// Add white Gaussian noise N(0, sigma_pix^2) to every pixel.
SkyMap add_noise(const SkyMap& map, double sigma_pix, std::uint64_t seed);

/// Pixelwise product with the mask; marks the result as masked.
SkyMap apply_mask(const SkyMap& map, const SkyMask& mask);

/// Expected pseudo-spectrum of white pixel noise on `grid`:
/// sigma^2 * sum_p Omega_p^2 / (4 pi). Flat in l.
double white_noise_level(const GaussLegendreGrid& grid, double sigma_pix);

}  // namespace cmbrbg
