// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

namespace cmbrbg {

/// Orthonormal associated Legendre functions
///   lambda_lm(x) = sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!) P_lm(x),
/// including the Condon-Shortley phase, so Y_lm = lambda_lm(cos theta) e^{i m phi}.
///
/// Fills out[l - m] for l = m..lmax using the stable three-term recurrence in l.
/// `out` must hold at least lmax - m + 1 values.
void legendre_column(int m, double x, int lmax, std::span<double> out);

}  // namespace cmbrbg
