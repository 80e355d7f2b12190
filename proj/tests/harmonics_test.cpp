// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cmbrbg/harmonics.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "cmbrbg/error.hpp"
#include "cmbrbg/legendre.hpp"
#include "cmbrbg/rng.hpp"
#include "cmbrbg/skysim.hpp"
#include "oracles.hpp"

namespace cmbrbg {
namespace {

HarmonicCoeffs random_alm(int lmax, std::uint64_t seed) {
  HarmonicCoeffs a(lmax);
  CounterRng rng(seed);
  for (int m = 0; m <= lmax; ++m) {
    for (int l = m; l <= lmax; ++l) {
      a(l, m) = m == 0 ? Complex(rng.gaussian(), 0.0) : Complex(rng.gaussian(), rng.gaussian());
    }
  }
  return a;
}

double max_abs_diff(const HarmonicCoeffs& a, const HarmonicCoeffs& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
  }
  return worst;
}

TEST(Legendre, MatchesRodriguesPolynomials) {
  const int lmax = 12;
  std::vector<double> col(lmax + 1);
  for (double x : {-0.93, -0.4, 0.0, 0.25, 0.77, 0.999}) {
    for (int m = 0; m <= lmax; ++m) {
      legendre_column(m, x, lmax, col);
      for (int l = m; l <= lmax; ++l) {
        const long double norm =
            std::sqrt((2.0L * l + 1.0L) / (4.0L * std::numbers::pi_v<long double>) *
                      oracle::factorial(l - m) / oracle::factorial(l + m));
        const double expected = static_cast<double>(norm * oracle::assoc_legendre(l, m, x));
        EXPECT_NEAR(col[static_cast<std::size_t>(l - m)], expected, 1e-11)
            << "l=" << l << " m=" << m << " x=" << x;
      }
    }
  }
}

TEST(Analyze, ZeroMapGivesZeroCoefficients) {
  const SkyMap map(GaussLegendreGrid(8));
  const auto alm = analyze_map(map, 8);
  for (auto a : alm.values()) EXPECT_EQ(a, Complex(0.0, 0.0));
}

TEST(Analyze, ConstantMapIsPureMonopole) {
  SkyMap map(GaussLegendreGrid(10));
  std::fill(map.pixels.begin(), map.pixels.end(), 2.5);
  const auto a = analyze_map(map, 10);
  EXPECT_NEAR(a(0, 0).real(), 2.5 * std::sqrt(4.0 * std::numbers::pi), 1e-12);
  for (int m = 0; m <= 10; ++m) {
    for (int l = std::max(m, 1); l <= 10; ++l) EXPECT_LT(std::abs(a(l, m)), 1e-10);
  }
}

TEST(Analyze, MatchesPointwiseHarmonicOracle) {
  // Synthesized pixels should equal a direct sum over Y_lm built from the oracle.
  const int lmax = 4;
  const GaussLegendreGrid grid(lmax);
  const auto alm = random_alm(lmax, 8);
  const auto map = synthesize_map(alm, grid);
  for (std::size_t j = 0; j < grid.n_theta(); ++j) {
    const double theta = std::acos(grid.cos_theta()[j]);
    for (std::size_t k = 0; k < grid.n_phi(); ++k) {
      std::complex<double> sum = 0.0;
      for (int l = 0; l <= lmax; ++l) {
        for (int m = -l; m <= l; ++m) {
          const auto y = m >= 0 ? oracle::ylm(l, m, theta, grid.phi(k))
                                : ((m % 2) ? -1.0 : 1.0) * std::conj(oracle::ylm(l, -m, theta, grid.phi(k)));
          sum += oracle::full_alm(alm, l, m) * y;
        }
      }
      EXPECT_NEAR(map.at(j, k), sum.real(), 1e-12);
      EXPECT_NEAR(sum.imag(), 0.0, 1e-12);
    }
  }
}

TEST(Analyze, RoundTripLmax16And32) {
  for (int lmax : {16, 32}) {
    const GaussLegendreGrid grid(lmax);
    const auto alm = random_alm(lmax, 1000 + lmax);
    const auto start = std::chrono::steady_clock::now();
    const auto back = analyze_map(synthesize_map(alm, grid), lmax);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    EXPECT_LT(max_abs_diff(alm, back), 1e-8) << "lmax " << lmax;
    EXPECT_LT(elapsed.count(), 5.0);
    for (int l = 0; l <= lmax; ++l) EXPECT_LT(std::abs(back(l, 0).imag()), 1e-12);
  }
}

TEST(Analyze, ThreadCountDoesNotChangeCoefficients) {
  const GaussLegendreGrid grid(20);
  const auto map = synthesize_map(random_alm(20, 3), grid);
  const auto a = analyze_map(map, 20, 1);
  const auto b = analyze_map(map, 20, 7);
  EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
}

TEST(Analyze, RejectsLmaxAboveGrid) {
  const SkyMap map(GaussLegendreGrid(8));
  EXPECT_THROW(analyze_map(map, 9), BandLimitError);
}

TEST(PseudoSpectrum, ZeroInputsGiveZero) {
  const auto s = pseudo_cross_spectrum(HarmonicCoeffs(4), HarmonicCoeffs(4));
  for (double v : s.values.values()) EXPECT_EQ(v, 0.0);
}

TEST(PseudoSpectrum, SingleCoefficientHandValue) {
  HarmonicCoeffs a(3);
  a(2, 1) = Complex(1.0, 0.0);
  const auto s = pseudo_cross_spectrum(a, a);
  EXPECT_NEAR(s.values[2], 2.0 / 5.0, 1e-15);
  EXPECT_EQ(s.values[0], 0.0);
  EXPECT_EQ(s.values[1], 0.0);
  EXPECT_EQ(s.values[3], 0.0);
}

TEST(PseudoSpectrum, MatchesNegativeMBruteForce) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = random_alm(3, 2 * seed);
    const auto b = random_alm(3, 2 * seed + 1);
    const auto fast = pseudo_cross_spectrum(a, b);
    const auto slow = oracle::brute_force_cross(a, b);
    for (int l = 0; l <= 3; ++l) EXPECT_NEAR(fast.values[l], slow[static_cast<std::size_t>(l)], 1e-12);
  }
}

TEST(PseudoSpectrum, SymmetricAndNonNegativeAuto) {
  const auto a = random_alm(12, 5);
  const auto b = random_alm(12, 6);
  const auto ab = pseudo_cross_spectrum(a, b);
  const auto ba = pseudo_cross_spectrum(b, a);
  const auto aa = pseudo_cross_spectrum(a, a);
  for (int l = 0; l <= 12; ++l) {
    EXPECT_NEAR(ab.values[l], ba.values[l], 1e-12);
    EXPECT_GE(aa.values[l], 0.0);
  }
}

TEST(PseudoSpectrum, ParsevalFullSky) {
  const int lmax = 16;
  const GaussLegendreGrid grid(lmax);
  const auto alm = random_alm(lmax, 21);
  const auto from_map = pseudo_cross_spectrum(analyze_map(synthesize_map(alm, grid), lmax),
                                              analyze_map(synthesize_map(alm, grid), lmax));
  const auto direct = pseudo_cross_spectrum(alm, alm);
  for (int l = 0; l <= lmax; ++l) EXPECT_NEAR(from_map.values[l], direct.values[l], 1e-10);
}

TEST(PseudoSpectrum, RejectsMismatchedLmax) {
  EXPECT_THROW(pseudo_cross_spectrum(HarmonicCoeffs(3), HarmonicCoeffs(4)), ShapeError);
}

TEST(Binning, SingleMultipoleWeightIsOne) {
  const std::vector<std::pair<int, int>> r{{2, 2}};
  EXPECT_EQ(make_binning(r)[0].weight(2), 1.0);
}

TEST(Binning, TwoMultipoleHandWeights) {
  const std::vector<std::pair<int, int>> r{{2, 3}};
  const auto s = make_binning(r);
  EXPECT_NEAR(s[0].weight(2), 5.0 / 19.0, 1e-15);
  EXPECT_NEAR(s[0].weight(3), 14.0 / 19.0, 1e-15);
  EXPECT_EQ(s[0].weight(4), 0.0);
  EXPECT_EQ(s[0].weight(1), 0.0);
}

TEST(Binning, WeightsSumToOne) {
  const std::vector<std::pair<int, int>> r{{2, 4}, {5, 9}, {10, 20}, {21, 32}};
  const auto scheme = make_binning(r);
  for (const auto& bin : scheme.bins()) {
    double sum = 0.0;
    for (double w : bin.weights) sum += w;
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(Binning, RejectsBadRanges) {
  using R = std::vector<std::pair<int, int>>;
  EXPECT_THROW(make_binning(R{}), ParameterError);
  EXPECT_THROW(make_binning(R{{1, 3}}), ParameterError);
  EXPECT_THROW(make_binning(R{{5, 3}}), ParameterError);
  EXPECT_THROW(make_binning(R{{2, 5}, {5, 8}}), ParameterError);
  EXPECT_THROW(make_binning(R{{6, 8}, {2, 4}}), ParameterError);
}

TEST(BinSpectrum, HandValue) {
  const std::vector<std::pair<int, int>> r{{2, 3}};
  const std::vector<double> c{0.0, 0.0, 1.0, 2.0};
  EXPECT_NEAR(bin_spectrum(c, make_binning(r))[0], 33.0 / 19.0, 1e-15);
}

TEST(BinSpectrum, ConstantAndZero) {
  const std::vector<std::pair<int, int>> r{{2, 4}, {5, 11}};
  const auto s = make_binning(r);
  const std::vector<double> c(12, 3.25);
  for (double v : bin_spectrum(c, s)) EXPECT_NEAR(v, 3.25, 1e-14);
  for (double v : bin_spectrum(std::vector<double>(12, 0.0), s)) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(bin_spectrum(std::vector<double>(8, 0.0), s), BandLimitError);
}

TEST(BinSpectrum, Linearity) {
  const std::vector<std::pair<int, int>> r{{2, 6}, {7, 15}, {16, 32}};
  const auto s = make_binning(r);
  CounterRng rng(17);
  std::vector<double> x(33), y(33), z(33);
  const double alpha = 1.7, beta = -0.3;
  for (std::size_t l = 0; l < 33; ++l) {
    x[l] = rng.gaussian();
    y[l] = rng.gaussian();
    z[l] = alpha * x[l] + beta * y[l];
  }
  const auto bx = bin_spectrum(x, s), by = bin_spectrum(y, s), bz = bin_spectrum(z, s);
  for (std::size_t i = 0; i < bz.size(); ++i) EXPECT_NEAR(bz[i], alpha * bx[i] + beta * by[i], 1e-12);
}

TEST(EffectiveModes, SingleMultipoleFullSky) {
  const auto n = effective_modes(single_ell_binning(2, 32), 1.0);
  for (int l = 2; l <= 32; ++l) EXPECT_EQ(n[static_cast<std::size_t>(l - 2)], 2.0 * l + 1.0);
}

TEST(EffectiveModes, TwoMultipoleBin) {
  // (5*5/19 + 7*14/19)^2 / (5*(5/19)^2 + 7*(14/19)^2) = (123/19)^2 / (1497/361)
  const std::vector<std::pair<int, int>> r{{2, 3}};
  EXPECT_NEAR(effective_modes(make_binning(r), 1.0)[0], 15129.0 / 1497.0, 1e-9);
}

TEST(EffectiveModes, ScalesWithSkyFraction) {
  const std::vector<std::pair<int, int>> r{{2, 9}};
  const auto s = make_binning(r);
  EXPECT_NEAR(effective_modes(s, 0.6)[0], 0.6 * effective_modes(s, 1.0)[0], 1e-12);
  EXPECT_THROW(effective_modes(s, 0.0), ParameterError);
  EXPECT_THROW(effective_modes(s, 1.5), ParameterError);
}

TEST(EffectiveModes, BoundedByModeCount) {
  const std::vector<std::pair<int, int>> r{{2, 3}, {4, 10}, {11, 25}, {26, 32}};
  const auto s = make_binning(r);
  const auto n = effective_modes(s, 0.7);
  for (std::size_t i = 0; i < s.size(); ++i) {
    double total = 0.0;
    for (int l = s[i].ell_min; l <= s[i].ell_max; ++l) total += 2.0 * l + 1.0;
    EXPECT_GE(n[i] / 0.7, 1.0);
    EXPECT_LT(n[i] / 0.7, total);  // weights are not proportional to 2l+1
  }
}

TEST(CrossSpectrumSet, SymmetricAccess) {
  std::vector<HarmonicCoeffs> alms{random_alm(6, 1), random_alm(6, 2), random_alm(6, 3)};
  const auto set = cross_spectrum_set(alms, 0.9);
  EXPECT_EQ(set.detector_count(), 3U);
  EXPECT_DOUBLE_EQ(set.f_sky(), 0.9);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      ASSERT_TRUE(set.has(i, j));
      const auto expected = pseudo_cross_spectrum(alms[i], alms[j]);
      for (int l = 0; l <= 6; ++l) EXPECT_NEAR(set.at(i, j)[l], expected.values[l], 1e-12);
    }
  }
  EXPECT_THROW(set.at(0, 3), ShapeError);
}

}  // namespace
}  // namespace cmbrbg
