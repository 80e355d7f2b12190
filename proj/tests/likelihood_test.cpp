// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cmbrbg/likelihood.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "cmbrbg/error.hpp"
#include "cmbrbg/harmonics.hpp"
#include "cmbrbg/rng.hpp"
#include "cmbrbg/skysim.hpp"
#include "oracles.hpp"

namespace cmbrbg {
namespace {

CovMatrix random_spd(std::size_t n, CounterRng& rng) {
  CovMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.gaussian();
  CovMatrix s(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < n; ++k) v += a(i, k) * a(j, k);
      s(i, j) = v;
    }
    s(i, i) += 0.1;
  }
  return s;
}

TEST(Kullback, IdenticalMatricesGiveZero) {
  CounterRng rng(1);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto c = random_spd(n, rng);
    EXPECT_NEAR(kullback(c, c), 0.0, 1e-12);
  }
}

TEST(Kullback, ScalarHandValue) {
  EXPECT_NEAR(kullback(CovMatrix::scalar(2.0), CovMatrix::scalar(1.0)), 0.1534264097200273, 1e-15);
}

TEST(Kullback, DiagonalHandValue) {
  const std::vector<double> d{2.0, 3.0};
  EXPECT_NEAR(kullback(CovMatrix::diagonal(d), CovMatrix::identity(2)), 0.6041202653859725, 1e-14);
}

TEST(Kullback, NonNegativeOnRandomPairs) {
  CounterRng rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
    EXPECT_GE(kullback(random_spd(n, rng), random_spd(n, rng)), -1e-12);
  }
}

TEST(Kullback, CongruenceInvariance) {
  CounterRng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
    const auto chat = random_spd(n, rng);
    const auto c = random_spd(n, rng);
    CovMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.gaussian();
      a(i, i) += 3.0;  // keep A comfortably invertible
    }
    EXPECT_NEAR(kullback(oracle::congruence(a, chat), oracle::congruence(a, c)), kullback(chat, c), 1e-9);
  }
}

TEST(Kullback, Errors) {
  EXPECT_THROW(kullback(CovMatrix::identity(2), CovMatrix::identity(3)), ShapeError);
  const CovMatrix asym(2, {1.0, 0.5, 0.0, 1.0});
  EXPECT_THROW(kullback(asym, CovMatrix::identity(2)), MatrixError);
  EXPECT_THROW(kullback(CovMatrix::identity(2), CovMatrix(2, {1.0, 2.0, 2.0, 1.0})), MatrixError);
  EXPECT_EQ(kullback(CovMatrix(2, {1.0, 2.0, 2.0, 1.0}), CovMatrix::identity(2)),
            std::numeric_limits<double>::infinity());
}

TEST(ExactLikelihood, ZeroAtTruth) {
  CounterRng rng(4);
  std::vector<CovMatrix> c;
  for (int l = 0; l <= 10; ++l) c.push_back(random_spd(3, rng));
  EXPECT_NEAR(exact_neg_loglike(c, c, 2, 10), 0.0, 1e-11);
}

TEST(ExactLikelihood, SingleMultipoleHandValue) {
  std::vector<CovMatrix> chat(3, CovMatrix::scalar(2.0));
  std::vector<CovMatrix> c(3, CovMatrix::scalar(1.0));
  EXPECT_NEAR(exact_neg_loglike(chat, c, 2, 2), 0.7671320486001365, 1e-14);
  const auto model = [](int) { return CovMatrix::scalar(1.0); };
  EXPECT_NEAR(exact_neg_loglike(chat, model, 2, 2), 0.7671320486001365, 1e-14);
}

TEST(ExactLikelihood, AdditiveOverRanges) {
  CounterRng rng(5);
  std::vector<CovMatrix> chat, c;
  for (int l = 0; l <= 20; ++l) {
    chat.push_back(random_spd(2, rng));
    c.push_back(random_spd(2, rng));
  }
  EXPECT_NEAR(exact_neg_loglike(chat, c, 2, 20),
              exact_neg_loglike(chat, c, 2, 9) + exact_neg_loglike(chat, c, 10, 20), 1e-10);
}

TEST(ExactLikelihood, Errors) {
  std::vector<CovMatrix> c(5, CovMatrix::scalar(1.0));
  EXPECT_THROW(exact_neg_loglike(c, c, 1, 4), ParameterError);
  EXPECT_THROW(exact_neg_loglike(c, c, 3, 2), ParameterError);
  EXPECT_THROW(exact_neg_loglike(c, c, 2, 5), BandLimitError);
}

TEST(BinnedLikelihood, ZeroAtTruthAndHandValue) {
  const std::vector<double> data{2.0}, model{1.0}, modes{10.0};
  EXPECT_NEAR(binned_neg_loglike(data, model, modes), 1.534264097200273, 1e-14);
  EXPECT_EQ(binned_neg_loglike(model, model, modes), 0.0);
}

TEST(BinnedLikelihood, JointRescalingInvariance) {
  const std::vector<double> data{2.0, 0.7, 5.5}, model{1.0, 0.9, 4.0}, modes{5.0, 12.0, 30.5};
  const double base = binned_neg_loglike(data, model, modes);
  for (double alpha : {1e-3, 0.5, 7.0, 1e4}) {
    std::vector<double> d2, m2;
    for (double v : data) d2.push_back(alpha * v);
    for (double v : model) m2.push_back(alpha * v);
    EXPECT_NEAR(binned_neg_loglike(d2, m2, modes), base, 1e-12);
  }
}

TEST(BinnedLikelihood, SingleMultipoleBinsReproduceExact) {
  CounterRng rng(6);
  const int lmin = 2, lmax = 24;
  std::vector<CovMatrix> chat, c;
  for (int l = 0; l <= lmax; ++l) {
    chat.push_back(random_spd(3, rng));
    c.push_back(random_spd(3, rng));
  }
  const auto modes = effective_modes(single_ell_binning(lmin, lmax), 1.0);
  const std::vector<CovMatrix> bd(chat.begin() + lmin, chat.end());
  const std::vector<CovMatrix> bm(c.begin() + lmin, c.end());
  EXPECT_NEAR(binned_neg_loglike(bd, bm, modes), exact_neg_loglike(chat, c, lmin, lmax), 1e-10);
}

TEST(BinnedLikelihood, Errors) {
  const std::vector<double> two{1.0, 1.0}, one{1.0}, bad{0.0};
  EXPECT_THROW(binned_neg_loglike(two, one, one), ShapeError);
  EXPECT_THROW(binned_neg_loglike(one, bad, one), ParameterError);
}

TEST(ModelCovariance, SignalPlusDiagonalNoise) {
  const std::vector<double> n{1.0, 2.0};
  const auto m = model_covariance(3.0, n);
  EXPECT_EQ(m(0, 0), 4.0);
  EXPECT_EQ(m(1, 1), 5.0);
  EXPECT_EQ(m(0, 1), 3.0);
  EXPECT_EQ(m(1, 0), 3.0);
}


CrossSpectrumSet simulate_pair(int lmax, double sigma, std::uint64_t seed) {
  const GaussLegendreGrid grid(lmax);
  const auto sky = synthesize_map(synthesize_alm(fiducial_spectrum({}, lmax), seed), grid);
  std::vector<HarmonicCoeffs> alms;
  for (std::uint64_t d = 0; d < 2; ++d) {
    alms.push_back(analyze_map(add_noise(sky, sigma, derive_seed(seed, {d + 1})), lmax));
  }
  return cross_spectrum_set(alms, 1.0);
}

TEST(NoiseEstimate, NoiselessMapsGiveZeroNoise) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto est = estimate_noise_and_signal(simulate_pair(32, 0.0, seed));
    EXPECT_TRUE(est.flagged.empty());
    for (std::size_t i = 0; i < 2; ++i) {
      for (int l = 2; l <= 32; ++l) {
        EXPECT_LE(std::abs(est.noise[i][l]), 5.0 * est.noise_sigma[i][l]) << "l=" << l;
      }
    }
  }
}

TEST(NoiseEstimate, RecoversInjectedWhiteNoise) {
  const int lmax = 32;
  const double sigma = 100.0;
  const double injected = white_noise_level(GaussLegendreGrid(lmax), sigma);
  double total[2] = {0.0, 0.0};
  const int realizations = 100;
  for (int r = 0; r < realizations; ++r) {
    const auto est = estimate_noise_and_signal(simulate_pair(lmax, sigma, 500 + r));
    for (std::size_t i = 0; i < 2; ++i) {
      double mean = 0.0;
      for (int l = 10; l <= lmax; ++l) mean += est.noise[i][l];
      total[i] += mean / (lmax - 9);
    }
  }
  for (double t : total) EXPECT_NEAR(t / realizations, injected, 0.1 * injected);
}

TEST(NoiseEstimate, SignalCloseToInputOnAverage) {
  const int lmax = 32;
  const auto truth = fiducial_spectrum({}, lmax);
  std::vector<double> mean(lmax + 1, 0.0);
  const int realizations = 100;
  for (int r = 0; r < realizations; ++r) {
    const auto est = estimate_noise_and_signal(simulate_pair(lmax, 20.0, 900 + r));
    for (int l = 2; l <= lmax; ++l) mean[static_cast<std::size_t>(l)] += est.signal[l] / realizations;
  }
  // Cross-spectrum variance per multipole: (S^2 + (S + N)^2) / (2l + 1).
  const double noise = white_noise_level(GaussLegendreGrid(lmax), 20.0);
  for (int l = 2; l <= lmax; ++l) {
    const double s = truth[l];
    const double se = std::sqrt((s * s + (s + noise) * (s + noise)) / (2 * l + 1) / realizations);
    EXPECT_NEAR(mean[static_cast<std::size_t>(l)], s, 5.0 * se) << "l=" << l;
  }
}

TEST(NoiseEstimate, Errors) {
  std::vector<HarmonicCoeffs> one{HarmonicCoeffs(4)};
  EXPECT_THROW(estimate_noise_and_signal(cross_spectrum_set(one)), ParameterError);
  std::vector<HarmonicCoeffs> zeros{HarmonicCoeffs(4), HarmonicCoeffs(4)};
  EXPECT_THROW(estimate_noise_and_signal(cross_spectrum_set(zeros)), ParameterError);
}

}  // namespace
}  // namespace cmbrbg
