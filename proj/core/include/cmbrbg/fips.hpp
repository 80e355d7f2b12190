// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "cmbrbg/entropy.hpp"

namespace cmbrbg::fips {

/// Power-up statistical tests on a 20,000 bit sample. Intervals for the runs
/// test follow the FIPS 140-2 change notice (the widened ones).
inline constexpr std::size_t kSampleBits = 20000;

inline constexpr int kMonobitLow = 9725;    // exclusive
inline constexpr int kMonobitHigh = 10275;  // exclusive
inline constexpr double kPokerLow = 2.16;   // exclusive
inline constexpr double kPokerHigh = 46.17; // exclusive
inline constexpr int kLongRun = 26;         // any run this long fails

struct RunInterval {
  int low;   // inclusive
  int high;  // inclusive
};
/// Lengths 1, 2, 3, 4, 5 and 6+; applied to runs of zeros and of ones alike.
inline constexpr std::array<RunInterval, 6> kRunIntervals{{
    {2315, 2685}, {1114, 1386}, {527, 723}, {240, 384}, {103, 209}, {103, 209}}};

struct Result {
  std::string name;
  bool pass = false;
  double statistic = 0.0;
  /// runs test only: counts by length 1..6+ for zeros and ones.
  std::array<int, 6> zero_runs{};
  std::array<int, 6> one_runs{};

  /// "<name> <statistic> <pass|fail>"
  std::string report_line() const;
};

Result monobit(const BitStream& sample);
Result poker(const BitStream& sample);
Result runs(const BitStream& sample);
Result long_run(const BitStream& sample);

/// All four tests in report order.
std::vector<Result> run_all(const BitStream& sample);
bool all_pass(const std::vector<Result>& results);

/// Human-readable list of every compiled-in threshold.
std::string thresholds_text();

}  // namespace cmbrbg::fips
