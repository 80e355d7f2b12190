// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cmbrbg/fips.hpp"

#include <algorithm>
#include <sstream>

#include "cmbrbg/error.hpp"

namespace cmbrbg::fips {

namespace {

void require_sample(const BitStream& s) {
  if (s.size() != kSampleBits) {
    throw ShapeError("FIPS tests need exactly " + std::to_string(kSampleBits) + " bits, got " +
                     std::to_string(s.size()));
  }
}

std::string format_statistic(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

std::string Result::report_line() const {
  std::string stat;
  if (name == "runs") {
    // Runs have no single statistic; print both count vectors compactly.
    std::ostringstream os;
    os << "zeros=";
    for (std::size_t i = 0; i < zero_runs.size(); ++i) os << (i ? "," : "") << zero_runs[i];
    os << "/ones=";
    for (std::size_t i = 0; i < one_runs.size(); ++i) os << (i ? "," : "") << one_runs[i];
    stat = os.str();
  } else {
    stat = format_statistic(statistic);
  }
  return name + " " + stat + " " + (pass ? "pass" : "fail");
}

Result monobit(const BitStream& sample) {
  require_sample(sample);
  int ones = 0;
  for (auto b : sample.bits()) ones += b;
  return Result{"monobit", ones > kMonobitLow && ones < kMonobitHigh, static_cast<double>(ones)};
}

Result poker(const BitStream& sample) {
  require_sample(sample);
  std::array<long, 16> f{};
  const auto bits = sample.bits();
  for (std::size_t i = 0; i < kSampleBits; i += 4) {
    const int v = bits[i] << 3 | bits[i + 1] << 2 | bits[i + 2] << 1 | bits[i + 3];
    ++f[static_cast<std::size_t>(v)];
  }
  long sum_sq = 0;
  for (long c : f) sum_sq += c * c;
  const double x = 16.0 / 5000.0 * static_cast<double>(sum_sq) - 5000.0;
  return Result{"poker", x > kPokerLow && x < kPokerHigh, x};
}

namespace {

// Calls visit(bit, length) for every maximal run.
template <class Visit>
void for_each_run(std::span<const std::uint8_t> bits, Visit&& visit) {
  std::size_t i = 0;
  while (i < bits.size()) {
    std::size_t j = i + 1;
    while (j < bits.size() && bits[j] == bits[i]) ++j;
    visit(bits[i], j - i);
    i = j;
  }
}

}  // namespace

Result runs(const BitStream& sample) {
  require_sample(sample);
  Result r{"runs", true, 0.0};
  for_each_run(sample.bits(), [&](std::uint8_t bit, std::size_t len) {
    const std::size_t slot = std::min<std::size_t>(len, 6) - 1;
    ++(bit ? r.one_runs : r.zero_runs)[slot];
  });
  int outside = 0;
  for (std::size_t i = 0; i < kRunIntervals.size(); ++i) {
    for (int c : {r.zero_runs[i], r.one_runs[i]}) {
      if (c < kRunIntervals[i].low || c > kRunIntervals[i].high) ++outside;
    }
  }
  r.pass = outside == 0;
  r.statistic = outside;
  return r;
}

Result long_run(const BitStream& sample) {
  require_sample(sample);
  std::size_t longest = 0;
  for_each_run(sample.bits(), [&](std::uint8_t, std::size_t len) { longest = std::max(longest, len); });
  return Result{"longrun", longest < static_cast<std::size_t>(kLongRun),
                static_cast<double>(longest)};
}

std::vector<Result> run_all(const BitStream& sample) {
  return {monobit(sample), poker(sample), runs(sample), long_run(sample)};
}

bool all_pass(const std::vector<Result>& results) {
  return std::all_of(results.begin(), results.end(), [](const Result& r) { return r.pass; });
}

std::string thresholds_text() {
  std::ostringstream os;
  os << "sample_bits " << kSampleBits << "\n";
  os << "monobit ones in (" << kMonobitLow << ", " << kMonobitHigh << ")\n";
  os << "poker X in (" << kPokerLow << ", " << kPokerHigh << ")\n";
  const char* labels[] = {"1", "2", "3", "4", "5", "6+"};
  for (std::size_t i = 0; i < kRunIntervals.size(); ++i) {
    os << "runs length " << labels[i] << " count in [" << kRunIntervals[i].low << ", "
       << kRunIntervals[i].high << "] (zeros and ones)\n";
  }
  os << "longrun fails on any run >= " << kLongRun << "\n";
  return os.str();
}

}  // namespace cmbrbg::fips
