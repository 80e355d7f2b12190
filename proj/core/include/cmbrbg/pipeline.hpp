// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cmbrbg/config.hpp"
#include "cmbrbg/entropy.hpp"
#include "cmbrbg/grid.hpp"
#include "cmbrbg/harmonics.hpp"

namespace cmbrbg::pipeline {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitStatistical = 2;

/// Alice/Eve agreement must fall in this band (0.5 +- ~3.4 binomial sd at 20k bits).
inline constexpr double kAgreementLow = 0.488;
inline constexpr double kAgreementHigh = 0.512;

struct StageResult {
  int exit_code = kExitOk;
  std::string report;
};

// ---------------------------------------------------------------------------
// In-memory stages

/// One fixed sky realization observed repeatedly with fresh detector noise.
class Observatory {
 public:
  explicit Observatory(const RunConfig& config);

  const GaussLegendreGrid& grid() const noexcept { return grid_; }
  const SkyMap& sky() const noexcept { return sky_; }
  double f_sky() const noexcept { return f_sky_; }

  /// Noisy (and masked, if configured) maps of every detector at `epoch`.
  /// Different observers see the same sky with independent noise.
  std::vector<SkyMap> observe(int epoch, std::string_view observer = "alice") const;

 private:
  RunConfig config_;
  GaussLegendreGrid grid_;
  SkyMap sky_;
  std::optional<SkyMask> mask_;
  double f_sky_ = 1.0;
};

std::uint64_t sky_seed(const RunConfig& config);
std::uint64_t noise_seed(const RunConfig& config, std::string_view observer, int epoch, int detector);

CrossSpectrumSet analyze_epoch(const std::vector<SkyMap>& maps, const RunConfig& config,
                               double f_sky);

/// Binned spectra for pairs (i, j), i <= j, in row order.
std::vector<BinnedSpectrum> bin_epoch(const CrossSpectrumSet& spectra, const RunConfig& config);

/// Binned model for pair (i, j): f_sky (S_r + delta_ij N_i).
std::vector<double> binned_model(const RunConfig& config, const BinningScheme& scheme, int i, int j,
                                 double f_sky);

/// Concatenated harvest over the pairs of one epoch (whitening per pair).
BitStream harvest_epoch(const std::vector<BinnedSpectrum>& binned, const RunConfig& config,
                        const std::string& lineage);

/// Harvest successive epochs of `observer` until at least `min_bits` bits
/// have been collected, then truncate to exactly `min_bits`.
BitStream harvest_observer(const RunConfig& config, std::string_view observer, std::size_t min_bits);

// ---------------------------------------------------------------------------
// File stages; every stage reads and writes under config.out.

StageResult cmd_simulate(const RunConfig& config);
StageResult cmd_analyze(const RunConfig& config);
StageResult cmd_bin(const RunConfig& config);
StageResult cmd_likelihood(const RunConfig& config, int epoch = 0);
StageResult cmd_extract(const RunConfig& config,
                        const std::optional<std::filesystem::path>& model_spectrum = std::nullopt);
StageResult cmd_fips(const std::filesystem::path& bitstream,
                     const std::optional<std::filesystem::path>& report = std::nullopt);
/// Reference-generator stream sized by `n_bits`, or to match the stream in `match`.
StageResult cmd_reference(std::uint64_t seed, std::optional<std::size_t> n_bits,
                          const std::optional<std::filesystem::path>& match,
                          const std::filesystem::path& out);
StageResult cmd_keygen(const std::filesystem::path& w, const std::filesystem::path& v,
                       const std::filesystem::path& out,
                       const std::optional<std::filesystem::path>& pad = std::nullopt);
StageResult cmd_matrix_from_key(const std::string& key, int n, const std::filesystem::path& out);
StageResult cmd_matrix_from_stream(const std::filesystem::path& stream, int n,
                                   const std::filesystem::path& out);
StageResult cmd_encrypt(const std::filesystem::path& in, const std::filesystem::path& pad,
                        const std::filesystem::path& out,
                        std::optional<std::uint64_t> offset = std::nullopt);
StageResult cmd_decrypt(const std::filesystem::path& in, const std::filesystem::path& pad,
                        const std::filesystem::path& out,
                        std::optional<std::uint64_t> offset = std::nullopt);
StageResult cmd_eve(const RunConfig& config);

/// simulate -> analyze -> bin -> likelihood -> extract -> fips.
StageResult run_pipeline(const RunConfig& config);

}  // namespace cmbrbg::pipeline
