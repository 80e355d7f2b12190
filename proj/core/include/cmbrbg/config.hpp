// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "cmbrbg/entropy.hpp"
#include "cmbrbg/skysim.hpp"

namespace cmbrbg {

/// Everything a pipeline run needs. Read from "key = value" text; every key
/// has a default, printed by dump().
struct RunConfig {
  int lmax = 32;
  int detectors = 4;
  std::vector<double> noise_sigma{100.0};  // uK per pixel; one value or one per detector
  ToyModelParams model{};
  double mask_cos_cut = 1.0;  // keep |cos theta| <= cut; 1 keeps the whole sky
  std::vector<std::pair<int, int>> bins;  // empty: one bin per l in [lmin, lmax]
  int lmin = 2;
  int epochs = 72;
  ExtractionPolicy policy{4, 4, Whitening::von_neumann};
  std::uint64_t seed = 1;
  int threads = 1;
  std::size_t eve_bits = 20000;
  std::filesystem::path out = "cmbrbg-out";

  /// Apply one "key = value" setting. Throws ParameterError on unknown keys.
  void set(const std::string& key, const std::string& value);
  /// Parse a config file; '#' starts a comment.
  void load(const std::filesystem::path& path);
  /// Canonical "key = value" listing of every setting.
  std::string dump() const;
  void validate() const;

  double sigma_for(int detector) const;
  std::vector<std::pair<int, int>> bin_ranges() const;
};

}  // namespace cmbrbg
