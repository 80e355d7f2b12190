// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cmbrbg/entropy.hpp"
#include "cmbrbg/grid.hpp"
#include "cmbrbg/harmonics.hpp"
#include "cmbrbg/spectrum.hpp"
#include "cmbrbg/vernam.hpp"

namespace cmbrbg::io {

// Spectrum text file: "l C_l" per line, '#' comments, l strictly increasing.
// Gaps are filled with zero; the spectrum ends at the last listed l.
// Header comments are returned through `comments` when non-null.
AngularSpectrum read_spectrum(const std::filesystem::path& path,
                              std::vector<std::string>* comments = nullptr);
void write_spectrum(const std::filesystem::path& path, const AngularSpectrum& spectrum,
                    const std::vector<std::string>& comments = {});

// Map file: "CMBMAP01", u32 lmax, u32 n_theta, u32 n_phi, then float64 pixels
// row-major by ring; all little-endian.
SkyMap read_map(const std::filesystem::path& path);
void write_map(const std::filesystem::path& path, const SkyMap& map);

// Binned-spectrum text file: "r l_min l_max C_r n_r", r counted from 1.
// f_sky is carried in a "# f_sky <value>" comment.
BinnedSpectrum read_binned(const std::filesystem::path& path);
void write_binned(const std::filesystem::path& path, const BinnedSpectrum& binned,
                  const std::vector<std::string>& comments = {});

// Bitstream file: "CMBBIT01", u32 version, u64 bit_count, u32 provenance
// length + UTF-8 provenance, then bits packed MSB-first, zero-padded.
BitStream read_bitstream(const std::filesystem::path& path);
void write_bitstream(const std::filesystem::path& path, const BitStream& bits);

// Matrix text file: n on the first line, then n rows of n codes.
KeyMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const KeyMatrix& matrix);

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);
void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& data);

}  // namespace cmbrbg::io
