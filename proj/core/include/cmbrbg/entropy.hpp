// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cmbrbg/harmonics.hpp"

namespace cmbrbg {

/// Where a bitstream came from. Two streams are treated as dependent when
/// both the source label and the seed lineage match.
struct Provenance {
  std::string source;   // e.g. "cmb-harvest", "splitmix64", "xor"
  std::string policy;   // extraction policy id, empty for generator output
  std::string lineage;  // seeds / parent streams

  bool empty() const noexcept { return source.empty() && policy.empty() && lineage.empty(); }
  std::string str() const;
  static Provenance parse(std::string_view text);

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Ordered bits (one byte per bit, values 0 or 1) plus provenance.
class BitStream {
 public:
  BitStream() = default;
  BitStream(std::vector<std::uint8_t> bits, Provenance provenance);

  /// Parse "1010..." (other characters rejected).
  static BitStream from_string(std::string_view bits, Provenance provenance = {});
  /// Unpack bytes most-significant-bit first.
  static BitStream from_bytes(std::span<const std::uint8_t> bytes, Provenance provenance = {});

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  const Provenance& provenance() const noexcept { return provenance_; }
  void set_provenance(Provenance p) { provenance_ = std::move(p); }

  void append(const BitStream& other);
  void push_back(std::uint8_t bit) { bits_.push_back(bit & 1U); }
  BitStream prefix(std::size_t n) const;

  /// Every bit identical (includes the empty stream).
  bool is_constant() const noexcept;

  /// Pack most-significant-bit first; the final byte is zero padded.
  std::vector<std::uint8_t> packed() const;
  std::string str() const;

  friend bool operator==(const BitStream& a, const BitStream& b) noexcept {
    return a.bits_ == b.bits_;
  }

 private:
  std::vector<std::uint8_t> bits_;
  Provenance provenance_;
};

enum class Whitening { none, von_neumann };

/// How binned power becomes bits: the quantum sits 2^guard below the per-bin
/// noise scale and the `bits_per_bin` low-order bits of the quantized value
/// are emitted.
struct ExtractionPolicy {
  int bits_per_bin = 4;
  int guard = 4;
  Whitening whitening = Whitening::none;

  void validate() const;
  /// Short id recorded in provenance, e.g. "k4g4-vn".
  std::string id() const;
};

/// Quantize each bin and emit its low-order bits, most significant first.
///
/// Per bin: sigma_r = C_r sqrt(2 / n_r), q_r = sigma_r / 2^(k+g), and the k
/// low bits of floor(Chat_r / q_r) (two's complement for negative values).
BitStream harvest_bits(const BinnedSpectrum& data, std::span<const double> model,
                       const ExtractionPolicy& policy, std::string source_label = "cmb-harvest",
                       std::string lineage = {});

/// Quantum q_r used for each bin; exposed for diagnostics and tests.
std::vector<double> harvest_quanta(const BinnedSpectrum& data, std::span<const double> model,
                                   const ExtractionPolicy& policy);

/// Von Neumann debiasing: pairs 01 -> 0, 10 -> 1, 00 and 11 dropped.
BitStream von_neumann(const BitStream& raw);

/// K = V xor W. Throws ShapeError on length mismatch and IndependenceError
/// when V and W carry the same provenance.
BitStream combine_keys(const BitStream& v, const BitStream& w);

/// Fraction of positions where the streams agree.
double agreement_fraction(const BitStream& a, const BitStream& b);

/// Bits from the reference counter-based generator; for V in K = V xor W.
BitStream reference_stream(std::uint64_t seed, std::size_t n_bits);

}  // namespace cmbrbg
