// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cmbrbg/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "cmbrbg/error.hpp"
#include "cmbrbg/rng.hpp"

namespace cmbrbg {

// ---------------------------------------------------------------------------
// Provenance

std::string Provenance::str() const {
  return "source=" + source + ";policy=" + policy + ";lineage=" + lineage;
}

Provenance Provenance::parse(std::string_view text) {
  constexpr std::string_view kSource = "source=";
  constexpr std::string_view kPolicy = ";policy=";
  constexpr std::string_view kLineage = ";lineage=";
  if (!text.starts_with(kSource)) return Provenance{std::string(text), {}, {}};
  const auto p = text.find(kPolicy);
  if (p == std::string_view::npos) return Provenance{std::string(text), {}, {}};
  const auto l = text.find(kLineage, p + kPolicy.size());
  if (l == std::string_view::npos) return Provenance{std::string(text), {}, {}};
  Provenance out;
  out.source = std::string(text.substr(kSource.size(), p - kSource.size()));
  out.policy = std::string(text.substr(p + kPolicy.size(), l - p - kPolicy.size()));
  out.lineage = std::string(text.substr(l + kLineage.size()));
  return out;
}

// ---------------------------------------------------------------------------
// BitStream

BitStream::BitStream(std::vector<std::uint8_t> bits, Provenance provenance)
    : bits_(std::move(bits)), provenance_(std::move(provenance)) {
  for (auto& b : bits_) {
    if (b > 1) throw ParameterError("bit values must be 0 or 1");
  }
}

BitStream BitStream::from_string(std::string_view bits, Provenance provenance) {
  std::vector<std::uint8_t> out;
  out.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw ParameterError("bit string may only contain '0' and '1'");
    out.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return BitStream(std::move(out), std::move(provenance));
}

BitStream BitStream::from_bytes(std::span<const std::uint8_t> bytes, Provenance provenance) {
  std::vector<std::uint8_t> out;
  out.reserve(bytes.size() * 8);
  for (auto byte : bytes) {
    for (int b = 7; b >= 0; --b) out.push_back(static_cast<std::uint8_t>((byte >> b) & 1U));
  }
  return BitStream(std::move(out), std::move(provenance));
}

void BitStream::append(const BitStream& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

BitStream BitStream::prefix(std::size_t n) const {
  if (n > bits_.size()) throw ShapeError("prefix longer than stream");
  return BitStream(std::vector<std::uint8_t>(bits_.begin(), bits_.begin() + static_cast<long>(n)),
                   provenance_);
}

bool BitStream::is_constant() const noexcept {
  return std::adjacent_find(bits_.begin(), bits_.end(), std::not_equal_to<>()) == bits_.end();
}

std::vector<std::uint8_t> BitStream::packed() const {
  std::vector<std::uint8_t> out((bits_.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    out[i / 8] |= static_cast<std::uint8_t>(bits_[i] << (7 - i % 8));
  }
  return out;
}

std::string BitStream::str() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

// ---------------------------------------------------------------------------
// Extraction

void ExtractionPolicy::validate() const {
  if (bits_per_bin < 1 || bits_per_bin > 16) {
    throw ParameterError("bits_per_bin must lie in [1, 16], got " + std::to_string(bits_per_bin));
  }
  if (guard < 2) throw ParameterError("guard factor must be >= 2, got " + std::to_string(guard));
}

std::string ExtractionPolicy::id() const {
  std::string s = "k" + std::to_string(bits_per_bin) + "g" + std::to_string(guard);
  if (whitening == Whitening::von_neumann) s += "-vn";
  return s;
}

std::vector<double> harvest_quanta(const BinnedSpectrum& data, std::span<const double> model,
                                   const ExtractionPolicy& policy) {
  policy.validate();
  const std::size_t bins = data.values.size();
  if (bins == 0) throw ParameterError("harvest: empty binning scheme");
  if (model.size() != bins || data.n_modes.size() != bins) {
    throw ShapeError("harvest: data has " + std::to_string(bins) + " bins, model " +
                     std::to_string(model.size()) + ", modes " +
                     std::to_string(data.n_modes.size()));
  }
  std::vector<double> q(bins);
  const double scale = std::ldexp(1.0, policy.bits_per_bin + policy.guard);
  for (std::size_t r = 0; r < bins; ++r) {
    if (!(model[r] > 0.0) || !std::isfinite(model[r])) {
      throw ParameterError("harvest: model bin " + std::to_string(r + 1) +
                           " must be positive (noise scale undefined)");
    }
    if (!(data.n_modes[r] > 0.0)) {
      throw ParameterError("harvest: bin " + std::to_string(r + 1) + " has no modes");
    }
    const double sigma = model[r] * std::sqrt(2.0 / data.n_modes[r]);
    q[r] = sigma / scale;
  }
  return q;
}

BitStream harvest_bits(const BinnedSpectrum& data, std::span<const double> model,
                       const ExtractionPolicy& policy, std::string source_label,
                       std::string lineage) {
  const auto quanta = harvest_quanta(data, model, policy);
  const int k = policy.bits_per_bin;
  std::vector<std::uint8_t> bits;
  bits.reserve(quanta.size() * static_cast<std::size_t>(k));
  for (std::size_t r = 0; r < quanta.size(); ++r) {
    const double ratio = std::floor(data.values[r] / quanta[r]);
    if (!std::isfinite(ratio) || std::abs(ratio) >= 0x1.0p62) {
      throw ParameterError("harvest: bin " + std::to_string(r + 1) +
                           " is out of range for the quantizer");
    }
    const auto level = static_cast<std::uint64_t>(static_cast<std::int64_t>(ratio));
    for (int b = k - 1; b >= 0; --b) bits.push_back(static_cast<std::uint8_t>((level >> b) & 1U));
  }
  if (source_label.empty()) source_label = "cmb-harvest";
  BitStream raw(std::move(bits), Provenance{std::move(source_label), policy.id(), std::move(lineage)});
  if (policy.whitening == Whitening::von_neumann) return von_neumann(raw);
  return raw;
}

BitStream von_neumann(const BitStream& raw) {
  std::vector<std::uint8_t> out;
  out.reserve(raw.size() / 4);
  for (std::size_t i = 0; i + 1 < raw.size(); i += 2) {
    if (raw[i] != raw[i + 1]) out.push_back(raw[i]);
  }
  return BitStream(std::move(out), raw.provenance());
}

BitStream combine_keys(const BitStream& v, const BitStream& w) {
  if (v.size() != w.size()) {
    throw ShapeError("key halves differ in length: |V| = " + std::to_string(v.size()) +
                     ", |W| = " + std::to_string(w.size()));
  }
  const auto& pv = v.provenance();
  const auto& pw = w.provenance();
  if (pv.source == pw.source && pv.lineage == pw.lineage) {
    throw IndependenceError("V and W share provenance '" + pv.str() + "'; they must be independent");
  }
  std::vector<std::uint8_t> k(v.size());
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = v[i] ^ w[i];
  return BitStream(std::move(k), Provenance{"xor", {}, "V{" + pv.str() + "}W{" + pw.str() + "}"});
}

double agreement_fraction(const BitStream& a, const BitStream& b) {
  if (a.size() != b.size()) {
    throw ShapeError("agreement: lengths differ (" + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + ")");
  }
  if (a.empty()) throw ShapeError("agreement: streams are empty");
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i] == b[i];
  return static_cast<double>(same) / static_cast<double>(a.size());
}

BitStream reference_stream(std::uint64_t seed, std::size_t n_bits) {
  CounterRng rng(seed);
  std::vector<std::uint8_t> bits;
  bits.reserve(n_bits);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < n_bits; ++i) {
    if (i % 64 == 0) word = rng.next_u64();
    bits.push_back(static_cast<std::uint8_t>((word >> (63 - i % 64)) & 1U));
  }
  return BitStream(std::move(bits), Provenance{"splitmix64", {}, "seed=" + std::to_string(seed)});
}

}  // namespace cmbrbg
