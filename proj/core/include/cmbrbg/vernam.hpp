// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cmbrbg/entropy.hpp"

namespace cmbrbg {

/// Base paired with key length n in the 16x16 key matrix table: b = 18 - n.
int key_base(int length);

/// S = sum_{i=1..n} C_i b^i with b = key_base(n). The exponent starts at 1,
/// so the first character is multiplied by b.
std::uint64_t key_sum(std::span<const std::uint8_t> codes);
inline std::uint64_t key_sum(std::string_view key) {
  return key_sum(std::span(reinterpret_cast<const std::uint8_t*>(key.data()), key.size()));
}

/// n x n arrangement of the symbols 0 .. n^2 - 1, read row-major.
class KeyMatrix {
 public:
  KeyMatrix() = default;
  KeyMatrix(int n, std::vector<std::uint32_t> entries);

  /// Symbols in natural order (no shuffle).
  static KeyMatrix identity(int n);

  int n() const noexcept { return n_; }
  std::size_t symbol_count() const noexcept { return entries_.size(); }
  std::uint32_t operator()(int row, int col) const {
    return entries_[static_cast<std::size_t>(row * n_ + col)];
  }
  std::span<const std::uint32_t> entries() const noexcept { return entries_; }

  /// Every symbol 0 .. n^2 - 1 appears exactly once.
  bool is_bijection() const noexcept;

  friend bool operator==(const KeyMatrix&, const KeyMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint32_t> entries_;
};

/// Fisher-Yates shuffle of the identity matrix, index draws from the
/// counter-based generator seeded with the key sum.
KeyMatrix generate_key_matrix(std::uint64_t key_sum, int n);

/// Fisher-Yates shuffle with draws taken from `stream`: each draw for
/// position i reads bit_width(i) bits MSB-first and is rejected when > i.
/// Throws ExhaustedError when the stream runs out.
KeyMatrix generate_key_matrix(const BitStream& stream, int n);

/// Map each symbol s to matrix entry s. Symbols must be < n^2 and the matrix
/// a bijection.
std::vector<std::uint8_t> substitute(std::span<const std::uint8_t> data, const KeyMatrix& matrix);
std::vector<std::uint8_t> inverse_substitute(std::span<const std::uint8_t> data,
                                             const KeyMatrix& matrix);

/// Consumption record of a one-time pad. consumed_bits only ever grows.
struct PadLedger {
  std::string pad_id;
  std::uint64_t total_bits = 0;
  std::uint64_t consumed_bits = 0;

  std::uint64_t remaining() const noexcept { return total_bits - consumed_bits; }

  /// Claim `bits` starting at `offset` (default: the first unconsumed bit).
  /// Throws LedgerConflict when offset is already consumed and ExhaustedError
  /// when the pad is too short. Leaves the ledger untouched on error.
  std::uint64_t reserve(std::uint64_t bits, std::optional<std::uint64_t> offset = std::nullopt);
};

/// XOR with the next unconsumed pad bytes and advance the ledger.
std::vector<std::uint8_t> vernam_encrypt(std::span<const std::uint8_t> plaintext,
                                         const BitStream& pad, PadLedger& ledger,
                                         std::optional<std::uint64_t> offset = std::nullopt);
/// Same operation as encryption; pass the offset used by the sender when the
/// local ledger is not already aligned with it.
std::vector<std::uint8_t> vernam_decrypt(std::span<const std::uint8_t> ciphertext,
                                         const BitStream& pad, PadLedger& ledger,
                                         std::optional<std::uint64_t> offset = std::nullopt);

/// Pad store file ("CMBPAD01") opened under an exclusive advisory lock.
/// Only the consumed_bits field is rewritten by commit().
class PadStore {
 public:
  static void create(const std::filesystem::path& path, const BitStream& pad);
  static PadStore open(const std::filesystem::path& path);

  PadStore(PadStore&& other) noexcept;
  PadStore& operator=(PadStore&&) = delete;
  PadStore(const PadStore&) = delete;
  ~PadStore();

  const BitStream& pad() const noexcept { return pad_; }
  PadLedger& ledger() noexcept { return ledger_; }
  const PadLedger& ledger() const noexcept { return ledger_; }

  /// Persist ledger().consumed_bits; refuses to move it backwards.
  void commit();

 private:
  PadStore(int fd, std::filesystem::path path);

  int fd_ = -1;
  std::filesystem::path path_;
  BitStream pad_;
  PadLedger ledger_;
  std::uint64_t persisted_consumed_ = 0;
};

}  // namespace cmbrbg
