// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cmbrbg/vernam.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <bit>
#include <cerrno>
#include <cstring>
#include <numeric>
#include <utility>
#include <string>

#include "binary.hpp"
#include "cmbrbg/error.hpp"
#include "cmbrbg/rng.hpp"

namespace cmbrbg {

namespace {

constexpr std::string_view kPadMagic = "CMBPAD01";
constexpr std::uint32_t kPadVersion = 1;
// magic (8) + version (4) + total_bits (8)
constexpr off_t kConsumedOffset = 20;

std::string errno_text() { return std::strerror(errno); }

void check_dimension(int n) {
  if (n < 2) throw ParameterError("key matrix dimension must be >= 2, got " + std::to_string(n));
  if (n > 4096) throw ParameterError("key matrix dimension too large");
}

std::vector<std::uint8_t> xor_with_pad(std::span<const std::uint8_t> input, const BitStream& pad,
                                       std::uint64_t offset) {
  std::vector<std::uint8_t> out(input.size());
  const auto bits = pad.bits();
  for (std::size_t i = 0; i < input.size(); ++i) {
    std::uint8_t key = 0;
    const std::size_t base = static_cast<std::size_t>(offset) + 8 * i;
    for (std::size_t b = 0; b < 8; ++b) key = static_cast<std::uint8_t>(key << 1 | bits[base + b]);
    out[i] = input[i] ^ key;
  }
  return out;
}

}  // namespace

int key_base(int length) {
  if (length < 1 || length > 16) {
    throw ParameterError("key length must lie in [1, 16], got " + std::to_string(length));
  }
  return 18 - length;
}

std::uint64_t key_sum(std::span<const std::uint8_t> codes) {
  const int n = static_cast<int>(codes.size());
  const auto b = static_cast<std::uint64_t>(key_base(n));
  std::uint64_t sum = 0;
  std::uint64_t power = 1;
  for (auto c : codes) {
    power *= b;
    const std::uint64_t term = c * power;
    if (sum > UINT64_MAX - term) throw ParameterError("key sum overflows 64 bits");
    sum += term;
  }
  return sum;
}

KeyMatrix::KeyMatrix(int n, std::vector<std::uint32_t> entries) : n_(n), entries_(std::move(entries)) {
  if (n < 1) throw ParameterError("key matrix dimension must be >= 1");
  if (entries_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw ShapeError("key matrix of dimension " + std::to_string(n) + " needs " +
                     std::to_string(n * n) + " entries, got " + std::to_string(entries_.size()));
  }
}

KeyMatrix KeyMatrix::identity(int n) {
  std::vector<std::uint32_t> e(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  std::iota(e.begin(), e.end(), 0U);
  return KeyMatrix(n, std::move(e));
}

bool KeyMatrix::is_bijection() const noexcept {
  std::vector<bool> seen(entries_.size(), false);
  for (auto e : entries_) {
    if (e >= entries_.size() || seen[e]) return false;
    seen[e] = true;
  }
  return true;
}

KeyMatrix generate_key_matrix(std::uint64_t key_sum, int n) {
  check_dimension(n);
  auto m = KeyMatrix::identity(n);
  std::vector<std::uint32_t> e(m.entries().begin(), m.entries().end());
  CounterRng rng(key_sum);
  for (std::size_t i = e.size() - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(e[i], e[j]);
  }
  return KeyMatrix(n, std::move(e));
}

KeyMatrix generate_key_matrix(const BitStream& stream, int n) {
  check_dimension(n);
  auto m = KeyMatrix::identity(n);
  std::vector<std::uint32_t> e(m.entries().begin(), m.entries().end());
  const auto bits = stream.bits();
  std::size_t pos = 0;
  for (std::size_t i = e.size() - 1; i > 0; --i) {
    const auto width = static_cast<std::size_t>(std::bit_width(i));
    for (;;) {
      if (pos + width > bits.size()) {
        // Lower bound: one accepted draw for every remaining position.
        std::size_t still_needed = 0;
        for (std::size_t k = i; k > 0; --k) still_needed += static_cast<std::size_t>(std::bit_width(k));
        throw ExhaustedError("key matrix stream exhausted after " + std::to_string(pos) +
                             " of " + std::to_string(bits.size()) + " bits; at least " +
                             std::to_string(pos + still_needed) + " bits needed");
      }
      std::size_t draw = 0;
      for (std::size_t b = 0; b < width; ++b) draw = draw << 1 | bits[pos + b];
      pos += width;
      if (draw <= i) {
        std::swap(e[i], e[draw]);
        break;
      }
    }
  }
  return KeyMatrix(n, std::move(e));
}

std::vector<std::uint8_t> substitute(std::span<const std::uint8_t> data, const KeyMatrix& matrix) {
  if (!matrix.is_bijection()) throw ParameterError("substitution matrix is not a bijection");
  if (matrix.symbol_count() > 256) throw ParameterError("substitution works on byte alphabets (n <= 16)");
  const auto e = matrix.entries();
  std::vector<std::uint8_t> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i] >= e.size()) {
      throw ParameterError("symbol " + std::to_string(data[i]) + " outside the " +
                           std::to_string(e.size()) + "-symbol alphabet");
    }
    out[i] = static_cast<std::uint8_t>(e[data[i]]);
  }
  return out;
}

std::vector<std::uint8_t> inverse_substitute(std::span<const std::uint8_t> data,
                                             const KeyMatrix& matrix) {
  if (!matrix.is_bijection()) throw ParameterError("substitution matrix is not a bijection");
  if (matrix.symbol_count() > 256) throw ParameterError("substitution works on byte alphabets (n <= 16)");
  const auto e = matrix.entries();
  std::vector<std::uint32_t> inverse(e.size());
  for (std::size_t s = 0; s < e.size(); ++s) inverse[e[s]] = static_cast<std::uint32_t>(s);
  return substitute(data, KeyMatrix(matrix.n(), std::move(inverse)));
}

std::uint64_t PadLedger::reserve(std::uint64_t bits, std::optional<std::uint64_t> offset) {
  const std::uint64_t start = offset.value_or(consumed_bits);
  if (start < consumed_bits) {
    throw LedgerConflict("pad '" + pad_id + "': offset " + std::to_string(start) +
                         " already consumed (ledger at " + std::to_string(consumed_bits) + ")");
  }
  if (start > total_bits || bits > total_bits - start) {
    const std::uint64_t available = start > total_bits ? 0 : total_bits - start;
    throw ExhaustedError("pad '" + pad_id + "' exhausted: need " + std::to_string(bits) +
                         " bits, " + std::to_string(available) + " available (shortfall " +
                         std::to_string(bits - available) + ")");
  }
  consumed_bits = start + bits;
  return start;
}

std::vector<std::uint8_t> vernam_encrypt(std::span<const std::uint8_t> plaintext,
                                         const BitStream& pad, PadLedger& ledger,
                                         std::optional<std::uint64_t> offset) {
  if (ledger.total_bits != pad.size()) {
    throw ShapeError("ledger covers " + std::to_string(ledger.total_bits) + " bits but pad has " +
                     std::to_string(pad.size()));
  }
  PadLedger next = ledger;
  const std::uint64_t start = next.reserve(8 * static_cast<std::uint64_t>(plaintext.size()), offset);
  auto out = xor_with_pad(plaintext, pad, start);
  ledger = next;
  return out;
}

std::vector<std::uint8_t> vernam_decrypt(std::span<const std::uint8_t> ciphertext,
                                         const BitStream& pad, PadLedger& ledger,
                                         std::optional<std::uint64_t> offset) {
  return vernam_encrypt(ciphertext, pad, ledger, offset);
}

// ---------------------------------------------------------------------------
// PadStore

void PadStore::create(const std::filesystem::path& path, const BitStream& pad) {
  std::vector<std::uint8_t> out;
  detail::put_bytes(out, kPadMagic);
  detail::put_le<std::uint32_t>(out, kPadVersion);
  detail::put_le<std::uint64_t>(out, pad.size());
  detail::put_le<std::uint64_t>(out, 0);
  const auto packed = pad.packed();
  out.insert(out.end(), packed.begin(), packed.end());

  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_EXCL, 0600);
  if (fd < 0) throw FormatError(path.string() + ": cannot create pad store: " + errno_text());
  const auto written = ::write(fd, out.data(), out.size());
  const bool ok = written == static_cast<ssize_t>(out.size()) && ::fsync(fd) == 0;
  ::close(fd);
  if (!ok) throw FormatError(path.string() + ": short write creating pad store");
}

PadStore::PadStore(int fd, std::filesystem::path path) : fd_(fd), path_(std::move(path)) {}

PadStore::PadStore(PadStore&& other) noexcept
    : fd_(std::exchange(other.fd_, -1)),
      path_(std::move(other.path_)),
      pad_(std::move(other.pad_)),
      ledger_(std::move(other.ledger_)),
      persisted_consumed_(other.persisted_consumed_) {}

PadStore::~PadStore() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

PadStore PadStore::open(const std::filesystem::path& path) {
  const int fd = ::open(path.c_str(), O_RDWR);
  if (fd < 0) throw FormatError(path.string() + ": cannot open pad store: " + errno_text());
  PadStore store(fd, path);
  if (::flock(fd, LOCK_EX | LOCK_NB) != 0) {
    throw LedgerConflict(path.string() + ": pad store is locked by another process");
  }
  std::vector<std::uint8_t> data;
  std::uint8_t buf[65536];
  for (;;) {
    const auto n = ::read(fd, buf, sizeof buf);
    if (n < 0) throw FormatError(path.string() + ": read failed: " + errno_text());
    if (n == 0) break;
    data.insert(data.end(), buf, buf + n);
  }
  detail::ByteReader in(data, path.string());
  const auto magic = in.get_string(kPadMagic.size());
  if (magic != kPadMagic) {
    throw FormatError(path.string() + ": bad magic '" + magic + "', expected '" +
                      std::string(kPadMagic) + "'");
  }
  const auto version = in.get_le<std::uint32_t>();
  if (version != kPadVersion) {
    throw FormatError(path.string() + ": unsupported pad store version " + std::to_string(version));
  }
  const auto total = in.get_le<std::uint64_t>();
  const auto consumed = in.get_le<std::uint64_t>();
  if (consumed > total) throw FormatError(path.string() + ": consumed_bits exceeds total_bits");
  const std::size_t nbytes = static_cast<std::size_t>((total + 7) / 8);
  if (in.remaining() != nbytes) {
    throw FormatError(path.string() + ": expected " + std::to_string(nbytes) + " pad bytes, found " +
                      std::to_string(in.remaining()));
  }
  auto pad = BitStream::from_bytes(std::span(in.here(), nbytes), Provenance{"pad", {}, path.string()});
  store.pad_ = pad.prefix(static_cast<std::size_t>(total));
  store.ledger_ = PadLedger{path.filename().string(), total, consumed};
  store.persisted_consumed_ = consumed;
  return store;
}

void PadStore::commit() {
  if (ledger_.consumed_bits < persisted_consumed_) {
    throw LedgerConflict(path_.string() + ": ledger may not move backwards");
  }
  if (ledger_.consumed_bits > ledger_.total_bits) {
    throw LedgerConflict(path_.string() + ": ledger beyond end of pad");
  }
  std::vector<std::uint8_t> field;
  detail::put_le<std::uint64_t>(field, ledger_.consumed_bits);
  if (::pwrite(fd_, field.data(), field.size(), kConsumedOffset) != static_cast<ssize_t>(field.size()) ||
      ::fsync(fd_) != 0) {
    throw FormatError(path_.string() + ": failed to update ledger: " + errno_text());
  }
  persisted_consumed_ = ledger_.consumed_bits;
}

}  // namespace cmbrbg
