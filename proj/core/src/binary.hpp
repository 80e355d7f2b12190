// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "cmbrbg/error.hpp"

namespace cmbrbg::detail {

// Little-endian encoding independent of host byte order.
template <class T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  std::uint64_t bits = 0;
  if constexpr (std::is_floating_point_v<T>) {
    bits = std::bit_cast<std::uint64_t>(static_cast<double>(value));
  } else {
    bits = static_cast<std::uint64_t>(value);
  }
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

inline void put_bytes(std::vector<std::uint8_t>& out, std::string_view s) {
  out.insert(out.end(), s.begin(), s.end());
}

class ByteReader {
 public:
  ByteReader(const std::vector<std::uint8_t>& data, std::string what)
      : data_(data), what_(std::move(what)) {}

  template <class T>
  T get_le() {
    need(sizeof(T));
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) bits |= std::uint64_t{data_[pos_ + i]} << (8 * i);
    pos_ += sizeof(T);
    if constexpr (std::is_floating_point_v<T>) {
      return std::bit_cast<double>(bits);
    } else {
      return static_cast<T>(bits);
    }
  }

  std::string get_string(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(data_.data() + pos_), n);
    pos_ += n;
    return s;
  }

  const std::uint8_t* here() const { return data_.data() + pos_; }
  void skip(std::size_t n) {
    need(n);
    pos_ += n;
  }
  std::size_t remaining() const { return data_.size() - pos_; }
  std::size_t position() const { return pos_; }

  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) {
      throw FormatError(what_ + ": truncated at byte " + std::to_string(pos_) + " (needed " +
                        std::to_string(n) + " more)");
    }
  }

 private:
  const std::vector<std::uint8_t>& data_;
  std::string what_;
  std::size_t pos_ = 0;
};

}  // namespace cmbrbg::detail
