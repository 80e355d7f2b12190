// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cmbrbg/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "binary.hpp"
#include "cmbrbg/error.hpp"

namespace cmbrbg::io {

namespace {

constexpr std::string_view kMapMagic = "CMBMAP01";
constexpr std::string_view kBitMagic = "CMBBIT01";
constexpr std::uint32_t kBitVersion = 1;

std::string where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line);
}

std::ifstream open_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string() + ": cannot open");
  return in;
}

std::ofstream create_text(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError(path.string() + ": cannot create");
  out << std::setprecision(17);
  return out;
}

// Strip comments / whitespace; returns false for blank lines. Comment text
// (without the leading '#') goes to `comment` when present.
bool data_fields(std::string line, std::vector<std::string>& fields, std::string* comment) {
  fields.clear();
  if (const auto hash = line.find('#'); hash != std::string::npos) {
    if (comment) {
      auto text = line.substr(hash + 1);
      const auto first = text.find_first_not_of(" \t");
      *comment = first == std::string::npos ? std::string() : text.substr(first);
    }
    line.erase(hash);
  }
  std::istringstream ss(line);
  std::string f;
  while (ss >> f) fields.push_back(f);
  return !fields.empty();
}

template <class T>
T parse_number(const std::string& s, const std::filesystem::path& path, std::size_t line) {
  T value{};
  if constexpr (std::is_floating_point_v<T>) {
    // from_chars for double is available in libstdc++ 11.
    const auto* end = s.data() + s.size();
    const auto [p, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc() || p != end || !std::isfinite(value)) {
      throw FormatError(where(path, line) + ": bad number '" + s + "'");
    }
  } else {
    const auto* end = s.data() + s.size();
    const auto [p, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc() || p != end) throw FormatError(where(path, line) + ": bad integer '" + s + "'");
  }
  return value;
}

}  // namespace

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string() + ": cannot open");
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(path.string() + ": cannot create");
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw FormatError(path.string() + ": write failed");
}

// ---------------------------------------------------------------------------
// Spectra

AngularSpectrum read_spectrum(const std::filesystem::path& path, std::vector<std::string>* comments) {
  auto in = open_text(path);
  std::vector<double> values;
  std::vector<std::string> fields;
  std::string line;
  std::string comment;
  std::size_t lineno = 0;
  long last_ell = -1;
  while (std::getline(in, line)) {
    ++lineno;
    comment.clear();
    const bool has_data = data_fields(line, fields, &comment);
    if (comments && !comment.empty()) comments->push_back(comment);
    if (!has_data) continue;
    if (fields.size() != 2) throw FormatError(where(path, lineno) + ": expected 'l C_l'");
    const auto ell = parse_number<long>(fields[0], path, lineno);
    const auto c = parse_number<double>(fields[1], path, lineno);
    if (ell < 0 || ell <= last_ell) {
      throw FormatError(where(path, lineno) + ": multipoles must be non-negative and strictly increasing");
    }
    if (ell > 100000) throw FormatError(where(path, lineno) + ": multipole too large");
    values.resize(static_cast<std::size_t>(ell + 1), 0.0);
    values[static_cast<std::size_t>(ell)] = c;
    last_ell = ell;
  }
  if (values.empty()) throw FormatError(path.string() + ": no spectrum values");
  return AngularSpectrum(std::move(values));
}

void write_spectrum(const std::filesystem::path& path, const AngularSpectrum& spectrum,
                    const std::vector<std::string>& comments) {
  auto out = create_text(path);
  for (const auto& c : comments) out << "# " << c << "\n";
  for (int l = 0; l <= spectrum.lmax(); ++l) out << l << " " << spectrum[l] << "\n";
  if (!out) throw FormatError(path.string() + ": write failed");
}

// ---------------------------------------------------------------------------
// Maps

SkyMap read_map(const std::filesystem::path& path) {
  const auto data = read_bytes(path);
  detail::ByteReader in(data, path.string());
  const auto magic = in.get_string(kMapMagic.size());
  if (magic != kMapMagic) {
    throw FormatError(path.string() + ": bad magic '" + magic + "', expected '" +
                      std::string(kMapMagic) + "'");
  }
  const auto lmax = in.get_le<std::uint32_t>();
  const auto n_theta = in.get_le<std::uint32_t>();
  const auto n_phi = in.get_le<std::uint32_t>();
  if (lmax > 8192 || n_theta != lmax + 1 || n_phi != 2 * lmax + 1) {
    throw FormatError(path.string() + ": grid header (lmax " + std::to_string(lmax) + ", n_theta " +
                      std::to_string(n_theta) + ", n_phi " + std::to_string(n_phi) +
                      ") is not a Gauss-Legendre grid");
  }
  SkyMap map(GaussLegendreGrid(static_cast<int>(lmax)), path.stem().string());
  in.need(map.pixels.size() * 8);
  for (double& p : map.pixels) p = in.get_le<double>();
  if (in.remaining() != 0) throw FormatError(path.string() + ": trailing bytes after pixels");
  return map;
}

void write_map(const std::filesystem::path& path, const SkyMap& map) {
  std::vector<std::uint8_t> out;
  out.reserve(20 + map.pixels.size() * 8);
  detail::put_bytes(out, kMapMagic);
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(map.grid.lmax()));
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(map.grid.n_theta()));
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(map.grid.n_phi()));
  for (double p : map.pixels) detail::put_le<double>(out, p);
  write_bytes(path, out);
}

// ---------------------------------------------------------------------------
// Binned spectra

BinnedSpectrum read_binned(const std::filesystem::path& path) {
  auto in = open_text(path);
  std::vector<std::pair<int, int>> ranges;
  BinnedSpectrum out;
  std::vector<std::string> fields;
  std::string line;
  std::string comment;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    comment.clear();
    const bool has_data = data_fields(line, fields, &comment);
    if (comment.starts_with("f_sky ")) {
      out.f_sky = parse_number<double>(comment.substr(6), path, lineno);
    }
    if (!has_data) continue;
    if (fields.size() != 5) throw FormatError(where(path, lineno) + ": expected 'r l_min l_max C_r n_r'");
    const auto r = parse_number<int>(fields[0], path, lineno);
    if (r != static_cast<int>(ranges.size()) + 1) {
      throw FormatError(where(path, lineno) + ": bins must be numbered 1, 2, ... in order");
    }
    ranges.emplace_back(parse_number<int>(fields[1], path, lineno),
                        parse_number<int>(fields[2], path, lineno));
    out.values.push_back(parse_number<double>(fields[3], path, lineno));
    out.n_modes.push_back(parse_number<double>(fields[4], path, lineno));
  }
  if (ranges.empty()) throw FormatError(path.string() + ": no bins");
  try {
    out.scheme = make_binning(ranges);
  } catch (const Error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return out;
}

void write_binned(const std::filesystem::path& path, const BinnedSpectrum& binned,
                  const std::vector<std::string>& comments) {
  if (binned.values.size() != binned.scheme.size() || binned.n_modes.size() != binned.scheme.size()) {
    throw ShapeError("binned spectrum has inconsistent lengths");
  }
  auto out = create_text(path);
  for (const auto& c : comments) out << "# " << c << "\n";
  out << "# f_sky " << binned.f_sky << "\n";
  out << "# r l_min l_max C_r n_r\n";
  for (std::size_t r = 0; r < binned.scheme.size(); ++r) {
    const auto& bin = binned.scheme[r];
    out << r + 1 << " " << bin.ell_min << " " << bin.ell_max << " " << binned.values[r] << " "
        << binned.n_modes[r] << "\n";
  }
  if (!out) throw FormatError(path.string() + ": write failed");
}

// ---------------------------------------------------------------------------
// Bitstreams

BitStream read_bitstream(const std::filesystem::path& path) {
  const auto data = read_bytes(path);
  detail::ByteReader in(data, path.string());
  const auto magic = in.get_string(kBitMagic.size());
  if (magic != kBitMagic) {
    throw FormatError(path.string() + ": bad magic '" + magic + "', expected '" +
                      std::string(kBitMagic) + "'");
  }
  const auto version = in.get_le<std::uint32_t>();
  if (version != kBitVersion) {
    throw FormatError(path.string() + ": unsupported bitstream version " + std::to_string(version));
  }
  const auto count = in.get_le<std::uint64_t>();
  const auto prov_len = in.get_le<std::uint32_t>();
  const auto provenance = in.get_string(prov_len);
  const auto nbytes = static_cast<std::size_t>((count + 7) / 8);
  if (in.remaining() != nbytes) {
    throw FormatError(path.string() + ": expected " + std::to_string(nbytes) + " packed bytes, found " +
                      std::to_string(in.remaining()));
  }
  auto bits = BitStream::from_bytes(std::span(in.here(), nbytes), Provenance::parse(provenance));
  return bits.prefix(static_cast<std::size_t>(count));
}

void write_bitstream(const std::filesystem::path& path, const BitStream& bits) {
  std::vector<std::uint8_t> out;
  const auto provenance = bits.provenance().str();
  detail::put_bytes(out, kBitMagic);
  detail::put_le<std::uint32_t>(out, kBitVersion);
  detail::put_le<std::uint64_t>(out, bits.size());
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(provenance.size()));
  detail::put_bytes(out, provenance);
  const auto packed = bits.packed();
  out.insert(out.end(), packed.begin(), packed.end());
  write_bytes(path, out);
}

// ---------------------------------------------------------------------------
// Key matrices

KeyMatrix read_matrix(const std::filesystem::path& path) {
  auto in = open_text(path);
  std::vector<std::string> fields;
  std::string line;
  std::size_t lineno = 0;
  int n = -1;
  std::vector<std::uint32_t> entries;
  while (std::getline(in, line)) {
    ++lineno;
    if (!data_fields(line, fields, nullptr)) continue;
    if (n < 0) {
      if (fields.size() != 1) throw FormatError(where(path, lineno) + ": first line must hold n");
      n = parse_number<int>(fields[0], path, lineno);
      if (n < 1 || n > 4096) throw FormatError(where(path, lineno) + ": bad dimension");
      continue;
    }
    if (fields.size() != static_cast<std::size_t>(n)) {
      throw FormatError(where(path, lineno) + ": expected " + std::to_string(n) + " codes per row");
    }
    for (const auto& f : fields) entries.push_back(parse_number<std::uint32_t>(f, path, lineno));
  }
  if (n < 0) throw FormatError(path.string() + ": empty matrix file");
  if (entries.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw FormatError(path.string() + ": expected " + std::to_string(n) + " rows");
  }
  return KeyMatrix(n, std::move(entries));
}

void write_matrix(const std::filesystem::path& path, const KeyMatrix& matrix) {
  auto out = create_text(path);
  out << matrix.n() << "\n";
  for (int r = 0; r < matrix.n(); ++r) {
    for (int c = 0; c < matrix.n(); ++c) out << (c ? " " : "") << matrix(r, c);
    out << "\n";
  }
  if (!out) throw FormatError(path.string() + ": write failed");
}

}  // namespace cmbrbg::io
