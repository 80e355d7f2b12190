// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cmbrbg/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cmbrbg/error.hpp"

namespace cmbrbg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse(const std::string& key, const std::string& value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [p, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || p != end) {
    throw ParameterError("config: bad value '" + value + "' for '" + key + "'");
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(s);
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join_doubles(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void RunConfig::set(const std::string& raw_key, const std::string& raw_value) {
  const auto key = trim(raw_key);
  const auto value = trim(raw_value);
  if (key == "lmax") {
    lmax = parse<int>(key, value);
  } else if (key == "detectors") {
    detectors = parse<int>(key, value);
  } else if (key == "noise_sigma") {
    noise_sigma.clear();
    for (const auto& s : split(value, ',')) noise_sigma.push_back(parse<double>(key, s));
  } else if (key == "amplitude") {
    model.amplitude = parse<double>(key, value);
  } else if (key == "ell_damp") {
    model.ell_damp = parse<double>(key, value);
  } else if (key == "mask_cos_cut") {
    mask_cos_cut = parse<double>(key, value);
  } else if (key == "bins") {
    bins.clear();
    if (value != "single") {
      for (const auto& range : split(value, ',')) {
        const auto dash = range.find('-');
        if (dash == std::string::npos) throw ParameterError("config: bin '" + range + "' is not 'lo-hi'");
        bins.emplace_back(parse<int>(key, trim(range.substr(0, dash))),
                          parse<int>(key, trim(range.substr(dash + 1))));
      }
    }
  } else if (key == "lmin") {
    lmin = parse<int>(key, value);
  } else if (key == "epochs") {
    epochs = parse<int>(key, value);
  } else if (key == "bits_per_bin") {
    policy.bits_per_bin = parse<int>(key, value);
  } else if (key == "guard") {
    policy.guard = parse<int>(key, value);
  } else if (key == "whitening") {
    if (value == "none") {
      policy.whitening = Whitening::none;
    } else if (value == "von-neumann") {
      policy.whitening = Whitening::von_neumann;
    } else {
      throw ParameterError("config: whitening must be 'none' or 'von-neumann'");
    }
  } else if (key == "seed") {
    seed = parse<std::uint64_t>(key, value);
  } else if (key == "threads") {
    threads = parse<int>(key, value);
  } else if (key == "eve_bits") {
    eve_bits = parse<std::size_t>(key, value);
  } else if (key == "out") {
    out = value;
  } else {
    throw ParameterError("config: unknown key '" + key + "'");
  }
}

void RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string() + ": cannot open config");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    set(line.substr(0, eq), line.substr(eq + 1));
  }
}

std::string RunConfig::dump() const {
  std::ostringstream os;
  os << "lmax = " << lmax << "\n";
  os << "lmin = " << lmin << "\n";
  os << "detectors = " << detectors << "\n";
  os << "noise_sigma = " << join_doubles(noise_sigma) << "\n";
  os << "amplitude = " << fmt_double(model.amplitude) << "\n";
  os << "ell_damp = " << fmt_double(model.ell_damp) << "\n";
  os << "mask_cos_cut = " << fmt_double(mask_cos_cut) << "\n";
  os << "bins = ";
  if (bins.empty()) {
    os << "single";
  } else {
    for (std::size_t i = 0; i < bins.size(); ++i) {
      os << (i ? "," : "") << bins[i].first << "-" << bins[i].second;
    }
  }
  os << "\n";
  os << "epochs = " << epochs << "\n";
  os << "bits_per_bin = " << policy.bits_per_bin << "\n";
  os << "guard = " << policy.guard << "\n";
  os << "whitening = " << (policy.whitening == Whitening::none ? "none" : "von-neumann") << "\n";
  os << "seed = " << seed << "\n";
  os << "threads = " << threads << "\n";
  os << "eve_bits = " << eve_bits << "\n";
  os << "out = " << out.string() << "\n";
  return os.str();
}

void RunConfig::validate() const {
  if (lmax < 2) throw ParameterError("config: lmax must be >= 2");
  if (lmin < 2 || lmin > lmax) throw ParameterError("config: lmin must lie in [2, lmax]");
  if (detectors < 1) throw ParameterError("config: detectors must be >= 1");
  if (noise_sigma.empty() ||
      (noise_sigma.size() != 1 && noise_sigma.size() != static_cast<std::size_t>(detectors))) {
    throw ParameterError("config: noise_sigma needs one value or one per detector");
  }
  for (double s : noise_sigma) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw ParameterError("config: noise_sigma must be >= 0");
  }
  if (!(mask_cos_cut > 0.0 && mask_cos_cut <= 1.0)) {
    throw ParameterError("config: mask_cos_cut must lie in (0, 1]");
  }
  if (epochs < 1) throw ParameterError("config: epochs must be >= 1");
  if (threads < 1) throw ParameterError("config: threads must be >= 1");
  for (const auto& [lo, hi] : bin_ranges()) {
    if (hi > lmax || lo < lmin) throw ParameterError("config: bins must lie within [lmin, lmax]");
  }
  policy.validate();
}

double RunConfig::sigma_for(int detector) const {
  if (noise_sigma.size() == 1) return noise_sigma.front();
  return noise_sigma.at(static_cast<std::size_t>(detector));
}

std::vector<std::pair<int, int>> RunConfig::bin_ranges() const {
  if (!bins.empty()) return bins;
  std::vector<std::pair<int, int>> out;
  for (int l = lmin; l <= lmax; ++l) out.emplace_back(l, l);
  return out;
}

}  // namespace cmbrbg
