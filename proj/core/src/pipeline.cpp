// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cmbrbg/pipeline.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "cmbrbg/error.hpp"
#include "cmbrbg/fips.hpp"
#include "cmbrbg/io.hpp"
#include "cmbrbg/likelihood.hpp"
#include "cmbrbg/rng.hpp"
#include "cmbrbg/skysim.hpp"
#include "cmbrbg/vernam.hpp"

namespace cmbrbg::pipeline {

namespace fs = std::filesystem;

namespace {

// Upper bound on epochs harvested for one stream.
constexpr int kMaxHarvestEpochs = 1 << 20;

std::string map_name(int epoch, int det) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "e%04d_d%02d.cmbmap", epoch, det);
  return buf;
}

std::string pair_name(int epoch, int i, int j) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "e%04d_%02d_%02d.txt", epoch, i, j);
  return buf;
}

std::string detector_label(int det) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "d%02d", det);
  return buf;
}

struct PairFile {
  int epoch;
  int i;
  int j;
  fs::path path;
};

struct MapFile {
  int epoch;
  int det;
  fs::path path;
};

std::vector<fs::path> sorted_entries(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file()) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MapFile> list_maps(const fs::path& out_dir) {
  const auto dir = out_dir / "maps";
  if (!fs::is_directory(dir)) {
    throw FormatError("no maps directory at " + dir.string() + "; run 'simulate' first");
  }
  std::vector<MapFile> maps;
  for (const auto& p : sorted_entries(dir)) {
    int epoch = 0;
    int det = 0;
    char tail = 0;
    if (std::sscanf(p.filename().c_str(), "e%d_d%d.cmbma%c", &epoch, &det, &tail) == 3 && tail == 'p') {
      maps.push_back({epoch, det, p});
    }
  }
  if (maps.empty()) throw FormatError("no map files in " + dir.string() + "; run 'simulate' first");
  return maps;
}

std::vector<PairFile> list_pairs(const fs::path& dir, const std::string& upstream) {
  if (!fs::is_directory(dir)) {
    throw FormatError("missing " + dir.string() + "; run '" + upstream + "' first");
  }
  std::vector<PairFile> files;
  for (const auto& p : sorted_entries(dir)) {
    int epoch = 0;
    int i = 0;
    int j = 0;
    char tail = 0;
    if (std::sscanf(p.filename().c_str(), "e%d_%d_%d.tx%c", &epoch, &i, &j, &tail) == 4 && tail == 't') {
      files.push_back({epoch, i, j, p});
    }
  }
  if (files.empty()) throw FormatError("no spectra in " + dir.string() + "; run '" + upstream + "' first");
  return files;
}

double f_sky_from_comments(const std::vector<std::string>& comments, const fs::path& path) {
  for (const auto& c : comments) {
    if (c.starts_with("f_sky ")) return std::stod(c.substr(6));
  }
  throw FormatError(path.string() + ": missing '# f_sky' header");
}

std::string lineage_for(const RunConfig& config, std::string_view observer) {
  return "seed=" + std::to_string(config.seed) + ",observer=" + std::string(observer) +
         ",detectors=" + std::to_string(config.detectors) + ",lmax=" + std::to_string(config.lmax);
}

double config_f_sky(const RunConfig& config) {
  if (config.mask_cos_cut >= 1.0) return 1.0;
  return SkyMask::galactic_band(GaussLegendreGrid(config.lmax), config.mask_cos_cut).f_sky();
}

std::vector<double> binned_model_from(const RunConfig& config, const AngularSpectrum& signal,
                                      const BinningScheme& scheme, int i, int j, double f_sky) {
  auto model = bin_spectrum(signal, scheme);
  const double noise =
      i == j ? white_noise_level(GaussLegendreGrid(config.lmax), config.sigma_for(i)) : 0.0;
  for (double& m : model) m = f_sky * (m + noise);
  return model;
}

std::string fmt(double v, int precision = 6) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// In-memory stages

std::uint64_t sky_seed(const RunConfig& config) {
  return derive_seed(config.seed, {label_tag("sky")});
}

std::uint64_t noise_seed(const RunConfig& config, std::string_view observer, int epoch, int detector) {
  return derive_seed(config.seed, {label_tag("noise"), label_tag(observer),
                                   static_cast<std::uint64_t>(epoch),
                                   static_cast<std::uint64_t>(detector)});
}

Observatory::Observatory(const RunConfig& config) : config_(config), grid_(config.lmax) {
  config_.validate();
  const auto alm = synthesize_alm(fiducial_spectrum(config_.model, config_.lmax), sky_seed(config_));
  sky_ = synthesize_map(alm, grid_, config_.threads);
  if (config_.mask_cos_cut < 1.0) {
    mask_ = SkyMask::galactic_band(grid_, config_.mask_cos_cut);
    f_sky_ = mask_->f_sky();
  }
}

std::vector<SkyMap> Observatory::observe(int epoch, std::string_view observer) const {
  std::vector<SkyMap> maps;
  maps.reserve(static_cast<std::size_t>(config_.detectors));
  for (int d = 0; d < config_.detectors; ++d) {
    auto map = add_noise(sky_, config_.sigma_for(d), noise_seed(config_, observer, epoch, d));
    map.detector_id = detector_label(d);
    if (mask_) map = apply_mask(map, *mask_);
    maps.push_back(std::move(map));
  }
  return maps;
}

CrossSpectrumSet analyze_epoch(const std::vector<SkyMap>& maps, const RunConfig& config,
                               double f_sky) {
  std::vector<HarmonicCoeffs> alms;
  alms.reserve(maps.size());
  for (const auto& m : maps) alms.push_back(analyze_map(m, config.lmax, config.threads));
  return cross_spectrum_set(alms, f_sky);
}

std::vector<BinnedSpectrum> bin_epoch(const CrossSpectrumSet& spectra, const RunConfig& config) {
  const auto ranges = config.bin_ranges();
  const auto scheme = make_binning(ranges);
  std::vector<BinnedSpectrum> out;
  for (std::size_t i = 0; i < spectra.detector_count(); ++i) {
    for (std::size_t j = i; j < spectra.detector_count(); ++j) {
      out.push_back(make_binned(spectra.at(i, j).values(), scheme, spectra.f_sky()));
    }
  }
  return out;
}

std::vector<double> binned_model(const RunConfig& config, const BinningScheme& scheme, int i, int j,
                                 double f_sky) {
  return binned_model_from(config, fiducial_spectrum(config.model, config.lmax), scheme, i, j, f_sky);
}

BitStream harvest_epoch(const std::vector<BinnedSpectrum>& binned, const RunConfig& config,
                        const std::string& lineage) {
  BitStream out({}, Provenance{"cmb-harvest", config.policy.id(), lineage});
  std::size_t k = 0;
  for (int i = 0; i < config.detectors; ++i) {
    for (int j = i; j < config.detectors; ++j, ++k) {
      const auto& b = binned.at(k);
      const auto model = binned_model(config, b.scheme, i, j, b.f_sky);
      out.append(harvest_bits(b, model, config.policy, "cmb-harvest", lineage));
    }
  }
  return out;
}

BitStream harvest_observer(const RunConfig& config, std::string_view observer, std::size_t min_bits) {
  const Observatory obs(config);
  const auto lineage = lineage_for(config, observer);
  BitStream out({}, Provenance{"cmb-harvest", config.policy.id(), lineage});
  for (int epoch = 0; out.size() < min_bits; ++epoch) {
    if (epoch >= kMaxHarvestEpochs) throw ParameterError("harvest: epoch limit reached");
    const auto maps = obs.observe(epoch, observer);
    const auto set = analyze_epoch(maps, config, obs.f_sky());
    out.append(harvest_epoch(bin_epoch(set, config), config, lineage));
  }
  return out.prefix(min_bits);
}

// ---------------------------------------------------------------------------
// File stages

StageResult cmd_simulate(const RunConfig& config) {
  config.validate();
  const Observatory obs(config);
  const auto dir = config.out / "maps";
  fs::create_directories(dir);
  for (int e = 0; e < config.epochs; ++e) {
    const auto maps = obs.observe(e);
    for (int d = 0; d < config.detectors; ++d) {
      io::write_map(dir / map_name(e, d), maps[static_cast<std::size_t>(d)]);
    }
  }
  std::ostringstream os;
  os << "simulate: " << config.epochs * config.detectors << " maps (" << config.epochs
     << " epochs x " << config.detectors << " detectors, lmax " << config.lmax << ", f_sky "
     << fmt(obs.f_sky(), 10) << ") -> " << dir.string() << "\n";
  return {kExitOk, os.str()};
}

StageResult cmd_analyze(const RunConfig& config) {
  config.validate();
  const auto maps = list_maps(config.out);
  std::map<int, std::vector<MapFile>> by_epoch;
  for (const auto& m : maps) by_epoch[m.epoch].push_back(m);
  const double f_sky = config_f_sky(config);
  const auto dir = config.out / "spectra";
  fs::create_directories(dir);
  std::size_t written = 0;
  for (auto& [epoch, files] : by_epoch) {
    std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) { return a.det < b.det; });
    std::vector<SkyMap> epoch_maps;
    for (std::size_t d = 0; d < files.size(); ++d) {
      if (files[d].det != static_cast<int>(d)) {
        throw FormatError("epoch " + std::to_string(epoch) + ": detector maps are not numbered 0.." +
                          std::to_string(files.size() - 1));
      }
      auto map = io::read_map(files[d].path);
      map.detector_id = detector_label(static_cast<int>(d));
      epoch_maps.push_back(std::move(map));
    }
    const auto set = analyze_epoch(epoch_maps, config, f_sky);
    for (std::size_t i = 0; i < set.detector_count(); ++i) {
      for (std::size_t j = i; j < set.detector_count(); ++j) {
        io::write_spectrum(dir / pair_name(epoch, static_cast<int>(i), static_cast<int>(j)), set.at(i, j),
                           {"pseudo cross-spectrum " + set.detectors()[i] + " x " + set.detectors()[j],
                            "epoch " + std::to_string(epoch), "f_sky " + fmt(f_sky, 17)});
        ++written;
      }
    }
  }
  std::ostringstream os;
  os << "analyze: " << maps.size() << " maps -> " << written << " spectra in " << dir.string() << "\n";
  return {kExitOk, os.str()};
}

StageResult cmd_bin(const RunConfig& config) {
  config.validate();
  const auto files = list_pairs(config.out / "spectra", "analyze");
  const auto scheme = make_binning(config.bin_ranges());
  const auto dir = config.out / "binned";
  fs::create_directories(dir);
  for (const auto& f : files) {
    std::vector<std::string> comments;
    const auto spectrum = io::read_spectrum(f.path, &comments);
    const double f_sky = f_sky_from_comments(comments, f.path);
    const auto binned = make_binned(spectrum.values(), scheme, f_sky);
    io::write_binned(dir / f.path.filename(), binned,
                     {"binned pair " + detector_label(f.i) + " x " + detector_label(f.j),
                      "epoch " + std::to_string(f.epoch)});
  }
  std::ostringstream os;
  os << "bin: " << files.size() << " spectra x " << scheme.size() << " bins -> " << dir.string() << "\n";
  return {kExitOk, os.str()};
}

StageResult cmd_likelihood(const RunConfig& config, int epoch) {
  config.validate();
  const auto files = list_pairs(config.out / "spectra", "analyze");
  std::vector<PairFile> mine;
  for (const auto& f : files) {
    if (f.epoch == epoch) mine.push_back(f);
  }
  if (mine.empty()) throw FormatError("no spectra for epoch " + std::to_string(epoch));
  int detectors = 0;
  for (const auto& f : mine) detectors = std::max(detectors, f.j + 1);

  std::vector<std::string> ids;
  for (int d = 0; d < detectors; ++d) ids.push_back(detector_label(d));
  double f_sky = 1.0;
  std::optional<CrossSpectrumSet> set;
  for (const auto& f : mine) {
    std::vector<std::string> comments;
    auto s = io::read_spectrum(f.path, &comments);
    f_sky = f_sky_from_comments(comments, f.path);
    if (!set) set.emplace(ids, s.lmax(), f_sky);
    set->at(static_cast<std::size_t>(f.i), static_cast<std::size_t>(f.j)) = std::move(s);
  }
  const int lmax = set->lmax();
  const int lmin = config.lmin;

  const auto grid = GaussLegendreGrid(config.lmax);
  std::vector<double> noise_level(static_cast<std::size_t>(detectors));
  for (int d = 0; d < detectors; ++d) {
    noise_level[static_cast<std::size_t>(d)] = f_sky * white_noise_level(grid, config.sigma_for(d));
  }
  const auto signal = fiducial_spectrum(config.model, lmax);

  std::ostringstream os;
  os.precision(10);
  os << "# likelihood report, epoch " << epoch << ", " << detectors << " detectors, l in [" << lmin
     << ", " << lmax << "], f_sky " << f_sky << "\n";

  // Exact likelihood over detector matrices.
  std::vector<CovMatrix> empirical(static_cast<std::size_t>(lmax + 1));
  std::vector<CovMatrix> model(static_cast<std::size_t>(lmax + 1));
  for (int l = lmin; l <= lmax; ++l) {
    empirical[static_cast<std::size_t>(l)] = empirical_covariance(*set, l);
    model[static_cast<std::size_t>(l)] = model_covariance(f_sky * signal[l], noise_level);
  }
  const double exact = exact_neg_loglike(empirical, model, lmin, lmax);
  os << "exact_neg_loglike " << exact << "\n";

  // Binned likelihood, if the bin stage has run.
  const auto binned_dir = config.out / "binned";
  if (fs::is_directory(binned_dir)) {
    const auto scheme = make_binning(config.bin_ranges());
    const auto n_modes = effective_modes(scheme, f_sky);
    std::vector<CovMatrix> data(scheme.size(), CovMatrix(static_cast<std::size_t>(detectors)));
    bool complete = true;
    for (int i = 0; i < detectors && complete; ++i) {
      for (int j = i; j < detectors; ++j) {
        const auto path = binned_dir / pair_name(epoch, i, j);
        if (!fs::exists(path)) {
          complete = false;
          break;
        }
        const auto b = io::read_binned(path);
        if (b.values.size() != scheme.size()) throw ShapeError(path.string() + ": bin count differs from config");
        for (std::size_t r = 0; r < scheme.size(); ++r) {
          data[r](static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = b.values[r];
          data[r](static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = b.values[r];
        }
      }
    }
    if (complete) {
      const auto signal_binned = bin_spectrum(signal, scheme);
      std::vector<CovMatrix> model_binned;
      for (double s : signal_binned) model_binned.push_back(model_covariance(f_sky * s, noise_level));
      os << "binned_neg_loglike " << binned_neg_loglike(data, model_binned, n_modes) << " (R = "
         << scheme.size() << ")\n";
    } else {
      os << "binned_neg_loglike skipped: binned spectra for epoch " << epoch << " incomplete\n";
    }
  } else {
    os << "binned_neg_loglike skipped: run 'bin' first\n";
  }

  // Two-step noise / signal separation.
  if (detectors >= 2) {
    const auto est = estimate_noise_and_signal(*set, lmin);
    const int lo = std::max(lmin, std::min(10, lmax));
    const auto noise_dir = config.out / "noise";
    fs::create_directories(noise_dir);
    for (int d = 0; d < detectors; ++d) {
      double mean = 0.0;
      for (int l = lo; l <= lmax; ++l) mean += est.noise[static_cast<std::size_t>(d)][l];
      mean /= (lmax - lo + 1);
      const double injected = noise_level[static_cast<std::size_t>(d)];
      os << "noise " << detector_label(d) << " mean_l[" << lo << "," << lmax << "] " << mean
         << " injected " << injected << " ratio " << (injected > 0 ? mean / injected : 0.0) << "\n";
      char name[64];
      std::snprintf(name, sizeof name, "e%04d_d%02d.txt", epoch, d);
      io::write_spectrum(noise_dir / name, est.noise[static_cast<std::size_t>(d)],
                         {"noise estimate " + detector_label(d), "epoch " + std::to_string(epoch)});
    }
    char name[64];
    std::snprintf(name, sizeof name, "e%04d_signal.txt", epoch);
    io::write_spectrum(noise_dir / name, est.signal,
                       {"signal, cross-spectra only, noise fixed", "epoch " + std::to_string(epoch)});
    os << "noise_flags " << est.flagged.size() << "\n";
  } else {
    os << "noise estimation skipped: needs at least two detectors\n";
  }

  const auto text = os.str();
  fs::create_directories(config.out);
  std::ofstream(config.out / "likelihood.txt") << text;
  return {kExitOk, text};
}

StageResult cmd_extract(const RunConfig& config, const std::optional<fs::path>& model_spectrum) {
  config.validate();
  const auto files = list_pairs(config.out / "binned", "bin");
  AngularSpectrum signal = model_spectrum ? io::read_spectrum(*model_spectrum)
                                          : fiducial_spectrum(config.model, config.lmax);
  if (model_spectrum) signal.validate_model();
  const auto lineage = lineage_for(config, "alice");
  BitStream out({}, Provenance{"cmb-harvest", config.policy.id(), lineage});
  std::size_t constant_bins = 0;
  for (const auto& f : files) {
    const auto binned = io::read_binned(f.path);
    if (signal.lmax() < binned.scheme.ell_max()) {
      throw BandLimitError("model spectrum stops before l = " + std::to_string(binned.scheme.ell_max()));
    }
    const auto model = binned_model_from(config, signal, binned.scheme, f.i, f.j, binned.f_sky);
    const auto bits = harvest_bits(binned, model, config.policy, "cmb-harvest", lineage);
    if (bits.size() > 1 && bits.is_constant()) ++constant_bins;
    out.append(bits);
  }
  const auto dir = config.out / "bits";
  fs::create_directories(dir);
  io::write_bitstream(dir / "harvest.cmbbit", out);
  std::ostringstream os;
  os << "extract: " << files.size() << " binned spectra -> " << out.size() << " bits (policy "
     << config.policy.id() << ") -> " << (dir / "harvest.cmbbit").string() << "\n";
  if (constant_bins > 0) {
    os << "warning: " << constant_bins << " spectra produced constant (degenerate) bit blocks\n";
  }
  return {kExitOk, os.str()};
}

StageResult cmd_fips(const fs::path& bitstream, const std::optional<fs::path>& report) {
  const auto bits = io::read_bitstream(bitstream);
  if (bits.size() < fips::kSampleBits) {
    throw ShapeError(bitstream.string() + ": " + std::to_string(bits.size()) + " bits, FIPS tests need " +
                     std::to_string(fips::kSampleBits));
  }
  const auto results = fips::run_all(bits.prefix(fips::kSampleBits));
  std::string text;
  for (const auto& r : results) text += r.report_line() + "\n";
  if (report) {
    if (report->has_parent_path()) fs::create_directories(report->parent_path());
    std::ofstream(*report) << text;
  }
  return {fips::all_pass(results) ? kExitOk : kExitStatistical, text};
}

StageResult cmd_reference(std::uint64_t seed, std::optional<std::size_t> n_bits,
                          const std::optional<fs::path>& match, const fs::path& out) {
  if (n_bits.has_value() == match.has_value())
    throw ParameterError("reference: exactly one of a bit count or a stream to match is required");
  const std::size_t n = n_bits ? *n_bits : io::read_bitstream(*match).size();
  if (n == 0) throw ParameterError("reference: bit count must be positive");
  io::write_bitstream(out, reference_stream(seed, n));
  return {kExitOk, "reference: " + std::to_string(n) + " bits, seed " + std::to_string(seed) + " -> " +
                       out.string() + "\n"};
}

StageResult cmd_keygen(const fs::path& w, const fs::path& v, const fs::path& out,
                       const std::optional<fs::path>& pad) {
  const auto wb = io::read_bitstream(w);
  const auto vb = io::read_bitstream(v);
  const auto k = combine_keys(vb, wb);
  io::write_bitstream(out, k);
  std::string text = "keygen: K = V xor W, " + std::to_string(k.size()) + " bits -> " + out.string() + "\n";
  if (pad) {
    PadStore::create(*pad, k);
    text += "keygen: pad store -> " + pad->string() + "\n";
  }
  return {kExitOk, text};
}

StageResult cmd_matrix_from_key(const std::string& key, int n, const fs::path& out) {
  const auto s = key_sum(key);
  const auto m = generate_key_matrix(s, n);
  io::write_matrix(out, m);
  return {kExitOk, "matrix: key length " + std::to_string(key.size()) + ", base " +
                       std::to_string(key_base(static_cast<int>(key.size()))) + ", key sum " +
                       std::to_string(s) + " -> " + std::to_string(n) + "x" + std::to_string(n) + " " +
                       out.string() + "\n"};
}

StageResult cmd_matrix_from_stream(const fs::path& stream, int n, const fs::path& out) {
  const auto bits = io::read_bitstream(stream);
  const auto m = generate_key_matrix(bits, n);
  io::write_matrix(out, m);
  return {kExitOk, "matrix: " + std::to_string(n) + "x" + std::to_string(n) + " from " +
                       std::to_string(bits.size()) + "-bit stream -> " + out.string() + "\n"};
}

namespace {

StageResult apply_pad(const fs::path& in, const fs::path& pad_path, const fs::path& out,
                      std::optional<std::uint64_t> offset, const char* verb) {
  const auto input = io::read_bytes(in);
  auto store = PadStore::open(pad_path);
  auto ledger = store.ledger();
  const auto start = offset.value_or(ledger.consumed_bits);
  const auto output = vernam_encrypt(input, store.pad(), ledger, offset);
  // Commit the ledger before releasing any output so pad bits are never reused.
  store.ledger() = ledger;
  store.commit();
  io::write_bytes(out, output);
  return {kExitOk, std::string(verb) + ": " + std::to_string(input.size()) + " bytes, pad bits [" +
                       std::to_string(start) + ", " + std::to_string(ledger.consumed_bits) + ") of " +
                       std::to_string(ledger.total_bits) + " -> " + out.string() + "\n"};
}

}  // namespace

StageResult cmd_encrypt(const fs::path& in, const fs::path& pad, const fs::path& out,
                        std::optional<std::uint64_t> offset) {
  return apply_pad(in, pad, out, offset, "encrypt");
}

StageResult cmd_decrypt(const fs::path& in, const fs::path& pad, const fs::path& out,
                        std::optional<std::uint64_t> offset) {
  return apply_pad(in, pad, out, offset, "decrypt");
}

StageResult cmd_eve(const RunConfig& config) {
  config.validate();
  // Raw streams keep bit positions aligned between observers.
  RunConfig raw = config;
  raw.policy.whitening = Whitening::none;
  const auto alice = harvest_observer(raw, "alice", config.eve_bits);
  const auto eve = harvest_observer(raw, "eve", config.eve_bits);
  const auto alice_again = harvest_observer(raw, "alice", config.eve_bits);
  const double cross = agreement_fraction(alice, eve);
  const double self = agreement_fraction(alice, alice_again);
  const bool ok = cross >= kAgreementLow && cross <= kAgreementHigh && self == 1.0;
  std::ostringstream os;
  os.precision(6);
  os << "eve: policy " << raw.policy.id() << ", " << alice.size() << " bits per observer\n";
  os << "agreement alice/eve " << cross << " (expected in [" << kAgreementLow << ", " << kAgreementHigh
     << "])\n";
  os << "agreement alice/alice " << self << " (same measurement)\n";
  os << "eve " << (ok ? "pass" : "fail") << "\n";
  const auto text = os.str();
  fs::create_directories(config.out);
  std::ofstream(config.out / "eve.txt") << text;
  return {ok ? kExitOk : kExitStatistical, text};
}

StageResult run_pipeline(const RunConfig& config) {
  StageResult total;
  for (auto stage : {cmd_simulate, cmd_analyze, cmd_bin}) {
    const auto r = stage(config);
    total.report += r.report;
  }
  total.report += cmd_likelihood(config, 0).report;
  total.report += cmd_extract(config).report;
  const auto fips_result = cmd_fips(config.out / "bits" / "harvest.cmbbit", config.out / "fips.txt");
  total.report += fips_result.report;
  total.exit_code = fips_result.exit_code;
  return total;
}

}  // namespace cmbrbg::pipeline
