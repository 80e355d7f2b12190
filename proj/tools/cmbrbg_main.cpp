// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0
//
// cmbrbg: simulate a CMB sky, estimate its spectra and turn the sub-noise
// digits of the binned power into key material.

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cmbrbg/config.hpp"
#include "cmbrbg/error.hpp"
#include "cmbrbg/fips.hpp"
#include "cmbrbg/pipeline.hpp"

namespace fs = std::filesystem;
namespace pl = cmbrbg::pipeline;

namespace {

struct GlobalOptions {
  std::optional<fs::path> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<fs::path> out;
  std::vector<std::string> overrides;
  bool print_config = false;
  bool show_thresholds = false;
};

cmbrbg::RunConfig resolve_config(const GlobalOptions& g) {
  cmbrbg::RunConfig config;
  if (g.config_path) config.load(*g.config_path);
  for (const auto& kv : g.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw cmbrbg::ParameterError("--set expects key=value, got '" + kv + "'");
    config.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (g.seed) config.seed = *g.seed;
  if (g.out) config.out = *g.out;
  config.validate();
  return config;
}

int emit(const pl::StageResult& r) {
  std::cout << r.report;
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cmbrbg - CMB power spectrum random bit generator"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  GlobalOptions g;
  app.add_option("--config", g.config_path, "Config file with 'key = value' lines")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Master seed (overrides config)");
  app.add_option("--out", g.out, "Output directory (overrides config)");
  app.add_option("--set", g.overrides, "Override a config key: --set key=value")->take_all();
  app.add_flag("--print-config", g.print_config, "Print the effective configuration and exit");
  app.add_flag("--show-thresholds", g.show_thresholds, "Print compiled-in FIPS thresholds and exit");

  auto* simulate = app.add_subcommand("simulate", "Write noisy detector maps for every epoch");
  auto* analyze = app.add_subcommand("analyze", "Maps -> all auto- and cross pseudo-spectra");
  auto* bin = app.add_subcommand("bin", "Spectra -> binned spectra with effective mode counts");

  int epoch = 0;
  auto* likelihood = app.add_subcommand("likelihood", "Exact and binned likelihoods, noise estimate");
  likelihood->add_option("--epoch", epoch, "Epoch to evaluate")->capture_default_str();

  std::optional<fs::path> model_file;
  auto* extract = app.add_subcommand("extract", "Binned spectra -> harvested bitstream");
  extract->add_option("--model", model_file, "Signal model spectrum file (default: toy model)")
      ->check(CLI::ExistingFile);

  fs::path fips_input;
  std::optional<fs::path> fips_report;
  auto* fips = app.add_subcommand("fips", "Run FIPS 140-2 power-up tests on a bitstream");
  fips->add_option("bitstream", fips_input, "Bitstream file")->required()->check(CLI::ExistingFile);
  fips->add_option("--report", fips_report, "Also write the report here");

  std::optional<std::size_t> ref_bits;
  std::optional<fs::path> ref_match;
  fs::path ref_out;
  auto* reference = app.add_subcommand("reference", "Write a reference-generator stream (a V for keygen)");
  auto* ref_bits_opt = reference->add_option("--bits", ref_bits, "Number of bits");
  auto* ref_match_opt =
      reference->add_option("--match", ref_match, "Size to match this stream")->check(CLI::ExistingFile);
  ref_bits_opt->excludes(ref_match_opt);
  reference->add_option("-o,--output", ref_out, "Output stream")->required();

  fs::path key_w;
  fs::path key_v;
  fs::path key_out;
  std::optional<fs::path> key_pad;
  auto* keygen = app.add_subcommand("keygen", "K = V xor W");
  keygen->add_option("-w,--w", key_w, "W stream (entropy-bearing)")->required()->check(CLI::ExistingFile);
  keygen->add_option("-v,--v", key_v, "V stream (independent of W)")->required()->check(CLI::ExistingFile);
  keygen->add_option("-o,--output", key_out, "Output K stream")->required();
  keygen->add_option("--pad", key_pad, "Also create a pad store from K");

  std::optional<std::string> matrix_key;
  std::optional<fs::path> matrix_stream;
  int matrix_n = 16;
  fs::path matrix_out;
  auto* matrix = app.add_subcommand("matrix", "Generate an n x n random key matrix");
  auto* key_opt = matrix->add_option("--key", matrix_key, "Text key (1-16 characters)");
  auto* stream_opt = matrix->add_option("--stream", matrix_stream, "Bitstream file")->check(CLI::ExistingFile);
  key_opt->excludes(stream_opt);
  matrix->add_option("-n,--dimension", matrix_n, "Matrix dimension")->capture_default_str();
  matrix->add_option("-o,--output", matrix_out, "Matrix file")->required();

  fs::path pad_input;
  fs::path pad_store;
  fs::path pad_output;
  std::optional<std::uint64_t> pad_offset;
  auto add_pad_options = [&](CLI::App* cmd) {
    cmd->add_option("input", pad_input, "Input file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--pad", pad_store, "Pad store")->required()->check(CLI::ExistingFile);
    cmd->add_option("-o,--output", pad_output, "Output file")->required();
    cmd->add_option("--offset", pad_offset, "Pad bit offset (default: first unconsumed bit)");
  };
  auto* encrypt = app.add_subcommand("encrypt", "Vernam-encrypt a file with a pad store");
  add_pad_options(encrypt);
  auto* decrypt = app.add_subcommand("decrypt", "Vernam-decrypt a file with a pad store");
  add_pad_options(decrypt);

  auto* eve = app.add_subcommand("eve", "Same sky, independent noise: Alice/Eve bit agreement");
  auto* run = app.add_subcommand("run", "simulate, analyze, bin, likelihood, extract, fips");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? pl::kExitOk : pl::kExitValidation;
  }

  try {
    if (g.show_thresholds) {
      std::cout << cmbrbg::fips::thresholds_text();
      return pl::kExitOk;
    }
    const auto config = resolve_config(g);
    if (g.print_config) {
      std::cout << config.dump();
      return pl::kExitOk;
    }
    if (*simulate) return emit(pl::cmd_simulate(config));
    if (*analyze) return emit(pl::cmd_analyze(config));
    if (*bin) return emit(pl::cmd_bin(config));
    if (*likelihood) return emit(pl::cmd_likelihood(config, epoch));
    if (*extract) return emit(pl::cmd_extract(config, model_file));
    if (*fips) return emit(pl::cmd_fips(fips_input, fips_report));
    if (*reference) {
      if (!ref_bits && !ref_match) {
        std::cerr << "reference: one of --bits or --match is required\n";
        return pl::kExitValidation;
      }
      return emit(pl::cmd_reference(config.seed, ref_bits, ref_match, ref_out));
    }
    if (*keygen) return emit(pl::cmd_keygen(key_w, key_v, key_out, key_pad));
    if (*matrix) {
      if (matrix_key) return emit(pl::cmd_matrix_from_key(*matrix_key, matrix_n, matrix_out));
      if (matrix_stream) return emit(pl::cmd_matrix_from_stream(*matrix_stream, matrix_n, matrix_out));
      std::cerr << "matrix: one of --key or --stream is required\n";
      return pl::kExitValidation;
    }
    if (*encrypt) return emit(pl::cmd_encrypt(pad_input, pad_store, pad_output, pad_offset));
    if (*decrypt) return emit(pl::cmd_decrypt(pad_input, pad_store, pad_output, pad_offset));
    if (*eve) return emit(pl::cmd_eve(config));
    if (*run) return emit(pl::run_pipeline(config));
    std::cout << app.help();
    return pl::kExitValidation;
  } catch (const cmbrbg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pl::kExitValidation;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pl::kExitValidation;
  }
}
