// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "cmbrbg/config.hpp"
#include "cmbrbg/entropy.hpp"
#include "cmbrbg/fips.hpp"
#include "cmbrbg/harmonics.hpp"
#include "cmbrbg/likelihood.hpp"
#include "cmbrbg/pipeline.hpp"
#include "cmbrbg/skysim.hpp"
#include "cmbrbg/vernam.hpp"

namespace cmbrbg {
namespace {

void BM_Synthesize(benchmark::State& state) {
  const int lmax = static_cast<int>(state.range(0));
  const int threads = static_cast<int>(state.range(1));
  const GaussLegendreGrid grid(lmax);
  const auto alm = synthesize_alm(fiducial_spectrum({}, lmax), 1);
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_map(alm, grid, threads));
}
BENCHMARK(BM_Synthesize)->ArgsProduct({{32, 64, 128}, {1, 4}})->UseRealTime()->Unit(benchmark::kMicrosecond);

void BM_Analyze(benchmark::State& state) {
  const int lmax = static_cast<int>(state.range(0));
  const int threads = static_cast<int>(state.range(1));
  const GaussLegendreGrid grid(lmax);
  const auto map = synthesize_map(synthesize_alm(fiducial_spectrum({}, lmax), 1), grid);
  for (auto _ : state) benchmark::DoNotOptimize(analyze_map(map, lmax, threads));
}
BENCHMARK(BM_Analyze)->ArgsProduct({{32, 64, 128}, {1, 4}})->UseRealTime()->Unit(benchmark::kMicrosecond);

void BM_CrossSpectra(benchmark::State& state) {
  const int lmax = 32;
  std::vector<HarmonicCoeffs> alms;
  for (std::uint64_t d = 0; d < static_cast<std::uint64_t>(state.range(0)); ++d) {
    alms.push_back(synthesize_alm(fiducial_spectrum({}, lmax), d));
  }
  for (auto _ : state) benchmark::DoNotOptimize(cross_spectrum_set(alms));
}
BENCHMARK(BM_CrossSpectra)->Arg(2)->Arg(4)->Arg(8);

void BM_Kullback(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto chat = CovMatrix::identity(n);
  auto c = CovMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    chat(i, i) = 2.0 + static_cast<double>(i);
    for (std::size_t j = 0; j < n; ++j) c(i, j) += 0.5;
  }
  for (auto _ : state) benchmark::DoNotOptimize(kullback(chat, c));
}
BENCHMARK(BM_Kullback)->Arg(1)->Arg(4)->Arg(8);

void BM_HarvestObserver(benchmark::State& state) {
  RunConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(pipeline::harvest_observer(cfg, "alice", 20000));
}
BENCHMARK(BM_HarvestObserver)->Unit(benchmark::kMillisecond);

void BM_Fips(benchmark::State& state) {
  const auto bits = reference_stream(1, fips::kSampleBits);
  for (auto _ : state) benchmark::DoNotOptimize(fips::run_all(bits));
}
BENCHMARK(BM_Fips)->Unit(benchmark::kMicrosecond);

void BM_KeyMatrix(benchmark::State& state) {
  const auto s = key_sum("AB");
  for (auto _ : state) benchmark::DoNotOptimize(generate_key_matrix(s, 16));
}
BENCHMARK(BM_KeyMatrix);

void BM_Vernam(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto pad = reference_stream(2, 8 * n);
  const std::vector<std::uint8_t> msg(n, 0x5A);
  for (auto _ : state) {
    PadLedger ledger{"bench", pad.size(), 0};
    benchmark::DoNotOptimize(vernam_encrypt(msg, pad, ledger));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_Vernam)->Arg(1 << 10)->Arg(1 << 16);

}  // namespace
}  // namespace cmbrbg

BENCHMARK_MAIN();
