#include <benchmark/benchmark.h>

#include <random>

#include "gwregion/dsbs.hpp"
#include "gwregion/gaussian.hpp"
#include "gwregion/info.hpp"
#include "gwregion/oracle.hpp"
#include "gwregion/ot.hpp"

using namespace gwregion;

static void BM_BinaryEntropyInv(benchmark::State& state) {
  double y = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(info::binary_entropy_inv(y));
    y = y >= 1.0 ? 0.001 : y + 0.001;
  }
}
BENCHMARK(BM_BinaryEntropyInv);

static void BM_UpsilonStar(benchmark::State& state) {
  const dsbs::DsbsSource src(0.05);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(dsbs::upsilon_star(src, u(rng), u(rng)));
}
BENCHMARK(BM_UpsilonStar);

static void BM_LowerEnvelope(benchmark::State& state) {
  const dsbs::DsbsSource src(0.05);
  for (auto _ : state) benchmark::DoNotOptimize(dsbs::lower_envelope_dsbs(src, 0.5, 0.3));
}
BENCHMARK(BM_LowerEnvelope);

static void BM_UpsilonGStar(benchmark::State& state) {
  const gaussian::GaussianSource src(0.9);
  for (auto _ : state) benchmark::DoNotOptimize(gaussian::upsilon_g_star(src, 0.5, 0.5));
}
BENCHMARK(BM_UpsilonGStar);

static void BM_MutualInformations(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto pxy = info::Joint2x2::dsbs(0.05);
  const auto ch = oracle::random_aux_channel(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(info::mutual_informations(pxy, ch, info::LogBase::bits));
  }
}
BENCHMARK(BM_MutualInformations);

static void BM_ConvPhiLower(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ot::conv_phi_lower(0.05, 0.6, 0.3).value);
}
BENCHMARK(BM_ConvPhiLower);

static void BM_HyperSupPsi(benchmark::State& state) {
  const gaussian::GaussianSource src(0.6);
  for (auto _ : state) benchmark::DoNotOptimize(gaussian::hyper_sup_psi(src, 1.0, 0.5));
}
BENCHMARK(BM_HyperSupPsi);

// one brute-force restart
static void BM_BruteForceRestart(benchmark::State& state) {
  const dsbs::DsbsSource src(0.05);
  oracle::OracleConfig cfg;
  cfg.restarts = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::brute_force_lower(src, 0.5, 0.5, cfg).achieved.gamma);
  }
}
BENCHMARK(BM_BruteForceRestart)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
