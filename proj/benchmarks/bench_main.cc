#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "primeshape/awgn_mi.h"
#include "primeshape/ccdm.h"
#include "primeshape/constellation.h"
#include "primeshape/optimizer.h"
#include "primeshape/pas.h"
#include "primeshape/shaping.h"
#include "primeshape/sum_dist.h"

namespace ps = primeshape;

namespace {

void BM_MiReal(benchmark::State& state) {
  const ps::Prime p(static_cast<std::uint32_t>(state.range(0)));
  const auto c = ps::build_ask(p).with_priors(ps::mb_ask_prior(p, 0.05).probs);
  for (auto _ : state) benchmark::DoNotOptimize(ps::mi_real(c, {30.0, ps::Dimension::kReal}));
}
BENCHMARK(BM_MiReal)->Arg(7)->Arg(13);

void BM_MiComplexCqam(benchmark::State& state) {
  const ps::Prime p(static_cast<std::uint32_t>(state.range(0)));
  const auto base = ps::build_cqam(p);
  const auto c = base.with_priors(ps::cqam_prior(ps::mb_prior(base.shells()->radii, 0.1), p));
  for (auto _ : state) benchmark::DoNotOptimize(ps::mi_complex_cqam(c, {30.0, ps::Dimension::kComplex}));
}
BENCHMARK(BM_MiComplexCqam)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_BuildCqam(benchmark::State& state) {
  const ps::Prime p(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ps::build_cqam(p));
}
BENCHMARK(BM_BuildCqam)->Arg(7)->Arg(13)->Unit(benchmark::kMillisecond);

void BM_CcdmEncode(benchmark::State& state) {
  const ps::Prime p(7);
  const auto plan = ps::make_composition(ps::mb_ask_prior(p, 0.1).probs, static_cast<std::size_t>(state.range(0)));
  const std::size_t k = ps::ccdm_input_length(plan, p);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint32_t> d(0, 6);
  std::vector<std::uint32_t> u(k);
  for (auto& v : u) v = d(rng);
  for (auto _ : state) benchmark::DoNotOptimize(ps::ccdm_encode(plan, p, u));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CcdmEncode)->Arg(64)->Arg(1024);

void BM_SumDistDft(benchmark::State& state) {
  const ps::Prime p(13);
  std::mt19937_64 rng(3);
  std::vector<ps::SymbolDistribution> f;
  for (int l = 0; l < state.range(0); ++l) {
    std::vector<double> v(13);
    double s = 0.0;
    for (auto& x : v) s += (x = std::uniform_real_distribution<double>(0.0, 1.0)(rng));
    for (auto& x : v) x /= s;
    f.emplace_back(p, v);
  }
  for (auto _ : state) benchmark::DoNotOptimize(ps::sum_distribution_dft(f));
}
BENCHMARK(BM_SumDistDft)->Arg(6)->Arg(64);

void BM_TimeSharingRow(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ps::optimize_time_sharing(ps::Prime(13), {4, 5}));
}
BENCHMARK(BM_TimeSharingRow)->Unit(benchmark::kMillisecond);

void BM_PasFrames(benchmark::State& state) {
  const ps::Prime p(7);
  const auto base = ps::build_cqam(p);
  const auto c = base.with_priors(ps::cqam_prior(ps::mb_prior(base.shells()->radii, 0.1), p));
  const auto code = ps::CodeSpec::random_dense(p, 102, 68, 1);
  ps::PasRunConfig cfg;
  cfg.frames = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(ps::generate_frames(code, c, cfg));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_PasFrames)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
