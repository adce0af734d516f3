#include <benchmark/benchmark.h>

#include "cli/catalog.hpp"
#include "cli/model_file.hpp"
#include "stromcheck/courant.hpp"
#include "stromcheck/hesolver.hpp"
#include "stromcheck/strominger.hpp"

namespace {

using namespace stromcheck;

cli::LoadedModel sl2c() { return cli::load_model(cli::catalog_export("sl2c"), "catalog:sl2c"); }

void BM_CheckSystemSl2c(benchmark::State& state) {
  const cli::LoadedModel model = sl2c();
  for (auto _ : state) benchmark::DoNotOptimize(check_system(*model.strominger));
}
BENCHMARK(BM_CheckSystemSl2c)->Unit(benchmark::kMillisecond);

void BM_LoadModel(benchmark::State& state) {
  const std::string text = cli::catalog_export("sl2c");
  for (auto _ : state) benchmark::DoNotOptimize(cli::load_model(text));
}
BENCHMARK(BM_LoadModel)->Unit(benchmark::kMicrosecond);

void BM_LeibnizScanSl2c(benchmark::State& state) {
  const cli::LoadedModel model = sl2c();
  const StromingerModel& m = *model.strominger;
  const Connection theta = direct_sum(m.nabla(), m.a());
  const Form h = dc(m.h().alg(), m.h().j(), kahler_form(m.h())).real_part();
  const CourantData data(m.h().alg(), h, theta, combined_pairing(m, 1.0));  // alpha = t^2/4 = 1 at t = 2
  for (auto _ : state) benchmark::DoNotOptimize(leibniz_scan(data));
}
BENCHMARK(BM_LeibnizScanSl2c)->Unit(benchmark::kMillisecond);

void BM_SolveHe(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GridField source = band_limited(n, {{1, 0, 1.0, 0.0}, {2, 3, 0.5, -0.25}, {0, 5, 0.0, 0.75}}, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_he(source));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveHe)->RangeMultiplier(2)->Range(32, 512)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
