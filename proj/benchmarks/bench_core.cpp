#include <benchmark/benchmark.h>

#include <random>

#include "fixtures.hpp"
#include "regrkit/arff.hpp"
#include "regrkit/cfs.hpp"
#include "regrkit/ingest.hpp"
#include "regrkit/linreg.hpp"
#include "regrkit/smoreg.hpp"

namespace {

using namespace regrkit;
using namespace regrkit::testing;

void BM_IngestWebTraffic(benchmark::State& state) {
  const auto text = read_text(web_traffic_path());
  for (auto _ : state) benchmark::DoNotOptimize(ingest_csv(text, {kMonth}));
}
BENCHMARK(BM_IngestWebTraffic);

void BM_ArffRoundTrip(benchmark::State& state) {
  const auto& d = web_traffic();
  for (auto _ : state) benchmark::DoNotOptimize(parse_arff(write_arff(d, "web_traffic")));
}
BENCHMARK(BM_ArffRoundTrip);

void BM_CorrelationMatrix(benchmark::State& state) {
  const auto& d = web_traffic();
  for (auto _ : state) benchmark::DoNotOptimize(correlation_matrix(d));
}
BENCHMARK(BM_CorrelationMatrix);

void BM_FitOls(benchmark::State& state) {
  const auto& d = web_traffic();
  const auto attrs = all_inputs();
  for (auto _ : state) benchmark::DoNotOptimize(fit_ols(d, kPV, attrs));
}
BENCHMARK(BM_FitOls);

void BM_ExhaustiveAic(benchmark::State& state) {
  const auto& d = web_traffic();
  const auto attrs = all_inputs();
  for (auto _ : state) benchmark::DoNotOptimize(select_attributes_aic(d, kPV, attrs, Selection::exhaustive));
}
BENCHMARK(BM_ExhaustiveAic);

void BM_SmoregNormalized(benchmark::State& state) {
  const auto& d = web_traffic();
  const auto attrs = all_inputs();
  for (auto _ : state) benchmark::DoNotOptimize(fit_smoreg(d, kPV, attrs, FilterKind::normalize));
}
BENCHMARK(BM_SmoregNormalized);

void BM_SmoregRaw(benchmark::State& state) {
  const auto& d = web_traffic();
  const auto attrs = all_inputs();
  for (auto _ : state) benchmark::DoNotOptimize(fit_smoreg(d, kPV, attrs, FilterKind::none));
}
BENCHMARK(BM_SmoregRaw)->Unit(benchmark::kMillisecond);

void BM_SmoRandom(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<std::vector<double>> x(n, std::vector<double>(8));
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (double& v : x[i]) v = g(rng);
    y[i] = x[i][0] - 0.5 * x[i][3] + 0.1 * g(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(solve_svr_dual(x, y, {}));
}
BENCHMARK(BM_SmoRandom)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_CfsSelect(benchmark::State& state) {
  const auto& d = web_traffic();
  for (auto _ : state) benchmark::DoNotOptimize(cfs_select(d, kPV));
}
BENCHMARK(BM_CfsSelect);

}  // namespace

BENCHMARK_MAIN();
