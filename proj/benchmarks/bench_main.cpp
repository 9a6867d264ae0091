#include <benchmark/benchmark.h>

#include "medianlab/coarse/certificate.hpp"
#include "medianlab/coarse/coarse.hpp"
#include "medianlab/coarse/quasigeodesic.hpp"
#include "medianlab/constructions/catalog.hpp"
#include "medianlab/hyperbolic/barycentre.hpp"
#include "medianlab/hyperbolic/triangle_center.hpp"

using namespace medianlab;

namespace {

void BM_BuildGrid(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(make_space("grid:" + std::to_string(k) + ":" + std::to_string(k)));
  state.SetComplexityN(static_cast<std::int64_t>(k * k));
}
BENCHMARK(BM_BuildGrid)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_TreeMedianTable(benchmark::State& state) {
  const auto b = make_space("random:" + std::to_string(state.range(0)) + ":1");
  for (auto _ : state) benchmark::DoNotOptimize(tree_median(b.space));
}
BENCHMARK(BM_TreeMedianTable)->Arg(32)->Arg(64)->Arg(128);

void BM_MedianGraphMedian(benchmark::State& state) {
  const auto k = std::to_string(state.range(0));
  const auto b = make_space("grid:" + k + ":" + k);
  for (auto _ : state) benchmark::DoNotOptimize(median_graph_median(b.space));
}
BENCHMARK(BM_MedianGraphMedian)->Arg(4)->Arg(6)->Arg(8);

void BM_TriangleCenterTable(benchmark::State& state) {
  const auto b = make_space("cycle:" + std::to_string(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(triangle_center_median(b.space));
}
BENCHMARK(BM_TriangleCenterTable)->Arg(16)->Arg(32)->Arg(64);

void BM_Certify(benchmark::State& state) {
  const auto b = make_space("random:" + std::to_string(state.range(0)) + ":2");
  const auto op = tree_median(b.space);
  for (auto _ : state) benchmark::DoNotOptimize(certify(op));
}
BENCHMARK(BM_Certify)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_ClosenessExhaustive(benchmark::State& state) {
  const auto b = make_space("trivalent:" + std::to_string(state.range(0)));
  const auto mu = tree_median(b.space);
  const auto nu = triangle_center_median(b.space);
  for (auto _ : state) benchmark::DoNotOptimize(closeness(mu, nu));
}
BENCHMARK(BM_ClosenessExhaustive)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_IntervalChains(benchmark::State& state) {
  const auto b = make_space("grid:6:6");
  const auto op = median_graph_median(b.space);
  const auto cert = certify(op);
  for (auto _ : state)
    for (Vertex y = 1; y < 36; ++y) benchmark::DoNotOptimize(extract_quasigeodesic(op, cert, 0, y));
}
BENCHMARK(BM_IntervalChains);

void BM_ShearedMedian(benchmark::State& state) {
  const auto b = make_space("band:" + std::to_string(state.range(0)));
  const auto op = make_operator("sheared", b);
  const auto n = static_cast<Vertex>(b.space->size());
  Vertex x = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(op(x % n, (x * 7 + 3) % n, (x * 13 + 5) % n));
    ++x;
  }
}
BENCHMARK(BM_ShearedMedian)->Arg(8)->Arg(32);

void BM_BarycentreSweep(benchmark::State& state) {
  const auto k = state.range(0);
  const auto b = make_space("relhyp:" + std::to_string(k) + ":" + std::to_string(2 * k));
  BarycentreClassifier cl(b.space, b.peripherals);
  cl.set_delta(default_barycentre_delta(*b.space, b.peripherals));
  for (auto _ : state) benchmark::DoNotOptimize(cl.sweep());
}
BENCHMARK(BM_BarycentreSweep)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
