#include <benchmark/benchmark.h>

#include "snnrl/clustering.hpp"

using namespace snnrl;

namespace {

ClusterLayerParams params() {
  ClusterLayerParams p;
  p.eta = {1e-3, 1.0, 1};
  p.eta_th = 1e-2;
  p.theta_open = {1e-3, 1.0, 1};
  p.eta_td = 1e-1;
  p.tau_trace = 10.0;
  return p;
}

void BM_ForwardFullyConnected(benchmark::State& state) {
  Rng rng(1);
  auto layer = ClusterLayer::fully_connected(params(), 4, state.range(0), 0.1, rng);
  LayerActivation act;
  Rng stream(2);
  double ctx[4];
  for (auto _ : state) {
    for (auto& x : ctx) x = stream.uniform();
    layer.forward(ctx, true, true, act);
    benchmark::DoNotOptimize(act.winners[0]);
  }
}
BENCHMARK(BM_ForwardFullyConnected)->Arg(20)->Arg(100);

void BM_ForwardTwoLayer(benchmark::State& state) {
  Rng rng(1);
  auto layer1 = ClusterLayer::per_dimension(params(), 6, 20, 0.1, rng);
  auto layer2 = ClusterLayer::fully_connected(params(), 120, 20, 2.0, rng);
  LayerActivation act1, act2;
  Rng stream(2);
  double ctx[6];
  for (auto _ : state) {
    for (auto& x : ctx) x = stream.uniform();
    layer1.forward(ctx, true, true, act1);
    layer2.forward(act1.one_hot, true, true, act2);
    benchmark::DoNotOptimize(act2.winners[0]);
  }
}
BENCHMARK(BM_ForwardTwoLayer);

void BM_ModulateTd(benchmark::State& state) {
  Rng rng(1);
  auto layer = ClusterLayer::fully_connected(params(), 4, 100, 0.5, rng);
  LayerActivation act;
  Rng stream(2);
  double ctx[4];
  for (auto& x : ctx) x = stream.uniform();
  layer.forward(ctx, true, true, act);
  for (auto _ : state) {
    layer.modulate_td(0.3);
    benchmark::DoNotOptimize(layer.groups()[0].neurons[0].threshold);
  }
}
BENCHMARK(BM_ModulateTd);

}  // namespace
