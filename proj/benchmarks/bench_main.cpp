#include <benchmark/benchmark.h>

#include <cmath>

#include "mincost/closed_form.hpp"
#include "mincost/gauss_moments.hpp"
#include "mincost/network.hpp"
#include "mincost/rng.hpp"

using namespace mincost;

namespace {

ShallowNet bench_net(int d, int K) {
  ShallowNet net = make_net(d, K, true);
  CounterRng rng(1, 0xbe);
  for (int k = 0; k < K; ++k) {
    for (int i = 0; i < d; ++i) {
      net.a[k][i] = rng.normal();
      net.w[k][i] = rng.normal();
    }
    net.b[k] = rng.normal();
  }
  return net;
}

Batch bench_batch(int d, int B) {
  Batch batch;
  CounterRng rng(2, 0xbb);
  for (int m = 0; m < B; ++m) {
    Vec y(d), x(d);
    for (int i = 0; i < d; ++i) {
      y[i] = rng.normal();
      x[i] = rng.normal();
    }
    batch.inputs.push_back(y);
    batch.targets.push_back(x);
  }
  return batch;
}

void BM_relu_gauss_mean(benchmark::State& state) {
  double mu = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(relu_gauss_mean(mu, 1.3));
    mu += 1e-9;
  }
}
BENCHMARK(BM_relu_gauss_mean);

void BM_relu_gauss_cross(benchmark::State& state) {
  BivariateGaussian b{0.3, -0.2, 1.5, 0.4, 0.8};
  for (auto _ : state) {
    benchmark::DoNotOptimize(relu_gauss_cross(b));
    b.mu1 += 1e-9;
  }
}
BENCHMARK(BM_relu_gauss_cross);

void BM_bvn_tail(benchmark::State& state) {
  BivariateGaussian b{0, 0, 1, -0.5, 1};
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bvn_tail(b, t, 0.1));
    t += 1e-9;
  }
}
BENCHMARK(BM_bvn_tail);

void BM_loss_and_grad(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int K = static_cast<int>(state.range(1));
  const ShallowNet net = bench_net(d, K);
  const Batch batch = bench_batch(d, 512);
  for (auto _ : state)
    benchmark::DoNotOptimize(loss_and_grad(net, batch, 1e-5));
  state.SetItemsProcessed(state.iterations() * 512);
}
BENCHMARK(BM_loss_and_grad)->Args({1, 200})->Args({2, 100})->Args({8, 64});

void BM_denoiser_eval(benchmark::State& state) {
  CleanDataset ds;
  Vec a(2), b(2), c(2);
  a << 0, 0;
  b << 2, 0;
  c << -1.5, 1.2;
  ds.points = {a, b, c};
  const RankOneSumDenoiser f = build_obtuse_simplex(ds, 0, 0.2);
  Vec y(2);
  y << 0.4, 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.eval(y));
    y[0] += 1e-9;
  }
}
BENCHMARK(BM_denoiser_eval);

}  // namespace

BENCHMARK_MAIN();
