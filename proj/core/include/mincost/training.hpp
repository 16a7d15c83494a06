#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mincost/dataset.hpp"
#include "mincost/network.hpp"

namespace mincost {

enum class TrainMode { Online, Offline };
enum class Optimizer { SGD, Adam };
enum class LrSchedule { Constant, CosineToZero };

struct TrainConfig {
  TrainMode mode = TrainMode::Online;
  int M = 0;  // noisy copies per point (Offline)
  long T = 1000;  // steps (Online) or epochs (Offline)
  int batch_size = 32;
  double lr = 1e-3;
  double lambda = 0.0;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  Optimizer optimizer = Optimizer::Adam;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  LrSchedule schedule = LrSchedule::Constant;

  void validate() const;
};

struct TracePoint {
  long step = 0;
  double loss = 0.0;
  double penalty = 0.0;
  double balanced_cost = 0.0;
};

struct TrainResult {
  ShallowNet net;
  std::vector<TracePoint> trace;
};

// y_{n,m} = x_n + sigma * g, with g keyed by (seed, n, m); extremes
// recorded for univariate data.
NoisyDataset gen_noisy(const CleanDataset& ds, int M, double sigma,
                       std::uint64_t seed);

TrainResult train(const ShallowNet& net0, const CleanDataset& ds,
                  const TrainConfig& cfg);

// CSV `step,loss,penalty,balanced_cost`, reals at 17 significant digits.
std::string trace_to_csv(const std::vector<TracePoint>& trace);

}  // namespace mincost
