#include "mincost/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mincost/errors.hpp"
#include "mincost/rng.hpp"

namespace mincost {

namespace {
constexpr std::uint64_t kNoiseStream = 0x6e6f697365ULL;    // fresh online noise
constexpr std::uint64_t kBatchStream = 0x62617463685fULL;  // batch index draws
constexpr std::uint64_t kShuffleStream = 0x73687566ULL;    // epoch permutations
constexpr std::uint64_t kOfflineStream = 0x6f66666cULL;    // fixed noisy copies
}  // namespace

void TrainConfig::validate() const {
  if (!(lr > 0)) throw Error("train: learning rate must be positive");
  if (lambda < 0) throw Error("train: lambda must be nonnegative");
  if (sigma < 0) throw Error("train: sigma must be nonnegative");
  if (T < 1) throw Error("train: need at least one step");
  if (batch_size < 1) throw Error("train: batch size must be positive");
  if (mode == TrainMode::Offline && M < 1)
    throw Error("train: offline mode needs M >= 1");
}

NoisyDataset gen_noisy(const CleanDataset& ds, int M, double sigma,
                       std::uint64_t seed) {
  ds.validate();
  if (M < 1) throw Error("gen_noisy: M must be >= 1");
  const int d = ds.d();
  NoisyDataset out;
  out.clean = ds;
  out.sigma = sigma;
  out.samples.resize(ds.n());
  for (int n = 0; n < ds.n(); ++n) {
    out.samples[n].reserve(M);
    for (int m = 0; m < M; ++m) {
      Vec y = ds.points[n];
      for (int i = 0; i < d; ++i)
        y[i] += sigma * CounterRng::normal_at(
                            seed, kOfflineStream ^ static_cast<std::uint64_t>(n),
                            static_cast<std::uint64_t>(m) * d + i);
      out.samples[n].push_back(std::move(y));
    }
  }
  if (d == 1) out.record_extremes();
  return out;
}

namespace {

struct AdamState {
  Vec m, v;
  long t = 0;
};

void apply_step(Vec& theta, const Vec& grad, double lr, const TrainConfig& cfg,
                AdamState& adam) {
  if (cfg.optimizer == Optimizer::SGD) {
    theta -= lr * grad;
    return;
  }
  ++adam.t;
  adam.m = cfg.adam_beta1 * adam.m + (1 - cfg.adam_beta1) * grad;
  adam.v = cfg.adam_beta2 * adam.v + (1 - cfg.adam_beta2) * grad.cwiseProduct(grad);
  const double bc1 = 1 - std::pow(cfg.adam_beta1, adam.t);
  const double bc2 = 1 - std::pow(cfg.adam_beta2, adam.t);
  theta.array() -= lr * (adam.m.array() / bc1) /
                   ((adam.v.array() / bc2).sqrt() + cfg.adam_eps);
}

double lr_at(const TrainConfig& cfg, long step) {
  if (cfg.schedule == LrSchedule::Constant) return cfg.lr;
  return cfg.lr * 0.5 * (1.0 + std::cos(M_PI * static_cast<double>(step) /
                                        static_cast<double>(cfg.T)));
}

void guard(double loss, double initial, const std::vector<TracePoint>& trace) {
  if (!std::isfinite(loss) || loss > 1e6 * initial) {
    std::ostringstream msg;
    msg << "training diverged: loss " << loss << " vs initial " << initial
        << " after " << trace.size() << " recorded steps";
    throw DivergedLoss(msg.str());
  }
}

}  // namespace

TrainResult train(const ShallowNet& net0, const CleanDataset& ds,
                  const TrainConfig& cfg) {
  cfg.validate();
  ds.validate();
  if (net0.d != ds.d()) throw DimensionMismatch("train: net/data dim mismatch");

  ShallowNet net = net0;
  Vec theta = net.flatten();
  AdamState adam{Vec::Zero(theta.size()), Vec::Zero(theta.size()), 0};

  TrainResult result;
  const int d = ds.d();
  double initial_loss = -1.0;

  auto record = [&](long step, double loss) {
    net.unflatten(theta);
    result.trace.push_back({step, loss, penalty(net), balanced_cost(net)});
  };

  if (cfg.mode == TrainMode::Online) {
    Batch batch;
    batch.inputs.resize(cfg.batch_size, Vec(d));
    batch.targets.resize(cfg.batch_size, Vec(d));
    for (long t = 0; t < cfg.T; ++t) {
      for (int j = 0; j < cfg.batch_size; ++j) {
        const std::uint64_t ctr = static_cast<std::uint64_t>(t) * cfg.batch_size + j;
        const int n = static_cast<int>(
            CounterRng::bits_at(cfg.seed, kBatchStream, ctr) % ds.n());
        batch.targets[j] = ds.points[n];
        Vec y = ds.points[n];
        for (int i = 0; i < d; ++i)
          y[i] += cfg.sigma *
                  CounterRng::normal_at(cfg.seed, kNoiseStream, ctr * d + i);
        batch.inputs[j] = std::move(y);
      }
      net.unflatten(theta);
      auto [loss, grad] = loss_and_grad(net, batch, cfg.lambda);
      if (initial_loss < 0) initial_loss = std::max(loss, 1e-300);
      guard(loss, initial_loss, result.trace);
      apply_step(theta, grad, lr_at(cfg, t), cfg, adam);
      record(t, loss);
    }
  } else {
    const NoisyDataset noisy = gen_noisy(ds, cfg.M, cfg.sigma, cfg.seed);
    // Fixed pool of (noisy, clean) pairs, revisited every epoch.
    std::vector<std::pair<int, int>> pairs;
    for (int n = 0; n < ds.n(); ++n)
      for (int m = 0; m < cfg.M; ++m) pairs.emplace_back(n, m);
    std::vector<int> order(pairs.size());
    std::iota(order.begin(), order.end(), 0);

    Batch batch;
    for (long epoch = 0; epoch < cfg.T; ++epoch) {
      CounterRng shuffle_rng(cfg.seed,
                             kShuffleStream ^ static_cast<std::uint64_t>(epoch));
      for (size_t i = order.size() - 1; i > 0; --i)
        std::swap(order[i], order[shuffle_rng.below(i + 1)]);

      double epoch_loss = 0.0;
      long nbatches = 0;
      for (size_t start = 0; start < order.size(); start += cfg.batch_size) {
        const size_t stop = std::min(order.size(), start + cfg.batch_size);
        batch.inputs.clear();
        batch.targets.clear();
        for (size_t i = start; i < stop; ++i) {
          const auto [n, m] = pairs[order[i]];
          batch.inputs.push_back(noisy.samples[n][m]);
          batch.targets.push_back(ds.points[n]);
        }
        net.unflatten(theta);
        auto [loss, grad] = loss_and_grad(net, batch, cfg.lambda);
        if (initial_loss < 0) initial_loss = std::max(loss, 1e-300);
        guard(loss, initial_loss, result.trace);
        apply_step(theta, grad, lr_at(cfg, epoch), cfg, adam);
        epoch_loss += loss;
        ++nbatches;
      }
      record(epoch, epoch_loss / nbatches);
    }
  }

  net.unflatten(theta);
  result.net = std::move(net);
  return result;
}

std::string trace_to_csv(const std::vector<TracePoint>& trace) {
  std::string out = "step,loss,penalty,balanced_cost\n";
  for (const auto& p : trace) {
    out += std::to_string(p.step);
    out += ',';
    out += format_real(p.loss);
    out += ',';
    out += format_real(p.penalty);
    out += ',';
    out += format_real(p.balanced_cost);
    out += '\n';
  }
  return out;
}

}  // namespace mincost
