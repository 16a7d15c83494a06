#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mincost/closed_form.hpp"
#include "mincost/dataset.hpp"

namespace mincost {

// One-hidden-layer ReLU network with optional linear skip:
// f(y) = sum_k a_k [w_k^T y + b_k]_+ + V y + c.
struct ShallowNet {
  int d = 0;
  int K = 0;
  bool use_skip = true;
  std::vector<Vec> a;  // outer weights, R^d each
  std::vector<Vec> w;  // inner weights, R^d each
  std::vector<double> b;
  Mat V;
  Vec c;

  Vec forward(const Vec& y) const;

  // Flat parameter layout: a's, then w's, b's, V row-major, c.
  int num_params() const;
  Vec flatten() const;
  void unflatten(const Vec& theta);
};

ShallowNet make_net(int d, int K, bool use_skip);

// 1/2 sum_k (|a_k|^2 + |w_k|^2); biases and skip are unpenalized.
double penalty(const ShallowNet& net);

// sum_k |a_k| * |w_k|, skipping dead units.
double balanced_cost(const ShallowNet& net);

struct Batch {
  std::vector<Vec> inputs;   // y
  std::vector<Vec> targets;  // x
};

// Mean squared error over the batch plus lambda * penalty, with the full
// analytic gradient in the flat layout. ReLU subgradient at 0 is 0.
std::pair<double, Vec> loss_and_grad(const ShallowNet& net, const Batch& batch,
                                     double lambda);

struct ExtractedUnit {
  Vec normal;       // w_k / |w_k|
  double offset;    // -b_k / |w_k|; boundary is {y : normal^T y = offset}
  double strength;  // |a_k| * |w_k|
  Vec outer_dir;    // a_k / |a_k|
};

// Units with strength >= significance * total strength; significance in [0,1).
std::vector<ExtractedUnit> extract_units(const ShallowNet& net, double significance);

// Exact network realizations of the closed forms: forward == eval.
ShallowNet from_closed_form(const PiecewiseLinear1D& f);
ShallowNet from_closed_form(const RankOneSumDenoiser& f);

// Random init: w uniform on the sphere, b uniform in [-r, r], a normal
// scaled by 1/sqrt(K), V = I when skipping, c = 0.
ShallowNet init_net(int d, int K, bool use_skip, double data_radius,
                    std::uint64_t seed);

// JSON text weight file with {d, K, use_skip} header; bit-exact round trip.
std::string serialize(const ShallowNet& net);
ShallowNet parse_net(const std::string& text);

}  // namespace mincost
