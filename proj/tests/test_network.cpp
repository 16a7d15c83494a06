#include <cmath>

#include "doctest.h"
#include "mincost/network.hpp"
#include "mincost/rng.hpp"

using namespace mincost;

namespace {
ShallowNet random_net(int d, int K, bool use_skip, std::uint64_t seed) {
  ShallowNet net = make_net(d, K, use_skip);
  CounterRng rng(seed, 0x7e57);
  for (int k = 0; k < K; ++k) {
    for (int i = 0; i < d; ++i) {
      net.a[k][i] = rng.normal();
      net.w[k][i] = rng.normal();
    }
    net.b[k] = rng.normal();
  }
  if (use_skip) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) net.V(i, j) = 0.3 * rng.normal();
      net.c[i] = rng.normal();
    }
  }
  return net;
}
Batch random_batch(int d, int B, std::uint64_t seed) {
  Batch batch;
  CounterRng rng(seed, 0xba7c);
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
// Naive reference forward pass, written independently of the library code.
Vec naive_forward(const ShallowNet& net, const Vec& y) {
  Vec out = Vec::Zero(net.d);
  for (int k = 0; k < net.K; ++k) {
    double pre = net.b[k];
    for (int i = 0; i < net.d; ++i) pre += net.w[k][i] * y[i];
    if (pre > 0) out += pre * net.a[k];
  }
  if (net.use_skip) out += net.V * y + net.c;
  return out;
}
}  // namespace

TEST_CASE("forward matches a naive reference implementation") {
  for (bool skip : {false, true}) {
    const ShallowNet net = random_net(3, 8, skip, 4);
    CounterRng rng(9, 1);
    for (int t = 0; t < 50; ++t) {
      Vec y(3);
      for (int i = 0; i < 3; ++i) y[i] = 2.0 * rng.normal();
      CHECK((net.forward(y) - naive_forward(net, y)).norm() <= 1e-13);
    }
  }
}

TEST_CASE("parameter count and flatten round trip") {
  for (bool skip : {false, true}) {
    ShallowNet net = random_net(4, 5, skip, 8);
    const int expect = 2 * 5 * 4 + 5 + (skip ? 4 * 4 + 4 : 0);
    CHECK(net.num_params() == expect);
    const Vec theta = net.flatten();
    REQUIRE(theta.size() == expect);
    ShallowNet net2 = make_net(4, 5, skip);
    net2.unflatten(theta);
    CHECK((net2.flatten() - theta).norm() == 0.0);
    Vec y(4);
    y << 0.3, -1.0, 0.5, 2.0;
    CHECK((net2.forward(y) - net.forward(y)).norm() == 0.0);
  }
}

TEST_CASE("penalty and balanced cost examples") {
  ShallowNet net = make_net(2, 1, false);
  net.a[0] << 3, 4;
  net.w[0] << 0, 1;
  net.b[0] = 0.5;
  CHECK(penalty(net) == doctest::Approx(13.0));      // (25 + 1) / 2
  CHECK(balanced_cost(net) == doctest::Approx(5.0));  // 5 * 1
  // Dead unit contributes nothing to the balanced cost.
  ShallowNet dead = make_net(2, 2, false);
  dead.a[0] << 3, 4;
  dead.w[0] << 0, 1;
  CHECK(balanced_cost(dead) == doctest::Approx(5.0));
  // AM-GM: penalty >= balanced cost for any weights.
  const ShallowNet rnd = random_net(3, 6, false, 12);
  CHECK(penalty(rnd) >= balanced_cost(rnd) - 1e-12);
}

TEST_CASE("gradient matches central finite differences") {
  for (int d : {1, 2, 8}) {
    for (int K : {1, 4, 32}) {
      for (bool skip : {false, true}) {
        ShallowNet net = random_net(d, K, skip, 100 + d * 10 + K);
        const Batch batch = random_batch(d, 16, 55 + d + K);
        const double lambda = 0.01;
        auto [loss, grad] = loss_and_grad(net, batch, lambda);
        CHECK(std::isfinite(loss));
        Vec theta = net.flatten();
        CounterRng pick(17 + d + K, 2);
        for (int t = 0; t < 20; ++t) {
          const int i =
              static_cast<int>(pick.below(static_cast<std::uint64_t>(theta.size())));
          const double h = 1e-6 * (1.0 + std::abs(theta[i]));
          Vec tp = theta, tm = theta;
          tp[i] += h;
          tm[i] -= h;
          ShallowNet np = net, nm = net;
          np.unflatten(tp);
          nm.unflatten(tm);
          const double fd = (loss_and_grad(np, batch, lambda).first -
                             loss_and_grad(nm, batch, lambda).first) /
                            (2 * h);
          const double scale = std::max({1e-6, std::abs(fd), std::abs(grad[i])});
          CHECK(std::abs(grad[i] - fd) / scale <= 1e-4);
        }
      }
    }
  }
}

TEST_CASE("loss at zero lambda is the mean squared error") {
  const ShallowNet net = random_net(2, 4, true, 21);
  const Batch batch = random_batch(2, 8, 33);
  double mse = 0;
  for (size_t m = 0; m < batch.inputs.size(); ++m)
    mse += (net.forward(batch.inputs[m]) - batch.targets[m]).squaredNorm();
  mse /= static_cast<double>(batch.inputs.size());
  CHECK(loss_and_grad(net, batch, 0.0).first == doctest::Approx(mse).epsilon(1e-13));
  CHECK(loss_and_grad(net, batch, 0.5).first ==
        doctest::Approx(mse + 0.5 * penalty(net)).epsilon(1e-13));
}

TEST_CASE("relu part is positively homogeneous in the input offsetting") {
  // Scaling a_k by t and w_k, b_k by 1/t leaves the function unchanged.
  ShallowNet net = random_net(3, 5, false, 44);
  ShallowNet scaled = net;
  const double t = 3.7;
  for (int k = 0; k < net.K; ++k) {
    scaled.a[k] *= t;
    scaled.w[k] /= t;
    scaled.b[k] /= t;
  }
  CounterRng rng(5, 5);
  for (int s = 0; s < 30; ++s) {
    Vec y(3);
    for (int i = 0; i < 3; ++i) y[i] = 2 * rng.normal();
    CHECK((net.forward(y) - scaled.forward(y)).norm() <= 1e-10);
  }
  CHECK(balanced_cost(net) == doctest::Approx(balanced_cost(scaled)));
}

TEST_CASE("closed forms export to exact networks") {
  // Univariate two-point interpolant.
  NoisyDataset nd;
  nd.clean.points = {Vec::Zero(1), Vec::Constant(1, 1.0)};
  nd.eps_min = {-0.1, -0.1};
  nd.eps_max = {0.1, 0.1};
  nd.samples.resize(2);
  const PiecewiseLinear1D f1 = build_1d(nd);
  const ShallowNet n1 = from_closed_form(f1);
  CHECK(n1.K == 2);  // 2N - 2 units for N = 2
  for (double y = -3.0; y <= 4.0; y += 0.01)
    CHECK(std::abs(n1.forward(Vec::Constant(1, y))[0] - f1.eval(y)) <= 1e-10);
  CHECK(balanced_cost(n1) == doctest::Approx(representation_cost(f1)).epsilon(1e-10));

  // Planar obtuse simplex.
  CleanDataset ds;
  for (auto [a, b] : {std::pair{0.0, 0.0}, {2.0, 0.0}, {-1.0, 2.0}}) {
    Vec v(2);
    v << a, b;
    ds.points.push_back(v);
  }
  const RankOneSumDenoiser f2 = build_obtuse_simplex(ds, 0, 0.2);
  const ShallowNet n2 = from_closed_form(f2);
  CounterRng rng(2, 8);
  for (int t = 0; t < 200; ++t) {
    Vec y(2);
    y << 6 * rng.normal(), 6 * rng.normal();
    CHECK((n2.forward(y) - f2.eval(y)).norm() <= 1e-10);
  }
  CHECK(balanced_cost(n2) ==
        doctest::Approx(representation_cost(f2)).epsilon(1e-10));

  // Extracted units reproduce the construction's boundary directions.
  const auto units = extract_units(n2, 0.0);
  CHECK(units.size() == static_cast<size_t>(n2.K));
}

TEST_CASE("four point univariate interpolant needs six units") {
  NoisyDataset nd;
  for (int n = 0; n < 4; ++n)
    nd.clean.points.push_back(Vec::Constant(1, -5.0 + 10.0 * n / 3.0));
  nd.eps_min.assign(4, -0.4);
  nd.eps_max.assign(4, 0.4);
  nd.samples.resize(4);
  const ShallowNet net = from_closed_form(build_1d(nd));
  CHECK(net.K == 6);
}

TEST_CASE("extract units filters by significance") {
  ShallowNet net = make_net(2, 3, false);
  net.a[0] << 10, 0;
  net.w[0] << 1, 0;
  net.a[1] << 0.001, 0;
  net.w[1] << 0, 1;
  // Unit 2 has zero inner weight: always skipped.
  CHECK(extract_units(net, 0.0).size() == 2);
  CHECK(extract_units(net, 0.01).size() == 1);
  const auto u = extract_units(net, 0.01);
  CHECK(u[0].strength == doctest::Approx(10.0));
  CHECK(u[0].normal[0] == doctest::Approx(1.0));
}

TEST_CASE("init is deterministic and respects shapes") {
  const ShallowNet a = init_net(3, 16, true, 2.0, 99);
  const ShallowNet b = init_net(3, 16, true, 2.0, 99);
  CHECK((a.flatten() - b.flatten()).norm() == 0.0);
  const ShallowNet c = init_net(3, 16, true, 2.0, 98);
  CHECK((a.flatten() - c.flatten()).norm() > 0.0);
  for (int k = 0; k < a.K; ++k) CHECK(a.w[k].norm() == doctest::Approx(1.0));
  CHECK((a.V - Mat::Identity(3, 3)).norm() == 0.0);
  CHECK(a.c.norm() == 0.0);
}

TEST_CASE("network weights serialize bit-exactly") {
  const ShallowNet net = random_net(3, 7, true, 60);
  const ShallowNet back = parse_net(serialize(net));
  CHECK(back.d == net.d);
  CHECK(back.K == net.K);
  CHECK(back.use_skip == net.use_skip);
  CHECK((back.flatten() - net.flatten()).norm() == 0.0);
}
