#include <cmath>

#include "doctest.h"
#include "mincost/errors.hpp"
#include "mincost/gauss_moments.hpp"
#include "mincost/rng.hpp"

using namespace mincost;

namespace {
constexpr double kInvSqrt2Pi = 0.3989422804014327;
}

TEST_CASE("normal pdf/cdf/sf basics") {
  CHECK(norm_pdf(0.0) == doctest::Approx(kInvSqrt2Pi).epsilon(1e-15));
  CHECK(norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(norm_sf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(norm_cdf(1.0) + norm_sf(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  // Tail accuracy: sf(10) ~ 7.62e-24, far below double cdf cancellation.
  CHECK(norm_sf(10.0) == doctest::Approx(7.6198530241605945e-24).epsilon(1e-10));
}

TEST_CASE("rectified first moment") {
  CHECK(relu_gauss_mean(0.0, 1.0) == doctest::Approx(kInvSqrt2Pi).epsilon(1e-14));
  // sigma = 0 limit.
  CHECK(relu_gauss_mean(0.7, 0.0) == 0.7);
  CHECK(relu_gauss_mean(-0.7, 0.0) == 0.0);
  // Far means.
  CHECK(relu_gauss_mean(50.0, 1.0) == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(relu_gauss_mean(-50.0, 1.0) <= 1e-300);
  // Identity E[[z]+] - E[[-z]+] = mu.
  for (double mu : {-1.3, 0.0, 0.4, 2.0})
    CHECK(relu_gauss_mean(mu, 0.8) - relu_gauss_mean(-mu, 0.8) ==
          doctest::Approx(mu).epsilon(1e-13));
}

TEST_CASE("rectified second moment") {
  CHECK(relu_gauss_sq(0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(relu_gauss_sq(0.7, 0.0) == doctest::Approx(0.49));
  // Identity E[[z]+^2] + E[[-z]+^2] = mu^2 + sigma^2.
  for (double mu : {-2.0, -0.3, 0.0, 1.1}) {
    const double s = 0.6;
    CHECK(relu_gauss_sq(mu, s) + relu_gauss_sq(-mu, s) ==
          doctest::Approx(mu * mu + s * s).epsilon(1e-13));
    // Jensen: E[[z]+^2] >= E[[z]+]^2.
    const double m1 = relu_gauss_mean(mu, s);
    CHECK(relu_gauss_sq(mu, s) >= m1 * m1);
  }
  // Monotone in mu.
  CHECK(relu_gauss_sq(0.5, 1.0) > relu_gauss_sq(0.2, 1.0));
}

TEST_CASE("bivariate tail orthant values") {
  BivariateGaussian b;  // standard, rho = 0
  CHECK(bvn_tail(b, 0, 0) == doctest::Approx(0.25).epsilon(1e-12));
  b.s12 = 1.0 - 1e-15;  // rho -> 1
  CHECK(bvn_tail(b, 0, 0) == doctest::Approx(0.5).epsilon(1e-9));
  b.s12 = -0.5;  // rho = -1/2: orthant mass 1/6
  CHECK(bvn_tail(b, 0, 0) == doctest::Approx(1.0 / 6.0).epsilon(1e-11));
  b.s12 = -(1.0 - 1e-15);  // rho -> -1
  CHECK(bvn_tail(b, 0, 0) <= 1e-9);
}

TEST_CASE("bivariate tail general properties") {
  BivariateGaussian b{0.3, -0.2, 1.5, 0.4, 0.8};
  // Marginal consistency: t2 -> -inf recovers the univariate tail.
  CHECK(bvn_tail(b, 0.5, -60.0) ==
        doctest::Approx(norm_sf((0.5 - 0.3) / std::sqrt(1.5))).epsilon(1e-11));
  // Symmetry under swapping the components.
  BivariateGaussian bs{-0.2, 0.3, 0.8, 0.4, 1.5};
  CHECK(bvn_tail(b, 0.1, 0.7) == doctest::Approx(bvn_tail(bs, 0.7, 0.1)).epsilon(1e-12));
  // Monotone in the thresholds.
  CHECK(bvn_tail(b, 0.0, 0.0) > bvn_tail(b, 0.5, 0.0));
  // Continuity across the degenerate-rho switch.
  BivariateGaussian c1{0, 0, 1, 1 - 1e-11, 1};
  BivariateGaussian c2{0, 0, 1, 1 - 1e-13, 1};
  CHECK(bvn_tail(c1, 0.3, -0.1) == doctest::Approx(bvn_tail(c2, 0.3, -0.1)).epsilon(1e-6));
}

TEST_CASE("rectified cross moment") {
  // Independent standard components: (1/sqrt(2pi))^2.
  BivariateGaussian b;
  CHECK(relu_gauss_cross(b) ==
        doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-12));
  // Independence factorizes for any means/scales.
  BivariateGaussian ind{0.4, -0.7, 2.0, 0.0, 0.5};
  CHECK(relu_gauss_cross(ind) ==
        doctest::Approx(relu_gauss_mean(0.4, std::sqrt(2.0)) *
                        relu_gauss_mean(-0.7, std::sqrt(0.5)))
            .epsilon(1e-12));
  // Perfect correlation reduces to the second moment.
  BivariateGaussian same{0.3, 0.3, 0.9, 0.9, 0.9};
  CHECK(relu_gauss_cross(same) ==
        doctest::Approx(relu_gauss_sq(0.3, std::sqrt(0.9))).epsilon(1e-10));
  // Swap symmetry.
  BivariateGaussian g{0.2, -0.5, 1.3, 0.6, 0.7};
  BivariateGaussian gs{-0.5, 0.2, 0.7, 0.6, 1.3};
  CHECK(relu_gauss_cross(g) == doctest::Approx(relu_gauss_cross(gs)).epsilon(1e-12));
  // Nonnegative always.
  BivariateGaussian neg{-3.0, -3.0, 1.0, -0.9, 1.0};
  CHECK(relu_gauss_cross(neg) >= 0.0);
}

TEST_CASE("rectified cross moment against monte carlo") {
  const BivariateGaussian cases[] = {
      {0.3, -0.2, 1.5, 0.4, 0.8},
      {-1.0, 0.5, 1.0, -0.7, 1.0},
      {0.0, 0.0, 2.0, 1.3, 1.0},
  };
  for (int ci = 0; ci < 3; ++ci) {
    const BivariateGaussian& b = cases[ci];
    const double sd1 = std::sqrt(b.s11), sd2 = std::sqrt(b.s22);
    const double rho = b.s12 / (sd1 * sd2);
    CounterRng rng(400 + ci, 9);
    const long S = 400000;
    double sum = 0, sumsq = 0;
    for (long s = 0; s < S; ++s) {
      const double g1 = rng.normal(), g2 = rng.normal();
      const double z1 = b.mu1 + sd1 * g1;
      const double z2 = b.mu2 + sd2 * (rho * g1 + std::sqrt(1 - rho * rho) * g2);
      const double v = std::max(0.0, z1) * std::max(0.0, z2);
      sum += v;
      sumsq += v * v;
    }
    const double mean = sum / S;
    const double se = std::sqrt((sumsq / S - mean * mean) / S);
    CHECK(std::abs(relu_gauss_cross(b) - mean) <= 4 * se);
  }
}

TEST_CASE("marginalized loss: exact at zero noise and nonnegative") {
  CleanDataset ds;
  ds.points = {Vec::Zero(2), Vec::Zero(2)};
  ds.points[1] << 2, 0;
  ShallowNet net = make_net(2, 2, false);
  net.a[0] << 1, 0;
  net.w[0] << 0.7, 0.2;
  net.a[1] << -0.3, 0.4;
  net.w[1] << -0.5, 0.9;
  double direct = 0;
  for (const Vec& x : ds.points) direct += (net.forward(x) - x).squaredNorm();
  direct /= ds.n();
  CHECK(marginalized_loss(net, ds, 0.0) == doctest::Approx(direct).epsilon(1e-12));
  CHECK(marginalized_loss(net, ds, 0.8) >= -1e-10);
}

TEST_CASE("marginalized loss matches a monte carlo oracle") {
  CleanDataset ds;
  ds.points = {Vec::Zero(2), Vec::Zero(2), Vec::Zero(2)};
  ds.points[1] << 1.5, 0;
  ds.points[2] << 0, -1.0;
  ShallowNet net = make_net(2, 3, false);
  CounterRng rng(88, 3);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 2; ++i) {
      net.a[k][i] = 0.5 * rng.normal();
      net.w[k][i] = rng.normal();
    }
  const double sigma = 0.4;
  const double exact = marginalized_loss(net, ds, sigma);
  const auto [mc, se] = mc_oracle(
      [&](const Vec& y) { return net.forward(y); }, ds, sigma, 300000, 5);
  CHECK(std::abs(exact - mc) <= 4 * se);
}

TEST_CASE("marginalized loss rejects unsupported shapes") {
  CleanDataset ds;
  ds.points = {Vec::Zero(1)};
  ShallowNet skip = make_net(1, 1, true);
  CHECK_THROWS_AS(marginalized_loss(skip, ds, 0.5), ModelShapeUnsupported);
  ShallowNet biased = make_net(1, 1, false);
  biased.b[0] = 0.3;
  CHECK_THROWS_AS(marginalized_loss(biased, ds, 0.5), ModelShapeUnsupported);
}

TEST_CASE("monte carlo oracle is deterministic and sane") {
  CleanDataset ds;
  ds.points = {Vec::Zero(1), Vec::Constant(1, 1.0)};
  const auto f = [](const Vec& y) { return y; };  // identity: mse = sigma^2
  const auto [m1, s1] = mc_oracle(f, ds, 0.3, 100000, 7);
  const auto [m2, s2] = mc_oracle(f, ds, 0.3, 100000, 7);
  CHECK(m1 == m2);
  CHECK(s1 == s2);
  CHECK(std::abs(m1 - 0.09) <= 4 * s1);
}
