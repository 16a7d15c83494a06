#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "mincost/dataset.hpp"
#include "mincost/network.hpp"

namespace mincost {

double norm_pdf(double z);
double norm_cdf(double z);
double norm_sf(double z);  // 1 - cdf, accurate in the upper tail

struct BivariateGaussian {
  double mu1 = 0, mu2 = 0;
  double s11 = 1, s12 = 0, s22 = 1;
};

// E[[z]_+] for z ~ N(mu, sigma^2); [mu]_+ at sigma = 0.
double relu_gauss_mean(double mu, double sigma);

// E[[z]_+^2] for z ~ N(mu, sigma^2).
double relu_gauss_sq(double mu, double sigma);

// P(z1 > t1, z2 > t2); absolute error <= 1e-12. Correlations beyond
// 1 - 1e-12 use the degenerate-line formula.
double bvn_tail(const BivariateGaussian& b, double t1, double t2);

// E[[z1]_+ [z2]_+].
double relu_gauss_cross(const BivariateGaussian& b);

// Exact expected denoising loss under Gaussian noise for a bias-free,
// skip-free net, averaged over the uniform prior on the clean points.
double marginalized_loss(const ShallowNet& net, const CleanDataset& ds,
                         double sigma);

// Sample mean and standard error of |f(x + sigma g) - x|^2 over S draws,
// x uniform on the clean points. Deterministic in the seed.
std::pair<double, double> mc_oracle(const std::function<Vec(const Vec&)>& f,
                                    const CleanDataset& ds, double sigma,
                                    std::int64_t S, std::uint64_t seed);

}  // namespace mincost
