#include "mincost/gauss_moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mincost/errors.hpp"
#include "mincost/rng.hpp"

namespace mincost {

namespace {
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kTailCut = 8.5;        // standard deviations
constexpr double kDegenerateRho = 1.0 - 1e-12;
}  // namespace

double norm_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }
double norm_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }
double norm_sf(double z) { return 0.5 * std::erfc(z * M_SQRT1_2); }

double relu_gauss_mean(double mu, double sigma) {
  if (sigma == 0.0) return mu > 0 ? mu : 0.0;
  const double z = mu / sigma;
  if (z > 37) return mu;  // Phi term saturates; phi underflows
  if (z < -37) return 0.0;
  return mu * norm_cdf(z) + sigma * norm_pdf(z);
}

double relu_gauss_sq(double mu, double sigma) {
  if (sigma == 0.0) return mu > 0 ? mu * mu : 0.0;
  const double z = mu / sigma;
  if (z > 37) return mu * mu + sigma * sigma;
  if (z < -37) return 0.0;
  return (mu * mu + sigma * sigma) * norm_cdf(z) + mu * sigma * norm_pdf(z);
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1], computed once by Newton iteration.
struct GaussLegendre {
  std::vector<double> nodes, weights;
  explicit GaussLegendre(int n) : nodes(n), weights(n) {
    for (int i = 0; i < n; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

const GaussLegendre& gl32() {
  static const GaussLegendre g(32);
  return g;
}

// P(U > h, V > k) for standard bivariate normal with correlation rho,
// |rho| < 1, via the conditioned tail integral.
double std_bvn_tail(double h, double k, double rho) {
  // P(Z1 > h, Z2 > k) = sf(h) sf(k) + (1/2pi) int_0^asin(rho)
  //   exp(-(h^2 + k^2 - 2 h k sin t) / (2 cos^2 t)) dt.
  // The integrand is bounded and smooth for every rho in [-1, 1], so a
  // composite Gauss-Legendre rule converges to near machine precision even
  // when the correlation is extreme.
  const double theta = std::asin(std::clamp(rho, -1.0, 1.0));
  double total = norm_sf(h) * norm_sf(k);
  const auto& g = gl32();
  const int panels = 8;
  const double width = theta / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = p * width;
    double acc = 0.0;
    for (size_t i = 0; i < g.nodes.size(); ++i) {
      const double t = a + 0.5 * width * (g.nodes[i] + 1.0);
      const double c = std::cos(t);
      const double e =
          -(h * h + k * k - 2.0 * h * k * std::sin(t)) / (2.0 * c * c);
      acc += g.weights[i] * std::exp(e);
    }
    total += 0.5 * width * acc / (2.0 * M_PI);
  }
  return std::clamp(total, 0.0, std::min(norm_sf(h), norm_sf(k)));
}

struct Standardized {
  double h, k, rho, sd1, sd2;
};

Standardized standardize(const BivariateGaussian& b, double t1, double t2) {
  if (!(b.s11 > 0) || !(b.s22 > 0) || !(b.s11 * b.s22 - b.s12 * b.s12 > 0))
    throw IllConditioned("covariance not positive definite");
  Standardized s;
  s.sd1 = std::sqrt(b.s11);
  s.sd2 = std::sqrt(b.s22);
  s.h = (t1 - b.mu1) / s.sd1;
  s.k = (t2 - b.mu2) / s.sd2;
  s.rho = b.s12 / (s.sd1 * s.sd2);
  return s;
}

// First and second moments of N(mu, s^2) restricted to [lo, hi].
void truncated_moments(double mu, double s, double lo, double hi, double* m1,
                       double* m2) {
  const double alpha = (lo - mu) / s;
  const double beta = (hi - mu) / s;
  const double pa = norm_pdf(alpha), pb = norm_pdf(beta);
  const double z = norm_cdf(beta) - norm_cdf(alpha);
  const double apa = std::isfinite(alpha) ? alpha * pa : 0.0;
  const double bpb = std::isfinite(beta) ? beta * pb : 0.0;
  *m1 = mu * z + s * (pa - pb);
  *m2 = mu * mu * z + 2 * mu * s * (pa - pb) + s * s * (z + apa - bpb);
}

// E[[z1]_+ [z2]_+] when the pair is (numerically) perfectly correlated:
// z2 = mu2 + c (z1 - mu1) with c = sign(rho) sd2/sd1.
double degenerate_cross(const BivariateGaussian& b, double rho_sign) {
  const double sd1 = std::sqrt(b.s11), sd2 = std::sqrt(b.s22);
  const double c = rho_sign * sd2 / sd1;
  // Both factors positive on an interval of z1.
  double lo = 0.0, hi = std::numeric_limits<double>::infinity();
  const double cross = b.mu1 - b.mu2 / c;  // z2 = 0 at z1 = cross
  if (c > 0)
    lo = std::max(lo, cross);
  else
    hi = std::min(hi, cross);
  if (lo >= hi) return 0.0;
  double m1, m2;
  truncated_moments(b.mu1, sd1, lo, hi, &m1, &m2);
  // z1 z2 = z1 (mu2 - c mu1) + c z1^2
  return (b.mu2 - c * b.mu1) * m1 + c * m2;
}

}  // namespace

double bvn_tail(const BivariateGaussian& b, double t1, double t2) {
  const Standardized s = standardize(b, t1, t2);
  if (std::abs(s.rho) > kDegenerateRho) {
    if (s.rho > 0) return norm_sf(std::max(s.h, s.k));
    return std::max(0.0, 1.0 - norm_cdf(s.h) - norm_cdf(s.k));
  }
  return std_bvn_tail(s.h, s.k, s.rho);
}

double relu_gauss_cross(const BivariateGaussian& b) {
  const double sd1 = std::sqrt(b.s11), sd2 = std::sqrt(b.s22);
  const double rho = b.s12 / (sd1 * sd2);
  if (std::abs(rho) > kDegenerateRho)
    return degenerate_cross(b, rho > 0 ? 1.0 : -1.0);

  const double det = b.s11 * b.s22 - b.s12 * b.s12;
  const double p = bvn_tail(b, 0.0, 0.0);
  // Density of the centered pair at (-mu1, -mu2).
  const double quad = (b.s22 * b.mu1 * b.mu1 - 2 * b.s12 * b.mu1 * b.mu2 +
                       b.s11 * b.mu2 * b.mu2) /
                      det;
  const double dens = std::exp(-0.5 * quad) / (2 * M_PI * std::sqrt(det));
  // Conditional tails: sd of z2 given z1, and vice versa.
  const double csd2 = sd2 * std::sqrt(1 - rho * rho);
  const double csd1 = sd1 * std::sqrt(1 - rho * rho);
  // F-terms with the shared normalizing probability cancelled against p;
  // the conditional mean of z2 at z1 = 0 is mu2 - (s12/s11) mu1.
  const double f1 = norm_pdf(b.mu1 / sd1) / sd1 *
                    norm_sf(-(b.mu2 - (b.s12 / b.s11) * b.mu1) / csd2);
  const double f2 = norm_pdf(b.mu2 / sd2) / sd2 *
                    norm_sf(-(b.mu1 - (b.s12 / b.s22) * b.mu2) / csd1);
  // The moment is a mean of a nonnegative product; guard against tiny
  // negative round-off deep in the tails.
  return std::max(0.0, p * (b.s12 + b.mu1 * b.mu2) + det * dens +
                           b.s11 * f1 * b.mu2 + b.mu1 * b.s22 * f2);
}

double marginalized_loss(const ShallowNet& net, const CleanDataset& ds,
                         double sigma) {
  ds.validate();
  if (net.use_skip)
    throw ModelShapeUnsupported("marginalized loss needs a skip-free net");
  for (double bk : net.b)
    if (bk != 0.0)
      throw ModelShapeUnsupported("marginalized loss needs zero biases");
  if (net.d != ds.d()) throw DimensionMismatch("marginalized_loss: dim mismatch");

  const int K = net.K, N = ds.n();
  // First term: squared distance of the mean prediction to each clean point.
  Mat phi(K, N);  // phi(k, n) = E[[w_k^T y]_+ | x_n]
  for (int n = 0; n < N; ++n)
    for (int k = 0; k < K; ++k)
      phi(k, n) =
          relu_gauss_mean(net.w[k].dot(ds.points[n]), sigma * net.w[k].norm());

  double term1 = 0.0;
  for (int n = 0; n < N; ++n) {
    Vec mean_pred = Vec::Zero(net.d);
    for (int k = 0; k < K; ++k) mean_pred += net.a[k] * phi(k, n);
    term1 += (mean_pred - ds.points[n]).squaredNorm();
  }
  term1 /= N;

  // Quadratic form with H_ij averaged over the clean points.
  double term2 = 0.0;
  for (int i = 0; i < K; ++i)
    for (int j = i; j < K; ++j) {
      double hij = 0.0;
      for (int n = 0; n < N; ++n) {
        BivariateGaussian b;
        b.mu1 = net.w[i].dot(ds.points[n]);
        b.mu2 = net.w[j].dot(ds.points[n]);
        b.s11 = sigma * sigma * net.w[i].squaredNorm();
        b.s22 = sigma * sigma * net.w[j].squaredNorm();
        b.s12 = sigma * sigma * net.w[i].dot(net.w[j]);
        double psi;
        if (sigma == 0.0 || b.s11 == 0.0 || b.s22 == 0.0) {
          psi = std::max(b.mu1, 0.0) * std::max(b.mu2, 0.0);
        } else if (i == j) {
          psi = relu_gauss_sq(b.mu1, std::sqrt(b.s11));
        } else {
          psi = relu_gauss_cross(b);
        }
        hij += psi - phi(i, n) * phi(j, n);
      }
      hij /= N;
      term2 += (i == j ? 1.0 : 2.0) * net.a[i].dot(net.a[j]) * hij;
    }
  return term1 + term2;
}

std::pair<double, double> mc_oracle(const std::function<Vec(const Vec&)>& f,
                                    const CleanDataset& ds, double sigma,
                                    std::int64_t S, std::uint64_t seed) {
  ds.validate();
  if (S < 2) throw Error("mc_oracle: need at least 2 samples");
  const int d = ds.d();
  double sum = 0.0, sumsq = 0.0;
  for (std::int64_t s = 0; s < S; ++s) {
    const int n = static_cast<int>(
        CounterRng::bits_at(seed, 0x70726972ULL, static_cast<std::uint64_t>(s)) %
        ds.n());
    Vec y = ds.points[n];
    for (int i = 0; i < d; ++i)
      y[i] += sigma * CounterRng::normal_at(
                          seed, 0x6d636e6fULL,
                          static_cast<std::uint64_t>(s) * d + i);
    const double v = (f(y) - ds.points[n]).squaredNorm();
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / S;
  const double var = std::max(0.0, (sumsq - S * mean * mean) / (S - 1));
  return {mean, std::sqrt(var / S)};
}

}  // namespace mincost
