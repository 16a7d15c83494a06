#include "mincost/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "mincost/errors.hpp"
#include "mincost/rng.hpp"

namespace mincost {

Prior Prior::discrete(CleanDataset ds) {
  Prior p;
  p.kind = Discrete;
  p.points = std::move(ds);
  p.points.validate();
  return p;
}

Prior Prior::uniform1d(double lo, double hi) {
  if (!(hi > lo)) throw Error("prior: empty interval");
  Prior p;
  p.kind = PiecewiseConstant1D;
  p.pieces.push_back({lo, hi, 1.0});
  return p;
}

namespace {

// Gauss-Hermite nodes/weights for integrals against exp(-t^2), via the
// eigendecomposition of the symmetric Jacobi matrix.
struct GaussHermite {
  std::vector<double> nodes, weights;
  explicit GaussHermite(int n) : nodes(n), weights(n) {
    Mat J = Mat::Zero(n, n);
    for (int k = 1; k < n; ++k) {
      const double off = std::sqrt(k / 2.0);
      J(k, k - 1) = off;
      J(k - 1, k) = off;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(J);
    const double mass = std::sqrt(M_PI);  // integral of exp(-t^2)
    for (int i = 0; i < n; ++i) {
      nodes[i] = es.eigenvalues()[i];
      const double v0 = es.eigenvectors()(0, i);
      weights[i] = mass * v0 * v0;
    }
  }
};

const GaussHermite& gh64() {
  static const GaussHermite g(64);
  return g;
}

// Gauss-Legendre nodes/weights on [-1, 1] via Newton on the recurrence.
const std::pair<std::vector<double>, std::vector<double>>& gl_nodes() {
  static const auto g = [] {
    const int n = 16;
    std::vector<double> nodes(n), weights(n);
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
    return std::make_pair(nodes, weights);
  }();
  return g;
}

// E_eps (f(x + sigma*eps) - x)^2 for scalar x via Gauss-Hermite.
double noise_expectation_1d(const std::function<Vec(const Vec&)>& f, double x,
                            double sigma) {
  const auto& g = gh64();
  double acc = 0.0;
  Vec y(1);
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    y[0] = x + sigma * M_SQRT2 * g.nodes[i];
    const double r = f(y)[0] - x;
    acc += g.weights[i] * r * r;
  }
  return acc / std::sqrt(M_PI);
}

}  // namespace

double mse_vs_prior(const std::function<Vec(const Vec&)>& f, const Prior& prior,
                    double sigma, const MseMethod& method) {
  if (method.kind == MseMethod::Quadrature) {
    if (prior.kind == Prior::Discrete) {
      if (prior.points.d() != 1)
        throw UnsupportedDensity("quadrature is univariate only");
      double acc = 0.0;
      for (const auto& x : prior.points.points)
        acc += noise_expectation_1d(f, x[0], sigma);
      return acc / prior.points.n();
    }
    // Composite midpoint-free panel rule over each constant piece.
    double total_mass = 0.0;
    for (const auto& p : prior.pieces) total_mass += p.mass;
    const auto& g = gl_nodes();
    double acc = 0.0;
    for (const auto& p : prior.pieces) {
      const int panels = 512;  // integrand is piecewise smooth; ample
      const double width = (p.hi - p.lo) / panels;
      double piece_acc = 0.0;
      for (int q = 0; q < panels; ++q) {
        const double a = p.lo + q * width;
        for (size_t i = 0; i < g.first.size(); ++i) {
          const double x = a + 0.5 * width * (g.first[i] + 1.0);
          piece_acc += 0.5 * width * g.second[i] * noise_expectation_1d(f, x, sigma);
        }
      }
      acc += p.mass / (p.hi - p.lo) * piece_acc;
    }
    return acc / total_mass;
  }

  // Monte Carlo.
  if (method.samples < 1) throw Error("mse_vs_prior: need samples >= 1");
  double acc = 0.0;
  const int d = prior.kind == Prior::Discrete ? prior.points.d() : 1;
  for (std::int64_t s = 0; s < method.samples; ++s) {
    Vec x(d);
    if (prior.kind == Prior::Discrete) {
      const int n = static_cast<int>(CounterRng::bits_at(method.seed, 0x7072ULL,
                                                         s) %
                                     prior.points.n());
      x = prior.points.points[n];
    } else {
      double total_mass = 0.0;
      for (const auto& p : prior.pieces) total_mass += p.mass;
      double u = CounterRng::uniform_at(method.seed, 0x7072ULL, s) * total_mass;
      x[0] = prior.pieces.back().hi;
      for (const auto& p : prior.pieces) {
        if (u <= p.mass) {
          x[0] = p.lo + (p.hi - p.lo) * (u / p.mass);
          break;
        }
        u -= p.mass;
      }
    }
    Vec y = x;
    for (int i = 0; i < d; ++i)
      y[i] += sigma * CounterRng::normal_at(method.seed, 0x6e6fULL,
                                            static_cast<std::uint64_t>(s) * d + i);
    acc += (f(y) - x).squaredNorm();
  }
  return acc / method.samples;
}

std::vector<double> fixed_points_1d(const NoisyDataset& ds) {
  const int n = ds.clean.n();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return ds.clean.points[a][0] < ds.clean.points[b][0];
  });
  std::vector<double> fp;
  for (int i = 0; i + 1 < n; ++i) {
    const double xn = ds.clean.points[order[i]][0];
    const double xn1 = ds.clean.points[order[i + 1]][0];
    const double emax = ds.eps_max[order[i]];
    const double emin = ds.eps_min[order[i + 1]];
    fp.push_back((xn1 * emax - xn * emin) / (emax - emin));
  }
  return fp;
}

ContractionReport contractivity_1d(const PiecewiseLinear1D& f,
                                   const NoisyDataset& ds,
                                   const std::vector<double>& queries,
                                   double delta) {
  ContractionReport report;
  report.excluded_fixed_points = fixed_points_1d(ds);
  report.worst_query = Vec::Zero(1);
  for (double y : queries) {
    bool excluded = false;
    for (double fp : report.excluded_fixed_points)
      if (std::abs(y - fp) < delta) {
        excluded = true;
        break;
      }
    if (excluded) continue;
    const double fy = f.eval(y);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& x : ds.clean.points) {
      const double dist = std::abs(y - x[0]);
      if (dist == 0.0) continue;
      best = std::min(best, std::abs(fy - x[0]) / dist);
    }
    if (std::isfinite(best) && best > report.alpha_observed) {
      report.alpha_observed = best;
      report.worst_query[0] = y;
    }
  }
  return report;
}

double subspace_property_check(const std::function<Vec(const Vec&)>& f,
                               const Mat& basis, const std::vector<Vec>& queries) {
  const Mat P = basis * basis.transpose();
  double worst = 0.0;
  for (const auto& y : queries)
    worst = std::max(worst, (f(y) - P * f(P * y)).norm());
  return worst;
}

std::pair<std::vector<Vec>, std::string> reference_directions(
    const CleanDataset& ds, const GeometryTag& tag) {
  std::vector<Vec> dirs;
  if (tag.kind == GeometryKind::ObtuseSimplex) {
    const Vec& apex = ds.points[tag.obtuse_apex];
    for (int i = 0; i < ds.n(); ++i) {
      if (i == tag.obtuse_apex) continue;
      dirs.push_back((ds.points[i] - apex).normalized());
    }
    return {dirs, "edges"};
  }
  if (tag.kind == GeometryKind::Rays) return {tag.ray_dirs, "edges"};
  if (tag.kind == GeometryKind::AcuteSimplex ||
      tag.kind == GeometryKind::Equilateral) {
    // Vertex minus its orthogonal foot on the opposite face.
    for (int v = 0; v < ds.n(); ++v) {
      std::vector<Vec> face;
      for (int j = 0; j < ds.n(); ++j)
        if (j != v) face.push_back(ds.points[j]);
      const Vec& base = face[0];
      Mat span(ds.d(), face.size() - 1);
      for (size_t j = 1; j < face.size(); ++j) span.col(j - 1) = face[j] - base;
      Vec x = ds.points[v] - base;
      if (span.cols() > 0)
        x -= span * span.colPivHouseholderQr().solve(x);
      dirs.push_back(x.normalized());
    }
    return {dirs, "face-normals"};
  }
  throw Error("no reference directions for this geometry");
}

AlignmentReport alignment_report(const ShallowNet& net,
                                 const std::vector<Vec>& reference_dirs,
                                 const std::string& label, double significance) {
  const auto units = extract_units(net, significance);
  if (units.empty()) throw NoSignificantUnits("no units above significance");
  AlignmentReport report;
  report.reference_label = label;
  report.min_abs_cos = 1.0;
  for (const auto& u : units) {
    AlignmentEntry entry;
    entry.normal = u.normal;
    entry.strength = u.strength;
    entry.abs_cos = -1.0;
    for (const auto& ref : reference_dirs) {
      const double c = std::abs(u.normal.dot(ref)) / ref.norm();
      if (c > entry.abs_cos) {
        entry.abs_cos = c;
        entry.reference = ref;
      }
    }
    entry.abs_cos = std::min(entry.abs_cos, 1.0);  // guard rounding above 1
    report.min_abs_cos = std::min(report.min_abs_cos, entry.abs_cos);
    report.units.push_back(std::move(entry));
  }
  return report;
}

std::string alignment_to_csv(const AlignmentReport& report) {
  std::string out = "unit,strength,abs_cos";
  const int d = report.units.empty() ? 0 : static_cast<int>(report.units[0].normal.size());
  for (int i = 0; i < d; ++i) out += ",normal" + std::to_string(i);
  for (int i = 0; i < d; ++i) out += ",ref" + std::to_string(i);
  out += '\n';
  for (size_t k = 0; k < report.units.size(); ++k) {
    const auto& u = report.units[k];
    out += std::to_string(k) + ',' + format_real(u.strength) + ',' +
           format_real(u.abs_cos);
    for (int i = 0; i < d; ++i) out += ',' + format_real(u.normal[i]);
    for (int i = 0; i < d; ++i) out += ',' + format_real(u.reference[i]);
    out += '\n';
  }
  return out;
}

}  // namespace mincost
