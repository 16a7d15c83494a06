#include "mincost/geometry.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "mincost/errors.hpp"

namespace mincost {

SeparationReport check_well_separated(const NoisyDataset& ds) {
  if (ds.clean.n() == 0) throw EmptyDataset("no clean points");
  if (ds.eps_min.size() != static_cast<size_t>(ds.clean.n()) ||
      ds.eps_max.size() != static_cast<size_t>(ds.clean.n()))
    throw EmptyDataset("noise extremes not recorded");
  if (ds.clean.d() != 1) throw DimensionMismatch("check_well_separated needs d = 1");

  const int n = ds.clean.n();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return ds.clean.points[a][0] < ds.clean.points[b][0];
  });

  SeparationReport rep;
  rep.well_separated = true;
  rep.min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const int a = order[i];
    if (!(ds.eps_max[a] > 0.0 && ds.eps_min[a] < 0.0)) {
      rep.well_separated = false;
      rep.failing_index = a;
    }
    if (i + 1 < n) {
      const int b = order[i + 1];
      const double gap = (ds.clean.points[b][0] + ds.eps_min[b]) -
                         (ds.clean.points[a][0] + ds.eps_max[a]);
      rep.min_gap = std::min(rep.min_gap, gap);
      if (!(gap > 0.0)) {
        rep.well_separated = false;
        if (rep.failing_index < 0) rep.failing_index = a;
      }
    }
  }
  return rep;
}

GeometryTag classify_simplex(const CleanDataset& ds, double tol) {
  ds.validate();
  const int n = ds.n();
  const int d = ds.d();
  if (n > d + 1) throw DimensionMismatch("simplex needs N <= d+1");

  // Affine rank via SVD of centered points.
  Vec centroid = Vec::Zero(d);
  for (const auto& p : ds.points) centroid += p;
  centroid /= n;
  Mat centered(d, n);
  for (int i = 0; i < n; ++i) centered.col(i) = ds.points[i] - centroid;
  Eigen::JacobiSVD<Mat> svd(centered);
  const auto& sv = svd.singularValues();
  const double sv_scale = sv.size() ? sv[0] : 0.0;
  if (n >= 2 && (sv.size() < n - 1 || sv[n - 2] <= 1e-12 * sv_scale))
    throw DegenerateSimplex("affine rank < N-1");

  const double scale = ds.scale();

  auto dot = [&](int i, int j, int v) {
    return (ds.points[i] - ds.points[v]).dot(ds.points[j] - ds.points[v]);
  };

  GeometryTag tag;
  // One obtuse vertex: all cross inner products at it strictly negative.
  for (int v = 0; v < n; ++v) {
    bool obtuse = true;
    for (int i = 0; i < n && obtuse; ++i)
      for (int j = i + 1; j < n && obtuse; ++j) {
        if (i == v || j == v) continue;
        if (!(dot(i, j, v) < -tol * (1.0 + scale * scale))) obtuse = false;
      }
    if (obtuse && n >= 3) {
      tag.kind = GeometryKind::ObtuseSimplex;
      tag.obtuse_apex = v;
      return tag;
    }
  }

  // All-acute: every vertex sees strictly positive inner products.
  bool acute = n >= 3;
  for (int v = 0; v < n && acute; ++v)
    for (int i = 0; i < n && acute; ++i)
      for (int j = i + 1; j < n && acute; ++j) {
        if (i == v || j == v) continue;
        if (!(dot(i, j, v) > tol * (1.0 + scale * scale))) acute = false;
      }
  if (acute) {
    // Equilateral when all pairwise distances agree.
    double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double dist = (ds.points[i] - ds.points[j]).norm();
        dmin = std::min(dmin, dist);
        dmax = std::max(dmax, dist);
      }
    tag.kind = (dmax - dmin <= 1e-9 * (1.0 + scale)) ? GeometryKind::Equilateral
                                                     : GeometryKind::AcuteSimplex;
    return tag;
  }

  tag.kind = GeometryKind::General;
  return tag;
}

SubspaceFit fit_subspace(const CleanDataset& ds, double tol) {
  ds.validate();
  const int d = ds.d();
  Mat stacked(d, ds.n());
  for (int i = 0; i < ds.n(); ++i) stacked.col(i) = ds.points[i];
  Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeThinU);

  SubspaceFit fit;
  const int max_rank = static_cast<int>(svd.singularValues().size());
  for (int r = 0; r <= max_rank; ++r) {
    Mat basis = (r == 0) ? Mat(d, 0) : Mat(svd.matrixU().leftCols(r));
    Mat proj = basis * basis.transpose();
    bool ok = true;
    for (const auto& p : ds.points) {
      if ((p - proj * p).norm() > tol * p.norm()) { ok = false; break; }
    }
    if (ok) {
      fit.basis = std::move(basis);
      fit.projector = std::move(proj);
      fit.rank = r;
      return fit;
    }
  }
  fit.basis = svd.matrixU().leftCols(max_rank);
  fit.projector = fit.basis * fit.basis.transpose();
  fit.rank = max_rank;
  return fit;
}

GeometryTag check_rays(const CleanDataset& ds, double tol) {
  ds.validate();
  const double scale = ds.scale();

  int origin_idx = -1;
  for (int i = 0; i < ds.n(); ++i)
    if (ds.points[i].norm() <= tol * (1.0 + scale)) { origin_idx = i; break; }
  if (origin_idx < 0) throw NotRays("no point at the origin");

  // Greedy clustering by normalized direction.
  const double cos_thresh = 1.0 - tol;
  std::vector<Vec> dirs;            // running mean direction (unnormalized)
  std::vector<std::vector<int>> members;
  for (int i = 0; i < ds.n(); ++i) {
    if (i == origin_idx) continue;
    Vec u = ds.points[i].normalized();
    int best = -1;
    double best_cos = cos_thresh;
    for (size_t l = 0; l < dirs.size(); ++l) {
      const double c = u.dot(dirs[l].normalized());
      if (c >= best_cos) { best_cos = c; best = static_cast<int>(l); }
    }
    if (best < 0) {
      dirs.push_back(u);
      members.push_back({i});
    } else {
      dirs[best] += u;
      members[best].push_back(i);
    }
  }

  GeometryTag tag;
  tag.kind = GeometryKind::Rays;
  tag.rays_origin = Vec::Zero(ds.d());
  for (size_t l = 0; l < dirs.size(); ++l) {
    // Least-squares refit: dominant direction of the cluster.
    Mat cluster(ds.d(), members[l].size());
    for (size_t j = 0; j < members[l].size(); ++j)
      cluster.col(j) = ds.points[members[l][j]];
    Eigen::JacobiSVD<Mat> svd(cluster, Eigen::ComputeThinU);
    Vec u = svd.matrixU().col(0);
    if (u.dot(dirs[l]) < 0) u = -u;

    std::vector<std::pair<double, int>> coords;
    for (int idx : members[l]) {
      const double c = u.dot(ds.points[idx]);
      if ((ds.points[idx] - c * u).norm() > tol * (1.0 + ds.points[idx].norm()))
        throw NotRays("point off every candidate ray");
      coords.emplace_back(c, idx);
    }
    std::sort(coords.begin(), coords.end());
    tag.ray_dirs.push_back(u);
    tag.ray_coords.emplace_back();
    tag.ray_members.emplace_back();
    for (auto& [c, idx] : coords) {
      tag.ray_coords.back().push_back(c);
      tag.ray_members.back().push_back(idx);
    }
  }

  for (size_t l = 0; l < tag.ray_dirs.size(); ++l)
    for (size_t k = l + 1; k < tag.ray_dirs.size(); ++k)
      if (!(tag.ray_dirs[l].dot(tag.ray_dirs[k]) < -tol))
        throw RaysNotObtuse("rays " + std::to_string(l) + "," + std::to_string(k) +
                            " not obtuse");
  return tag;
}

namespace {

double median_objective(const std::vector<Vec>& pts,
                        const std::vector<double>& w, const Vec& z) {
  double f = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) f += w[i] * (pts[i] - z).norm();
  return f;
}

}  // namespace

Vec weighted_geometric_median(const std::vector<Vec>& points,
                              const std::vector<double>& weights,
                              double tol, int max_iter) {
  if (points.empty()) throw EmptyDataset("median of no points");
  const int d = static_cast<int>(points[0].size());
  const size_t n = points.size();
  if (n == 1) return points[0];

  double scale = 0.0;
  for (const auto& p : points) scale = std::max(scale, p.norm());
  scale = std::max(scale, 1.0);

  // Collinear input: reduce to a 1-D weighted median; tie segments
  // resolve to their midpoint.
  {
    Vec centroid = Vec::Zero(d);
    for (const auto& p : points) centroid += p;
    centroid /= static_cast<double>(n);
    Mat centered(d, n);
    for (size_t i = 0; i < n; ++i) centered.col(i) = points[i] - centroid;
    Eigen::JacobiSVD<Mat> svd(centered, Eigen::ComputeThinU);
    if (svd.singularValues().size() < 2 ||
        svd.singularValues()[1] <= 1e-12 * scale) {
      Vec u = svd.matrixU().col(0);
      std::vector<std::pair<double, double>> tw;  // (coordinate, weight)
      for (size_t i = 0; i < n; ++i) tw.emplace_back(u.dot(centered.col(i)), weights[i]);
      std::sort(tw.begin(), tw.end());
      const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
      double cum = 0.0;
      for (size_t i = 0; i < n; ++i) {
        cum += tw[i].second;
        if (cum > total / 2 + 1e-15 * total) return centroid + tw[i].first * u;
        if (std::abs(cum - total / 2) <= 1e-15 * total && i + 1 < n)
          return centroid + 0.5 * (tw[i].first + tw[i + 1].first) * u;
      }
      return centroid + tw.back().first * u;
    }
  }

  Vec z = Vec::Zero(d);
  {
    double wsum = 0.0;
    for (size_t i = 0; i < n; ++i) { z += weights[i] * points[i]; wsum += weights[i]; }
    z /= wsum;
  }

  const double snap = 1e-12 * scale;
  double best_obj = median_objective(points, weights, z);
  Vec best = z;

  for (int it = 0; it < max_iter; ++it) {
    // Vertex handling: optimality test, else step off along the subgradient.
    int at = -1;
    for (size_t i = 0; i < n; ++i)
      if ((points[i] - z).norm() <= snap) { at = static_cast<int>(i); break; }
    if (at >= 0) {
      Vec r = Vec::Zero(d);
      double lipsum = 0.0;
      for (size_t m = 0; m < n; ++m) {
        if (static_cast<int>(m) == at) continue;
        const double dist = (points[m] - points[at]).norm();
        r += weights[m] * (points[m] - points[at]) / dist;
        lipsum += weights[m] / dist;
      }
      if (r.norm() <= weights[at] + tol) return points[at];
      z = points[at] + ((r.norm() - weights[at]) / lipsum) * (r / r.norm());
      continue;
    }

    Vec num = Vec::Zero(d);
    double den = 0.0;
    Vec grad = Vec::Zero(d);
    for (size_t i = 0; i < n; ++i) {
      const double dist = (points[i] - z).norm();
      num += weights[i] / dist * points[i];
      den += weights[i] / dist;
      grad += weights[i] * (z - points[i]) / dist;
    }
    if (grad.norm() <= tol) return z;
    Vec znew = num / den;
    const double obj = median_objective(points, weights, znew);
    if (obj < best_obj) { best_obj = obj; best = znew; }
    if ((znew - z).norm() <= 1e-17 * scale) return znew;
    z = znew;
  }
  // Converged in objective but not to the requested stationarity.
  Vec grad = Vec::Zero(d);
  for (size_t i = 0; i < n; ++i)
    grad += weights[i] * (z - points[i]) / (points[i] - z).norm();
  if (grad.norm() <= 1e6 * tol) return best;
  throw NoConvergence("weighted_geometric_median: max_iter reached");
}

}  // namespace mincost
