#include "mincost/baselines.hpp"

#include <cmath>
#include <limits>

#include "mincost/errors.hpp"

namespace mincost {

Vec emmse_denoise(const CleanDataset& ds, const Vec& y, double sigma) {
  ds.validate();
  if (y.size() != ds.d()) throw DimensionMismatch("emmse: wrong input dim");
  if (!(sigma > 0)) throw Error("emmse: sigma must be positive");

  const int n = ds.n();
  const double inv = 1.0 / (2.0 * sigma * sigma);
  std::vector<double> logw(n);
  double shift = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    logw[i] = -(y - ds.points[i]).squaredNorm() * inv;
    shift = std::max(shift, logw[i]);
  }
  double z = 0.0;
  Vec num = Vec::Zero(ds.d());
  for (int i = 0; i < n; ++i) {
    const double w = std::exp(logw[i] - shift);
    z += w;
    num += w * ds.points[i];
  }
  return num / z;
}

Vec nn1_denoise(const CleanDataset& ds, const Vec& y) {
  ds.validate();
  if (y.size() != ds.d()) throw DimensionMismatch("nn1: wrong input dim");
  int best = 0;
  double best_d2 = (y - ds.points[0]).squaredNorm();
  for (int i = 1; i < ds.n(); ++i) {
    const double d2 = (y - ds.points[i]).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return ds.points[best];
}

}  // namespace mincost
