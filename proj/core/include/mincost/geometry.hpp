#pragma once

#include <optional>
#include <vector>

#include "mincost/dataset.hpp"

namespace mincost {

enum class GeometryKind {
  Univariate,
  Colinear,
  Subspace,
  Rays,
  ObtuseSimplex,
  AcuteSimplex,
  Equilateral,
  PerturbedRays,
  General,
};

// Geometry classification result; only the fields relevant to `kind`
// are populated.
struct GeometryTag {
  GeometryKind kind = GeometryKind::General;

  Vec colinear_dir;                       // Colinear
  Mat subspace_basis;                     // Subspace: columns orthonormal
  Vec rays_origin;                        // Rays
  std::vector<Vec> ray_dirs;              // unit u_l
  std::vector<std::vector<double>> ray_coords;   // sorted 0 < c_1 < ...
  std::vector<std::vector<int>> ray_members;     // indices into points, sorted by c
  int obtuse_apex = -1;                   // ObtuseSimplex
  std::vector<std::vector<Vec>> segments; // PerturbedRays: per-ray point chains
};

struct SeparationReport {
  bool well_separated = false;
  double min_gap = 0.0;  // min over n of (x_{n+1}+eps_min_{n+1}) - (x_n+eps_max_n)
  int failing_index = -1;
};

// Default predicate tolerances.
constexpr double kAngleTol = 1e-9;
constexpr double kSubspaceTol = 1e-8;

// d == 1 only. Sorts internally (stable); checks
// x_n + eps_max_n < x_{n+1} + eps_min_{n+1} and eps_max > 0 > eps_min.
SeparationReport check_well_separated(const NoisyDataset& ds);

// N <= d+1 simplex classification by the sign pattern of vertex inner
// products, with a tol dead-band; borderline configurations map to General.
GeometryTag classify_simplex(const CleanDataset& ds, double tol = kAngleTol);

// Minimal orthonormal basis such that every point is within tol*|x| of
// its projection. Rank d is a valid answer.
struct SubspaceFit {
  Mat basis;      // d x r, orthonormal columns
  Mat projector;  // B * B^T
  int rank = 0;
};
SubspaceFit fit_subspace(const CleanDataset& ds, double tol = kSubspaceTol);

// Requires one point within tol of the origin; partitions the rest into
// rays and verifies pairwise obtuseness.
GeometryTag check_rays(const CleanDataset& ds, double tol = kAngleTol);

// Weiszfeld iteration with vertex-escape test. Minimizes
// sum_n w_n |x_n - z| to first-order stationarity <= tol.
Vec weighted_geometric_median(const std::vector<Vec>& points,
                              const std::vector<double>& weights,
                              double tol = 1e-12, int max_iter = 10000);

}  // namespace mincost
