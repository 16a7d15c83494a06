#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mincost/dataset.hpp"
#include "mincost/geometry.hpp"
#include "mincost/network.hpp"
#include "mincost/piecewise_linear.hpp"

namespace mincost {

// Clean-signal prior: either an atom set or a 1D piecewise-constant density
// given as (lo, hi, mass) pieces (masses normalized internally).
struct Prior {
  enum Kind { Discrete, PiecewiseConstant1D } kind = Discrete;
  CleanDataset points;
  struct Piece {
    double lo, hi, mass;
  };
  std::vector<Piece> pieces;

  static Prior discrete(CleanDataset ds);
  static Prior uniform1d(double lo, double hi);
};

struct MseMethod {
  enum Kind { Quadrature, MC } kind = Quadrature;
  std::int64_t samples = 100000;
  std::uint64_t seed = 0;

  static MseMethod quadrature() { return {Quadrature, 0, 0}; }
  static MseMethod mc(std::int64_t s, std::uint64_t seed) { return {MC, s, seed}; }
};

// E |f(x + sigma*eps) - x|^2 with eps ~ N(0, I). Quadrature (d = 1 only)
// uses order-64 Gauss-Hermite in the noise and a composite panel rule over
// the prior; MC works in any dimension.
double mse_vs_prior(const std::function<Vec(const Vec&)>& f, const Prior& prior,
                    double sigma, const MseMethod& method);

struct ContractionReport {
  double alpha_observed = 0.0;
  Vec worst_query;
  std::vector<double> excluded_fixed_points;
};

// Analytic non-clean fixed points of f*_1D between consecutive clusters.
std::vector<double> fixed_points_1d(const NoisyDataset& ds);

// Max over queries (outside delta-bands around the fixed points) of
// min_i |f(y) - x_i| / |y - x_i|. Below 1 means contraction toward the set.
ContractionReport contractivity_1d(const PiecewiseLinear1D& f,
                                   const NoisyDataset& ds,
                                   const std::vector<double>& queries,
                                   double delta);

// Max over queries of |f(y) - P f(P y)| with P = basis * basis^T.
double subspace_property_check(const std::function<Vec(const Vec&)>& f,
                               const Mat& basis, const std::vector<Vec>& queries);

struct AlignmentEntry {
  Vec normal;      // boundary normal of the unit
  Vec reference;   // best-matching reference direction
  double abs_cos;  // in [0, 1]
  double strength;
};

struct AlignmentReport {
  std::vector<AlignmentEntry> units;
  double min_abs_cos = 0.0;
  std::string reference_label;  // "edges" or "face-normals"
};

// Reference directions for boundary alignment: edges from the obtuse apex,
// or face normals (vertex minus its foot on the opposite face) when acute.
std::pair<std::vector<Vec>, std::string> reference_directions(
    const CleanDataset& ds, const GeometryTag& tag);

AlignmentReport alignment_report(const ShallowNet& net,
                                 const std::vector<Vec>& reference_dirs,
                                 const std::string& label,
                                 double significance = 0.05);

std::string alignment_to_csv(const AlignmentReport& report);

}  // namespace mincost
