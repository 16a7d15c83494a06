#pragma once

#include <string>
#include <vector>

#include "mincost/dataset.hpp"
#include "mincost/geometry.hpp"
#include "mincost/piecewise_linear.hpp"

namespace mincost {

// v * phi(u^T (y - z)) with unit u, v and monotone piecewise-linear phi.
struct RankOneUnit {
  Vec out_dir;  // v
  Vec in_dir;   // u
  Vec anchor;   // z
  PiecewiseLinear1D profile;
};

// offset + sum_i v_i phi_i(u_i^T (y - z_i)).
struct RankOneSumDenoiser {
  Vec offset;
  std::vector<RankOneUnit> units;
  bool conjectural = false;  // acute-simplex construction is unproven in general

  Vec eval(const Vec& y) const;
  int d() const { return static_cast<int>(offset.size()); }
};

// Exact min-cost interpolant for well-separated univariate data:
// constant x_n on each observed noise interval, linear in between,
// constant x_1 / x_N outside. 2N knots.
PiecewiseLinear1D build_1d(const NoisyDataset& ds);

// Colinear points c_n * u with radius-rho balls.
RankOneSumDenoiser build_colinear(const Vec& u, const std::vector<double>& coords,
                                  double rho);

// Union of obtuse rays through the origin (origin sample included).
RankOneSumDenoiser build_rays(const GeometryTag& tag, double rho);

// Simplex with an all-obtuse apex vertex.
RankOneSumDenoiser build_obtuse_simplex(const CleanDataset& ds, int apex, double rho);

// All-acute simplex; conjectural except for equilateral triangles.
RankOneSumDenoiser build_acute_simplex(const CleanDataset& ds, double rho,
                                       bool equilateral = false);

// Near-ray chains; units follow the successive difference vectors.
// `segments` lists each chain's points in order (origin excluded).
RankOneSumDenoiser build_perturbed_rays(const std::vector<std::vector<Vec>>& segments,
                                        double rho, double tol = kAngleTol);

double representation_cost(const PiecewiseLinear1D& f);
double representation_cost(const RankOneSumDenoiser& f);

// Data-driven ball radius: max over n,m of |y_{n,m} - x_n|.
double max_noise_radius(const NoisyDataset& ds);

// JSON text serialization; round-trips bit-exactly.
std::string serialize(const RankOneSumDenoiser& f);
RankOneSumDenoiser parse_denoiser(const std::string& text);
std::string serialize(const PiecewiseLinear1D& f);
PiecewiseLinear1D parse_profile(const std::string& text);

}  // namespace mincost
