#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace mincost {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// The N clean points x_n in R^d.
struct CleanDataset {
  std::vector<Vec> points;

  int d() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }
  int n() const { return static_cast<int>(points.size()); }

  // Checks dimensions agree and points are pairwise distinct.
  void validate() const;

  // Largest coordinate magnitude; used to scale tolerances.
  double scale() const;
};

// M noisy replicates per clean point. eps_max/eps_min are only populated
// for univariate data.
struct NoisyDataset {
  CleanDataset clean;
  std::vector<std::vector<Vec>> samples;  // [n][m]
  double sigma = 0.0;
  std::vector<double> eps_max;  // d == 1 only
  std::vector<double> eps_min;

  int m() const { return samples.empty() ? 0 : static_cast<int>(samples[0].size()); }

  // Recomputes eps_max/eps_min from raw samples (d == 1).
  void record_extremes();
};

// CSV with header n,dim0,...,dimK; reals at 17 significant digits.
std::string clean_to_csv(const CleanDataset& ds);
CleanDataset clean_from_csv(const std::string& text);

// CSV with header n,m,dim0,...
std::string noisy_to_csv(const NoisyDataset& ds);

std::string format_real(double x);  // 17 significant digits

}  // namespace mincost
