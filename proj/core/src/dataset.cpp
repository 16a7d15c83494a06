#include "mincost/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

#include "mincost/errors.hpp"

namespace mincost {

void CleanDataset::validate() const {
  if (points.empty()) throw EmptyDataset("no clean points");
  const auto dim = points[0].size();
  if (dim < 1) throw DimensionMismatch("d must be >= 1");
  for (const auto& p : points)
    if (p.size() != dim) throw DimensionMismatch("inconsistent point dimension");
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j)
      if ((points[i] - points[j]).norm() == 0.0)
        throw Error("clean points must be pairwise distinct");
}

double CleanDataset::scale() const {
  double s = 0.0;
  for (const auto& p : points) s = std::max(s, p.lpNorm<Eigen::Infinity>());
  return s;
}

void NoisyDataset::record_extremes() {
  if (clean.d() != 1) return;
  eps_max.assign(clean.n(), -std::numeric_limits<double>::infinity());
  eps_min.assign(clean.n(), std::numeric_limits<double>::infinity());
  for (int n = 0; n < clean.n(); ++n) {
    for (const auto& y : samples[n]) {
      const double e = y[0] - clean.points[n][0];
      eps_max[n] = std::max(eps_max[n], e);
      eps_min[n] = std::min(eps_min[n], e);
    }
  }
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string clean_to_csv(const CleanDataset& ds) {
  std::ostringstream out;
  out << "n";
  for (int k = 0; k < ds.d(); ++k) out << ",dim" << k;
  out << "\n";
  for (int n = 0; n < ds.n(); ++n) {
    out << n;
    for (int k = 0; k < ds.d(); ++k) out << "," << format_real(ds.points[n][k]);
    out << "\n";
  }
  return out.str();
}

CleanDataset clean_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ConfigParse("empty CSV");
  int d = static_cast<int>(std::count(line.begin(), line.end(), ','));
  CleanDataset ds;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');  // index column
    Vec p(d);
    for (int k = 0; k < d; ++k) {
      if (!std::getline(row, cell, ',')) throw ConfigParse("short CSV row");
      p[k] = std::stod(cell);
    }
    ds.points.push_back(std::move(p));
  }
  ds.validate();
  return ds;
}

std::string noisy_to_csv(const NoisyDataset& ds) {
  std::ostringstream out;
  out << "n,m";
  for (int k = 0; k < ds.clean.d(); ++k) out << ",dim" << k;
  out << "\n";
  for (int n = 0; n < ds.clean.n(); ++n)
    for (int m = 0; m < static_cast<int>(ds.samples[n].size()); ++m) {
      out << n << "," << m;
      for (int k = 0; k < ds.clean.d(); ++k)
        out << "," << format_real(ds.samples[n][m][k]);
      out << "\n";
    }
  return out.str();
}

}  // namespace mincost
