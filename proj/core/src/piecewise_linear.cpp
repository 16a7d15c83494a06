#include "mincost/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>

#include "mincost/errors.hpp"

namespace mincost {

void PiecewiseLinear1D::validate() const {
  if (knots.size() != values.size()) throw Error("knots/values size mismatch");
  for (size_t i = 1; i < knots.size(); ++i)
    if (!(knots[i] > knots[i - 1])) throw Error("knots must be strictly increasing");
}

double PiecewiseLinear1D::segment_slope(int i) const {
  return (values[i + 1] - values[i]) / (knots[i + 1] - knots[i]);
}

double PiecewiseLinear1D::eval(double t) const {
  if (knots.empty()) return 0.0;
  if (t <= knots.front()) return values.front() + left_slope * (t - knots.front());
  if (t >= knots.back()) return values.back() + right_slope * (t - knots.back());
  // upper_bound: first knot > t; segment index is one less.
  const auto it = std::upper_bound(knots.begin(), knots.end(), t);
  const int i = static_cast<int>(it - knots.begin()) - 1;
  return values[i] + segment_slope(i) * (t - knots[i]);
}

std::vector<double> PiecewiseLinear1D::slope_jumps() const {
  const int k = static_cast<int>(knots.size());
  std::vector<double> jumps(k, 0.0);
  double prev = left_slope;
  for (int i = 0; i < k; ++i) {
    const double next = (i + 1 < k) ? segment_slope(i) : right_slope;
    jumps[i] = next - prev;
    prev = next;
  }
  return jumps;
}

double PiecewiseLinear1D::representation_cost() const {
  double tv = 0.0;
  for (double j : slope_jumps()) tv += std::abs(j);
  return std::max(tv, std::abs(left_slope + right_slope));
}

void PiecewiseLinear1D::dedup_knots() {
  if (knots.size() < 2) return;
  double scale = 0.0;
  for (double t : knots) scale = std::max(scale, std::abs(t));
  const double eps = 1e-12 * std::max(scale, 1.0);

  std::vector<double> nk{knots[0]}, nv{values[0]};
  for (size_t i = 1; i < knots.size(); ++i) {
    if (knots[i] - nk.back() <= eps) continue;  // coincident knot; value kept from first
    nk.push_back(knots[i]);
    nv.push_back(values[i]);
  }
  knots = std::move(nk);
  values = std::move(nv);
}

PiecewiseLinear1D ramp_profile(double a, double b, double s) {
  PiecewiseLinear1D f;
  f.knots = {a, b};
  f.values = {0.0, s * (b - a)};
  f.left_slope = 0.0;
  f.right_slope = 0.0;
  f.validate();
  return f;
}

}  // namespace mincost
