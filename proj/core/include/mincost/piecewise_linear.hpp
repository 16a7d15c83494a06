#pragma once

#include <vector>

namespace mincost {

// Continuous univariate piecewise-linear function: linear between knots,
// affine extrapolation with the stated boundary slopes.
struct PiecewiseLinear1D {
  std::vector<double> knots;   // strictly increasing
  std::vector<double> values;  // f(knots[i])
  double left_slope = 0.0;
  double right_slope = 0.0;

  double eval(double t) const;

  // Slope on segment i (between knots[i] and knots[i+1]).
  double segment_slope(int i) const;

  // Total variation of f' plus the |f'(inf)+f'(-inf)| floor.
  double representation_cost() const;

  // Slope change at each knot (size knots.size()).
  std::vector<double> slope_jumps() const;

  // Merge knots closer than 1e-12 * scale, re-summing slope jumps.
  void dedup_knots();

  void validate() const;
};

// The two-ReLU ramp s*([t-a]_+ - [t-b]_+); 0 left of a, s*(b-a) right of b.
PiecewiseLinear1D ramp_profile(double a, double b, double s);

}  // namespace mincost
