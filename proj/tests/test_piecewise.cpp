#include "doctest.h"
#include "mincost/errors.hpp"
#include "mincost/piecewise_linear.hpp"

using namespace mincost;

TEST_CASE("eval interpolates and extrapolates with boundary slopes") {
  PiecewiseLinear1D f;
  f.knots = {0.0, 1.0, 3.0};
  f.values = {0.0, 2.0, 1.0};
  f.left_slope = -1.0;
  f.right_slope = 0.5;
  f.validate();
  CHECK(f.eval(0.0) == doctest::Approx(0.0));
  CHECK(f.eval(0.5) == doctest::Approx(1.0));
  CHECK(f.eval(2.0) == doctest::Approx(1.5));
  CHECK(f.eval(-2.0) == doctest::Approx(2.0));   // 0 + (-1)*(-2)
  CHECK(f.eval(5.0) == doctest::Approx(2.0));    // 1 + 0.5*2
  CHECK(f.segment_slope(0) == doctest::Approx(2.0));
  CHECK(f.segment_slope(1) == doctest::Approx(-0.5));
}

TEST_CASE("slope jumps and cost match hand computation") {
  PiecewiseLinear1D f;
  f.knots = {0.0, 1.0, 3.0};
  f.values = {0.0, 2.0, 1.0};
  f.left_slope = 0.0;
  f.right_slope = 0.0;
  const auto j = f.slope_jumps();
  REQUIRE(j.size() == 3);
  CHECK(j[0] == doctest::Approx(2.0));
  CHECK(j[1] == doctest::Approx(-2.5));
  CHECK(j[2] == doctest::Approx(0.5));
  // TV of f' = 5; |left+right| = 0 so cost is the jump sum.
  CHECK(f.representation_cost() == doctest::Approx(5.0));

  // A pure line through two knots: zero jump sum but |m + m| floor.
  PiecewiseLinear1D line;
  line.knots = {0.0, 1.0};
  line.values = {0.0, 3.0};
  line.left_slope = 3.0;
  line.right_slope = 3.0;
  CHECK(line.representation_cost() == doctest::Approx(6.0));
}

TEST_CASE("ramp profile") {
  const PiecewiseLinear1D r = ramp_profile(0.2, 1.8, 1.25);
  CHECK(r.eval(0.0) == doctest::Approx(0.0));
  CHECK(r.eval(0.2) == doctest::Approx(0.0));
  CHECK(r.eval(1.0) == doctest::Approx(1.0));
  CHECK(r.eval(1.8) == doctest::Approx(2.0));
  CHECK(r.eval(5.0) == doctest::Approx(2.0));
  CHECK(r.representation_cost() == doctest::Approx(2.5));
}

TEST_CASE("dedup merges coincident knots preserving the function") {
  PiecewiseLinear1D f;
  f.knots = {0.0, 1.0, 1.0 + 1e-15, 2.0};
  f.values = {0.0, 1.0, 1.0, 0.5};
  f.left_slope = 0.0;
  f.right_slope = 0.0;
  f.dedup_knots();
  CHECK(f.knots.size() == 3);
  CHECK(f.eval(1.5) == doctest::Approx(0.75));
  f.validate();
}

TEST_CASE("validate rejects inconsistent knot lists") {
  PiecewiseLinear1D f;
  f.knots = {1.0, 0.0};
  f.values = {0.0, 0.0};
  CHECK_THROWS_AS(f.validate(), Error);
  f.knots = {0.0, 1.0};
  f.values = {0.0};
  CHECK_THROWS_AS(f.validate(), Error);
}
