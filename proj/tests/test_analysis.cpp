#include <cmath>

#include "doctest.h"
#include "mincost/analysis.hpp"
#include "mincost/closed_form.hpp"
#include "mincost/errors.hpp"
#include "mincost/rng.hpp"

using namespace mincost;

namespace {
NoisyDataset two_points_pm(double eps) {
  NoisyDataset nd;
  nd.clean.points = {Vec::Zero(1), Vec::Constant(1, 1.0)};
  nd.eps_min = {-eps, -eps};
  nd.eps_max = {eps, eps};
  nd.samples.resize(2);
  return nd;
}
}  // namespace

TEST_CASE("mse of the identity map is sigma^2 d") {
  CleanDataset ds1;
  ds1.points = {Vec::Zero(1), Vec::Constant(1, 3.0)};
  const auto id = [](const Vec& y) { return y; };
  CHECK(mse_vs_prior(id, Prior::discrete(ds1), 0.7, MseMethod::quadrature()) ==
        doctest::Approx(0.49).epsilon(1e-10));
  CleanDataset ds3;
  ds3.points = {Vec::Zero(3)};
  CHECK(mse_vs_prior(id, Prior::discrete(ds3), 0.5, MseMethod::mc(400000, 3)) ==
        doctest::Approx(0.75).epsilon(0.02));
}

TEST_CASE("mse of a constant map is noise-free prior variance plus bias") {
  CleanDataset ds;
  ds.points = {Vec::Constant(1, -1.0), Vec::Constant(1, 1.0)};
  const auto zero = [](const Vec& y) { return Vec::Zero(y.size()); };
  CHECK(mse_vs_prior(zero, Prior::discrete(ds), 0.9, MseMethod::quadrature()) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("quadrature agrees with monte carlo on the 1d interpolant") {
  const NoisyDataset nd = two_points_pm(0.1);
  const PiecewiseLinear1D f = build_1d(nd);
  const auto fv = [&](const Vec& y) { return Vec::Constant(1, f.eval(y[0])); };
  const Prior prior = Prior::discrete(nd.clean);
  const double q = mse_vs_prior(fv, prior, 0.05, MseMethod::quadrature());
  const double m = mse_vs_prior(fv, prior, 0.05, MseMethod::mc(500000, 9));
  CHECK(q == doctest::Approx(m).epsilon(0.02));
  CHECK(q < 0.05 * 0.05);  // beats the identity denoiser
}

TEST_CASE("uniform density prior is supported in 1d only") {
  const auto id = [](const Vec& y) { return y; };
  const Prior u = Prior::uniform1d(0.0, 1.0);
  CHECK(mse_vs_prior(id, u, 0.2, MseMethod::quadrature()) ==
        doctest::Approx(0.04).epsilon(1e-8));
  // Quadrature is univariate-only.
  CleanDataset ds2;
  ds2.points = {Vec::Zero(2)};
  CHECK_THROWS_AS(
      mse_vs_prior(id, Prior::discrete(ds2), 0.2, MseMethod::quadrature()),
      UnsupportedDensity);
}

TEST_CASE("fixed point between two clusters at {0,1} +- 0.1 is one half") {
  const auto fps = fixed_points_1d(two_points_pm(0.1));
  REQUIRE(fps.size() == 1);
  CHECK(fps[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("fixed points respect asymmetric noise intervals") {
  NoisyDataset nd = two_points_pm(0.1);
  nd.eps_min = {-0.1, -0.3};
  nd.eps_max = {0.2, 0.1};
  // y = (x2*emax1 - x1*emin2) / (emax1 - emin2) = (0.2 + 0) / 0.5 = 0.4.
  const auto fps = fixed_points_1d(nd);
  REQUIRE(fps.size() == 1);
  CHECK(fps[0] == doctest::Approx(0.4).epsilon(1e-12));
  // Verify it really is a fixed point of the interpolant.
  const PiecewiseLinear1D f = build_1d(nd);
  CHECK(f.eval(fps[0]) == doctest::Approx(fps[0]).epsilon(1e-12));
}

TEST_CASE("interpolant contracts toward the clean set away from fixed points") {
  const NoisyDataset nd = two_points_pm(0.1);
  const PiecewiseLinear1D f = build_1d(nd);
  std::vector<double> queries;
  for (double y = -2.0; y <= 3.0; y += 1e-3) queries.push_back(y);
  const auto rep = contractivity_1d(f, nd, queries, 0.05);
  CHECK(rep.alpha_observed < 1.0);
  REQUIRE(rep.excluded_fixed_points.size() == 1);
  CHECK(rep.excluded_fixed_points[0] == doctest::Approx(0.5));
  // On a plateau the output is exactly a clean point: ratio 0 there.
  const auto plateau = contractivity_1d(f, nd, {0.05}, 0.05);
  CHECK(plateau.alpha_observed == doctest::Approx(0.0));
  // Without the exclusion band the ratio approaches 1 near 0.5.
  const auto tight = contractivity_1d(f, nd, {0.499}, 1e-6);
  CHECK(tight.alpha_observed > 0.99);
}

TEST_CASE("contractivity on random well-separated instances") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    CounterRng rng(seed, 0xc0);
    NoisyDataset nd;
    double x = 0;
    for (int n = 0; n < 4; ++n) {
      x += 1.0 + rng.uniform();
      nd.clean.points.push_back(Vec::Constant(1, x));
      nd.eps_min.push_back(-0.2 - 0.1 * rng.uniform());
      nd.eps_max.push_back(0.2 + 0.1 * rng.uniform());
    }
    nd.samples.resize(4);
    const PiecewiseLinear1D f = build_1d(nd);
    std::vector<double> queries;
    for (double y = -1.0; y <= x + 2.0; y += 3e-3) queries.push_back(y);
    const auto rep = contractivity_1d(f, nd, queries, 0.05);
    CHECK(rep.alpha_observed < 1.0);
    CHECK(rep.excluded_fixed_points.size() == 3);
  }
}

TEST_CASE("rank-one denoisers commute with projection onto their span") {
  // Colinear points in R^3: the denoiser output lives on the line and only
  // depends on the coordinate along it.
  Vec u(3);
  u << 1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0;
  const RankOneSumDenoiser f = build_colinear(u, {-1.0, 0.5, 2.0}, 0.2);
  CleanDataset ds;
  for (double c : {-1.0, 0.5, 2.0}) ds.points.push_back(c * u);
  const auto fit = fit_subspace(ds);
  REQUIRE(fit.rank == 1);
  std::vector<Vec> queries;
  CounterRng rng(12, 4);
  for (int t = 0; t < 100; ++t) {
    Vec y(3);
    for (int i = 0; i < 3; ++i) y[i] = 3 * rng.normal();
    queries.push_back(y);
  }
  const auto fv = [&](const Vec& y) { return f.eval(y); };
  CHECK(subspace_property_check(fv, fit.basis, queries) <= 1e-10);
  // A map with an off-subspace offset must fail the check.
  const auto shifted = [&](const Vec& y) {
    Vec out = f.eval(y);
    out[2] += 0.5;
    return out;
  };
  CHECK(subspace_property_check(shifted, fit.basis, queries) > 0.1);
}

TEST_CASE("alignment of the exact obtuse-simplex network is perfect") {
  CleanDataset ds;
  for (auto [a, b] : {std::pair{0.0, 0.0}, {2.0, 0.0}, {-1.0, 2.0}}) {
    Vec v(2);
    v << a, b;
    ds.points.push_back(v);
  }
  const GeometryTag tag = classify_simplex(ds);
  REQUIRE(tag.kind == GeometryKind::ObtuseSimplex);
  const auto [dirs, label] = reference_directions(ds, tag);
  CHECK(label == "edges");
  REQUIRE(dirs.size() == 2);
  const ShallowNet net = from_closed_form(build_obtuse_simplex(ds, 0, 0.2));
  const auto rep = alignment_report(net, dirs, label);
  CHECK(rep.min_abs_cos >= 1.0 - 1e-9);
  // Each ramp profile realizes as two ReLU units.
  CHECK(rep.units.size() == 4);
  const std::string csv = alignment_to_csv(rep);
  CHECK(csv.substr(0, csv.find('\n')).substr(0, 21) == "unit,strength,abs_cos");
}

TEST_CASE("alignment requires significant units") {
  const ShallowNet net = make_net(2, 2, false);  // all-zero weights
  std::vector<Vec> dirs = {Vec::Unit(2, 0)};
  CHECK_THROWS_AS(alignment_report(net, dirs, "edges"), NoSignificantUnits);
}

TEST_CASE("face normals for the acute triangle") {
  CleanDataset ds;
  for (auto [a, b] : {std::pair{0.0, 0.0}, {3.0, 0.0}, {1.0, 2.0}}) {
    Vec v(2);
    v << a, b;
    ds.points.push_back(v);
  }
  const GeometryTag tag = classify_simplex(ds);
  REQUIRE(tag.kind == GeometryKind::AcuteSimplex);
  const auto [dirs, label] = reference_directions(ds, tag);
  CHECK(label == "face-normals");
  REQUIRE(dirs.size() == 3);
  // Each direction is a unit vector orthogonal to the opposite edge.
  for (size_t n = 0; n < 3; ++n)
    CHECK(dirs[n].norm() == doctest::Approx(1.0));
  // Vertex 0's direction is orthogonal to edge (1,2).
  const Vec edge = ds.points[2] - ds.points[1];
  bool found = false;
  for (const Vec& dir : dirs)
    if (std::abs(dir.dot(edge)) <= 1e-9 * edge.norm()) found = true;
  CHECK(found);
}
