#include "mincost/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "mincost/errors.hpp"

namespace mincost {

Vec RankOneSumDenoiser::eval(const Vec& y) const {
  if (y.size() != offset.size()) throw DimensionMismatch("eval: wrong input dim");
  Vec out = offset;
  for (const auto& unit : units)
    out += unit.out_dir * unit.profile.eval(unit.in_dir.dot(y - unit.anchor));
  return out;
}

PiecewiseLinear1D build_1d(const NoisyDataset& ds) {
  const auto rep = check_well_separated(ds);
  if (!rep.well_separated)
    throw AssumptionViolated("noise intervals not well-separated at index " +
                             std::to_string(rep.failing_index));

  const int n = ds.clean.n();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return ds.clean.points[a][0] < ds.clean.points[b][0];
  });

  PiecewiseLinear1D f;
  for (int i : order) {
    const double x = ds.clean.points[i][0];
    f.knots.push_back(x + ds.eps_min[i]);
    f.values.push_back(x);
    f.knots.push_back(x + ds.eps_max[i]);
    f.values.push_back(x);
  }
  f.left_slope = 0.0;
  f.right_slope = 0.0;
  f.validate();
  return f;
}

namespace {

// f*_1D profile for points at the given coordinates with symmetric
// radius-rho noise intervals.
PiecewiseLinear1D profile_on_coords(const std::vector<double>& coords, double rho) {
  PiecewiseLinear1D f;
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i > 0 && !(coords[i] - coords[i - 1] > 2 * rho))
      throw BallsOverlap("balls overlap between samples " + std::to_string(i - 1) +
                         " and " + std::to_string(i));
    f.knots.push_back(coords[i] - rho);
    f.values.push_back(coords[i]);
    f.knots.push_back(coords[i] + rho);
    f.values.push_back(coords[i]);
  }
  f.validate();
  return f;
}

}  // namespace

RankOneSumDenoiser build_colinear(const Vec& u, const std::vector<double>& coords,
                                  double rho) {
  if (!(rho > 0)) throw Error("rho must be positive");
  std::vector<double> sorted = coords;
  std::sort(sorted.begin(), sorted.end());

  RankOneSumDenoiser f;
  f.offset = Vec::Zero(u.size());
  RankOneUnit unit;
  unit.out_dir = u.normalized();
  unit.in_dir = unit.out_dir;
  unit.anchor = Vec::Zero(u.size());
  unit.profile = profile_on_coords(sorted, rho);
  f.units.push_back(std::move(unit));
  return f;
}

RankOneSumDenoiser build_rays(const GeometryTag& tag, double rho) {
  if (tag.kind != GeometryKind::Rays) throw NotRays("tag is not a rays geometry");
  const int d = static_cast<int>(tag.ray_dirs[0].size());

  RankOneSumDenoiser f;
  f.offset = Vec::Zero(d);
  for (size_t l = 0; l < tag.ray_dirs.size(); ++l) {
    if (!(rho < tag.ray_coords[l].front() / 2))
      throw BallsOverlap("rho too large for first sample on ray " + std::to_string(l));
    std::vector<double> coords{0.0};  // origin sample participates in each profile
    coords.insert(coords.end(), tag.ray_coords[l].begin(), tag.ray_coords[l].end());

    RankOneUnit unit;
    unit.out_dir = tag.ray_dirs[l];
    unit.in_dir = tag.ray_dirs[l];
    unit.anchor = Vec::Zero(d);
    unit.profile = profile_on_coords(coords, rho);
    f.units.push_back(std::move(unit));
  }
  return f;
}

RankOneSumDenoiser build_obtuse_simplex(const CleanDataset& ds, int apex, double rho) {
  ds.validate();
  const int n = ds.n();
  const Vec& x1 = ds.points[apex];
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (i == apex || j == apex) continue;
      if (!((ds.points[i] - x1).dot(ds.points[j] - x1) < 0))
        throw NotObtuse("apex is not obtuse against vertices " + std::to_string(i) +
                        "," + std::to_string(j));
    }

  RankOneSumDenoiser f;
  f.offset = x1;
  for (int i = 0; i < n; ++i) {
    if (i == apex) continue;
    const Vec diff = ds.points[i] - x1;
    const double len = diff.norm();
    if (!(rho < len / 2)) throw BallsOverlap("rho >= |x_n - x_1|/2");
    RankOneUnit unit;
    unit.in_dir = diff / len;
    unit.out_dir = unit.in_dir;
    unit.anchor = x1;
    unit.profile = ramp_profile(rho, len - rho, len / (len - 2 * rho));
    f.units.push_back(std::move(unit));
  }
  return f;
}

namespace {

// Orthogonal projection of x onto the affine hull of `face`.
Vec project_onto_affine_hull(const Vec& x, const std::vector<Vec>& face) {
  const Vec& base = face[0];
  const int d = static_cast<int>(base.size());
  Mat dirs(d, face.size() - 1);
  for (size_t j = 1; j < face.size(); ++j) dirs.col(j - 1) = face[j] - base;
  if (dirs.cols() == 0) return base;
  Vec t = dirs.colPivHouseholderQr().solve(x - base);
  return base + dirs * t;
}

}  // namespace

RankOneSumDenoiser build_acute_simplex(const CleanDataset& ds, double rho,
                                       bool equilateral) {
  ds.validate();
  const int n = ds.n();
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (i == v || j == v) continue;
        if (!((ds.points[i] - ds.points[v]).dot(ds.points[j] - ds.points[v]) > 0))
          throw NotAcute("vertex " + std::to_string(v) + " is not acute");
      }

  // Foot of each vertex on the opposite face, and the median weights.
  std::vector<Vec> feet(n);
  std::vector<double> weights(n);
  for (int v = 0; v < n; ++v) {
    std::vector<Vec> face;
    for (int j = 0; j < n; ++j)
      if (j != v) face.push_back(ds.points[j]);
    feet[v] = project_onto_affine_hull(ds.points[v], face);
    const double h = (ds.points[v] - feet[v]).norm();
    if (!(rho < h / 2)) throw BallsOverlap("rho >= |x_n - z_n|/2");
    weights[v] = 1.0 / h;
  }
  const Vec center = weighted_geometric_median(ds.points, weights, 1e-12, 100000);

  RankOneSumDenoiser f;
  f.offset = center;
  f.conjectural = !equilateral;
  for (int v = 0; v < n; ++v) {
    const Vec axis = ds.points[v] - feet[v];
    const double h = axis.norm();
    const Vec to_center = ds.points[v] - center;
    RankOneUnit unit;
    unit.in_dir = axis / h;
    unit.out_dir = to_center / to_center.norm();
    unit.anchor = feet[v];
    const double a = rho, b = h - rho;
    unit.profile = ramp_profile(a, b, to_center.norm() / (b - a));
    f.units.push_back(std::move(unit));
  }
  return f;
}

RankOneSumDenoiser build_perturbed_rays(const std::vector<std::vector<Vec>>& segments,
                                        double rho, double tol) {
  if (segments.empty()) throw NotRays("no ray chains");
  const int d = static_cast<int>(segments[0][0].size());
  const Vec origin = Vec::Zero(d);

  // Difference vectors per chain (x_0 := origin).
  std::vector<std::vector<Vec>> diffs(segments.size());
  for (size_t l = 0; l < segments.size(); ++l) {
    Vec prev = origin;
    for (const Vec& p : segments[l]) {
      diffs[l].push_back(p - prev);
      prev = p;
    }
  }

  // (A1): successive differences on distinct chains are pairwise obtuse.
  for (size_t l = 0; l < diffs.size(); ++l)
    for (size_t k = l + 1; k < diffs.size(); ++k)
      for (const Vec& a : diffs[l])
        for (const Vec& b : diffs[k])
          if (!(a.dot(b) < -tol))
            throw A1Violated("difference vectors on rays " + std::to_string(l) +
                             "," + std::to_string(k) + " not obtuse");

  RankOneSumDenoiser f;
  f.offset = origin;
  for (size_t l = 0; l < segments.size(); ++l) {
    Vec prev = origin;
    for (size_t nidx = 0; nidx < segments[l].size(); ++nidx) {
      const Vec diff = diffs[l][nidx];
      const double len = diff.norm();
      if (!(len > 2 * rho)) throw BallsOverlap("consecutive balls overlap");
      const Vec u = diff / len;

      // (A2) surrogate: successive balls must sit past this unit's ramp,
      // earlier ones (and every ball on other chains) before it.
      for (size_t m = 0; m < segments[l].size(); ++m) {
        const double t = u.dot(segments[l][m] - prev);
        if (m > nidx && !(t - rho >= len - rho - tol))
          throw A2Violated("ball " + std::to_string(m) + " on ray " +
                           std::to_string(l) + " not nested past segment " +
                           std::to_string(nidx));
        if (m + 1 < nidx && !(t + rho <= rho + tol))
          throw A2Violated("ball " + std::to_string(m) + " on ray " +
                           std::to_string(l) + " re-enters segment " +
                           std::to_string(nidx));
      }

      RankOneUnit unit;
      unit.in_dir = u;
      unit.out_dir = u;
      unit.anchor = prev;
      unit.profile = ramp_profile(rho, len - rho, len / (len - 2 * rho));
      f.units.push_back(std::move(unit));
      prev = segments[l][nidx];
    }
  }
  return f;
}

double representation_cost(const PiecewiseLinear1D& f) {
  return f.representation_cost();
}

double representation_cost(const RankOneSumDenoiser& f) {
  double cost = 0.0;
  for (const auto& unit : f.units) cost += unit.profile.representation_cost();
  return cost;
}

double max_noise_radius(const NoisyDataset& ds) {
  double r = 0.0;
  for (int n = 0; n < ds.clean.n(); ++n)
    for (const auto& y : ds.samples[n])
      r = std::max(r, (y - ds.clean.points[n]).norm());
  return r;
}

namespace {

using nlohmann::json;

json vec_to_json(const Vec& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(format_real(v[i]));
  return arr;
}

Vec vec_from_json(const json& arr) {
  Vec v(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) v[i] = std::stod(arr[i].get<std::string>());
  return v;
}

json profile_to_json(const PiecewiseLinear1D& f) {
  json j;
  json knots = json::array(), values = json::array();
  for (double t : f.knots) knots.push_back(format_real(t));
  for (double x : f.values) values.push_back(format_real(x));
  j["knots"] = knots;
  j["values"] = values;
  j["left_slope"] = format_real(f.left_slope);
  j["right_slope"] = format_real(f.right_slope);
  return j;
}

PiecewiseLinear1D profile_from_json(const json& j) {
  PiecewiseLinear1D f;
  for (const auto& t : j.at("knots")) f.knots.push_back(std::stod(t.get<std::string>()));
  for (const auto& x : j.at("values")) f.values.push_back(std::stod(x.get<std::string>()));
  f.left_slope = std::stod(j.at("left_slope").get<std::string>());
  f.right_slope = std::stod(j.at("right_slope").get<std::string>());
  f.validate();
  return f;
}

}  // namespace

std::string serialize(const RankOneSumDenoiser& f) {
  json j;
  j["type"] = "rank_one_sum";
  j["offset"] = vec_to_json(f.offset);
  j["conjectural"] = f.conjectural;
  j["units"] = json::array();
  for (const auto& unit : f.units) {
    json u;
    u["u"] = vec_to_json(unit.in_dir);
    u["v"] = vec_to_json(unit.out_dir);
    u["z"] = vec_to_json(unit.anchor);
    u["profile"] = profile_to_json(unit.profile);
    j["units"].push_back(u);
  }
  return j.dump(2);
}

RankOneSumDenoiser parse_denoiser(const std::string& text) {
  json j = json::parse(text);
  if (j.at("type") != "rank_one_sum") throw ConfigParse("unexpected type field");
  RankOneSumDenoiser f;
  f.offset = vec_from_json(j.at("offset"));
  f.conjectural = j.value("conjectural", false);
  for (const auto& u : j.at("units")) {
    RankOneUnit unit;
    unit.in_dir = vec_from_json(u.at("u"));
    unit.out_dir = vec_from_json(u.at("v"));
    unit.anchor = vec_from_json(u.at("z"));
    unit.profile = profile_from_json(u.at("profile"));
    f.units.push_back(std::move(unit));
  }
  return f;
}

std::string serialize(const PiecewiseLinear1D& f) {
  json j;
  j["type"] = "pwl1d";
  j["profile"] = profile_to_json(f);
  return j.dump(2);
}

PiecewiseLinear1D parse_profile(const std::string& text) {
  json j = json::parse(text);
  if (j.at("type") != "pwl1d") throw ConfigParse("unexpected type field");
  return profile_from_json(j.at("profile"));
}

}  // namespace mincost
