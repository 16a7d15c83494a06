#include "mincost/network.hpp"

#include <cmath>

#include "json.hpp"
#include "mincost/errors.hpp"
#include "mincost/rng.hpp"

namespace mincost {

Vec ShallowNet::forward(const Vec& y) const {
  if (y.size() != d) throw DimensionMismatch("forward: wrong input dim");
  Vec out = use_skip ? Vec(V * y + c) : Vec(Vec::Zero(d));
  for (int k = 0; k < K; ++k) {
    const double pre = w[k].dot(y) + b[k];
    if (pre > 0) out += a[k] * pre;
  }
  return out;
}

int ShallowNet::num_params() const {
  return 2 * K * d + K + (use_skip ? d * d + d : 0);
}

Vec ShallowNet::flatten() const {
  Vec theta(num_params());
  int p = 0;
  for (int k = 0; k < K; ++k)
    for (int i = 0; i < d; ++i) theta[p++] = a[k][i];
  for (int k = 0; k < K; ++k)
    for (int i = 0; i < d; ++i) theta[p++] = w[k][i];
  for (int k = 0; k < K; ++k) theta[p++] = b[k];
  if (use_skip) {
    for (int r = 0; r < d; ++r)
      for (int col = 0; col < d; ++col) theta[p++] = V(r, col);
    for (int i = 0; i < d; ++i) theta[p++] = c[i];
  }
  return theta;
}

void ShallowNet::unflatten(const Vec& theta) {
  if (theta.size() != num_params()) throw DimensionMismatch("unflatten: bad size");
  int p = 0;
  for (int k = 0; k < K; ++k)
    for (int i = 0; i < d; ++i) a[k][i] = theta[p++];
  for (int k = 0; k < K; ++k)
    for (int i = 0; i < d; ++i) w[k][i] = theta[p++];
  for (int k = 0; k < K; ++k) b[k] = theta[p++];
  if (use_skip) {
    for (int r = 0; r < d; ++r)
      for (int col = 0; col < d; ++col) V(r, col) = theta[p++];
    for (int i = 0; i < d; ++i) c[i] = theta[p++];
  }
}

ShallowNet make_net(int d, int K, bool use_skip) {
  ShallowNet net;
  net.d = d;
  net.K = K;
  net.use_skip = use_skip;
  net.a.assign(K, Vec::Zero(d));
  net.w.assign(K, Vec::Zero(d));
  net.b.assign(K, 0.0);
  net.V = use_skip ? Mat::Zero(d, d) : Mat();
  net.c = use_skip ? Vec(Vec::Zero(d)) : Vec();
  return net;
}

double penalty(const ShallowNet& net) {
  double s = 0.0;
  for (int k = 0; k < net.K; ++k)
    s += net.a[k].squaredNorm() + net.w[k].squaredNorm();
  return 0.5 * s;
}

double balanced_cost(const ShallowNet& net) {
  double s = 0.0;
  for (int k = 0; k < net.K; ++k) s += net.a[k].norm() * net.w[k].norm();
  return s;
}

std::pair<double, Vec> loss_and_grad(const ShallowNet& net, const Batch& batch,
                                     double lambda) {
  if (batch.inputs.empty()) throw EmptyBatch("loss_and_grad: empty batch");
  if (batch.inputs.size() != batch.targets.size())
    throw DimensionMismatch("loss_and_grad: inputs/targets size mismatch");
  const int d = net.d, K = net.K;
  const int B = static_cast<int>(batch.inputs.size());

  // Batched formulation: columns are samples, so the whole pass is a small
  // set of matrix products. Scratch buffers persist across calls; a training
  // run makes millions of calls with identical shapes.
  struct Scratch {
    Mat Y, X, W, A, pre, act, mask, resid, GH, gA, gW, gVm;
    Vec bvec, gB, gC;
  };
  thread_local Scratch sc;
  sc.Y.resize(d, B);
  sc.X.resize(d, B);
  for (int s = 0; s < B; ++s) {
    if (batch.inputs[s].size() != d || batch.targets[s].size() != d)
      throw DimensionMismatch("loss_and_grad: wrong sample dim");
    sc.Y.col(s) = batch.inputs[s];
    sc.X.col(s) = batch.targets[s];
  }
  sc.W.resize(K, d);
  sc.A.resize(d, K);
  sc.bvec.resize(K);
  for (int k = 0; k < K; ++k) {
    sc.W.row(k) = net.w[k].transpose();
    sc.A.col(k) = net.a[k];
    sc.bvec[k] = net.b[k];
  }

  sc.pre.resize(K, B);
  sc.pre.noalias() = sc.W * sc.Y;
  sc.pre.colwise() += sc.bvec;
  sc.act = sc.pre.cwiseMax(0.0);
  sc.resid.resize(d, B);
  sc.resid.noalias() = sc.A * sc.act;
  sc.resid -= sc.X;
  if (net.use_skip) {
    sc.resid.noalias() += net.V * sc.Y;
    sc.resid.colwise() += net.c;
  }
  const double data_loss = sc.resid.squaredNorm() / B;

  sc.resid *= 2.0 / B;  // now holds d loss / d out
  // Backprop through the ReLU: zero where the pre-activation is <= 0.
  sc.GH.resize(K, B);
  sc.GH.noalias() = sc.A.transpose() * sc.resid;
  sc.GH.array() *= (sc.pre.array() > 0.0).cast<double>();

  Vec grad = Vec::Zero(net.num_params());
  double* ga = grad.data();
  double* gw = ga + K * d;
  double* gb = gw + K * d;
  double* gV = gb + K;
  double* gc = gV + d * d;

  sc.gA.resize(d, K);
  sc.gA.noalias() = sc.resid * sc.act.transpose();
  sc.gW.resize(K, d);
  sc.gW.noalias() = sc.GH * sc.Y.transpose();
  sc.gB = sc.GH.rowwise().sum();
  for (int k = 0; k < K; ++k) {
    for (int i = 0; i < d; ++i) {
      ga[k * d + i] = sc.gA(i, k);
      gw[k * d + i] = sc.gW(k, i);
    }
    gb[k] = sc.gB[k];
  }
  if (net.use_skip) {
    sc.gVm.resize(d, d);
    sc.gVm.noalias() = sc.resid * sc.Y.transpose();
    sc.gC = sc.resid.rowwise().sum();
    for (int r = 0; r < d; ++r)
      for (int col = 0; col < d; ++col) gV[r * d + col] = sc.gVm(r, col);
    for (int i = 0; i < d; ++i) gc[i] = sc.gC[i];
  }

  double loss = data_loss + lambda * penalty(net);
  if (lambda != 0.0)
    for (int k = 0; k < K; ++k)
      for (int i = 0; i < d; ++i) {
        ga[k * d + i] += lambda * net.a[k][i];
        gw[k * d + i] += lambda * net.w[k][i];
      }
  return {loss, grad};
}

std::vector<ExtractedUnit> extract_units(const ShallowNet& net, double significance) {
  double total = balanced_cost(net);
  std::vector<ExtractedUnit> out;
  for (int k = 0; k < net.K; ++k) {
    const double wn = net.w[k].norm(), an = net.a[k].norm();
    const double strength = wn * an;
    if (wn == 0.0) continue;
    if (strength < significance * total || (significance > 0 && strength == 0.0))
      continue;
    ExtractedUnit u;
    u.normal = net.w[k] / wn;
    u.offset = -net.b[k] / wn;
    u.strength = strength;
    u.outer_dir = an > 0 ? Vec(net.a[k] / an) : Vec(Vec::Zero(net.d));
    out.push_back(std::move(u));
  }
  return out;
}

namespace {

// One network unit per slope change of a rank-one unit's profile.
void append_profile_units(ShallowNet& net, const Vec& in_dir, const Vec& out_dir,
                          const Vec& anchor, const PiecewiseLinear1D& profile) {
  const auto jumps = profile.slope_jumps();
  for (size_t j = 0; j < jumps.size(); ++j) {
    if (jumps[j] == 0.0) continue;
    net.a.push_back(out_dir * jumps[j]);
    net.w.push_back(in_dir);
    net.b.push_back(-(in_dir.dot(anchor) + profile.knots[j]));
    ++net.K;
  }
}

// Align the output bias so forward matches the target at a reference point
// where no unit is active.
void fix_constant(ShallowNet& net, const Vec& ref, const Vec& want) {
  net.c += want - net.forward(ref);
}

}  // namespace

ShallowNet from_closed_form(const PiecewiseLinear1D& f) {
  ShallowNet net = make_net(1, 0, true);
  Vec e1 = Vec::Ones(1);
  append_profile_units(net, e1, e1, Vec::Zero(1), f);
  net.V(0, 0) = f.left_slope;
  // Anchor the constant so forward matches eval left of the first knot.
  Vec ref(1);
  ref[0] = f.knots.front() - 1.0;
  Vec want(1);
  want[0] = f.eval(ref[0]);
  fix_constant(net, ref, want);
  return net;
}

ShallowNet from_closed_form(const RankOneSumDenoiser& f) {
  ShallowNet net = make_net(f.d(), 0, true);
  for (const auto& unit : f.units) {
    if (unit.profile.left_slope != 0.0 || unit.profile.right_slope != 0.0)
      throw ModelShapeUnsupported("nonzero boundary slopes in rank-one sum");
    append_profile_units(net, unit.in_dir, unit.out_dir, unit.anchor, unit.profile);
  }
  // All profiles vanish left of their first knot; pick a reference point
  // below every boundary along each unit direction.
  Vec ref = Vec::Zero(f.d());
  bool ok = false;
  for (int tries = 0; tries < 64 && !ok; ++tries) {
    ok = true;
    for (int k = 0; k < net.K; ++k)
      if (net.w[k].dot(ref) + net.b[k] > -1e-9) {
        ok = false;
        break;
      }
    if (!ok) {
      // Push against the mean of the active normals.
      Vec dir = Vec::Zero(f.d());
      for (int k = 0; k < net.K; ++k)
        if (net.w[k].dot(ref) + net.b[k] > -1e-9) dir += net.w[k];
      if (dir.norm() == 0) break;
      ref -= dir * (1.0 + ref.norm());
    }
  }
  fix_constant(net, ref, f.eval(ref));
  return net;
}

ShallowNet init_net(int d, int K, bool use_skip, double data_radius,
                    std::uint64_t seed) {
  ShallowNet net = make_net(d, K, use_skip);
  CounterRng rng(seed, 0xa11ce5eedULL);
  const double ascale = 1.0 / std::sqrt(static_cast<double>(K));
  for (int k = 0; k < K; ++k) {
    Vec wk(d);
    do {
      for (int i = 0; i < d; ++i) wk[i] = rng.normal();
    } while (wk.norm() < 1e-12);
    net.w[k] = wk / wk.norm();
    net.b[k] = (2.0 * rng.uniform() - 1.0) * data_radius;
    for (int i = 0; i < d; ++i) net.a[k][i] = rng.normal() * ascale;
  }
  if (use_skip) net.V = Mat::Identity(d, d);
  return net;
}

namespace {
using nlohmann::json;
}

std::string serialize(const ShallowNet& net) {
  json j;
  j["type"] = "shallow_net";
  j["d"] = net.d;
  j["K"] = net.K;
  j["use_skip"] = net.use_skip;
  auto vec_json = [](const Vec& v) {
    json arr = json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(format_real(v[i]));
    return arr;
  };
  json a = json::array(), w = json::array(), b = json::array();
  for (int k = 0; k < net.K; ++k) {
    a.push_back(vec_json(net.a[k]));
    w.push_back(vec_json(net.w[k]));
    b.push_back(format_real(net.b[k]));
  }
  j["a"] = a;
  j["w"] = w;
  j["b"] = b;
  if (net.use_skip) {
    json V = json::array();
    for (int r = 0; r < net.d; ++r) V.push_back(vec_json(net.V.row(r)));
    j["V"] = V;
    j["c"] = vec_json(net.c);
  }
  return j.dump(2);
}

ShallowNet parse_net(const std::string& text) {
  json j = json::parse(text);
  if (j.at("type") != "shallow_net") throw ConfigParse("unexpected type field");
  const int d = j.at("d").get<int>();
  const int K = j.at("K").get<int>();
  ShallowNet net = make_net(d, K, j.at("use_skip").get<bool>());
  auto vec_from = [d](const json& arr) {
    if (static_cast<int>(arr.size()) != d) throw ConfigParse("bad vector length");
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = std::stod(arr[i].get<std::string>());
    return v;
  };
  for (int k = 0; k < K; ++k) {
    net.a[k] = vec_from(j.at("a")[k]);
    net.w[k] = vec_from(j.at("w")[k]);
    net.b[k] = std::stod(j.at("b")[k].get<std::string>());
  }
  if (net.use_skip) {
    for (int r = 0; r < d; ++r) net.V.row(r) = vec_from(j.at("V")[r]).transpose();
    net.c = vec_from(j.at("c"));
  }
  return net;
}

}  // namespace mincost
