#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>

#include <Eigen/Dense>

#include "depeq/curve22.hpp"
#include "depeq/invariants.hpp"
#include "depeq/numeric.hpp"
#include "depeq/poly.hpp"

namespace depeq {

namespace {

// det K(x1,x2) of a 2x2 game has degree <= 2 in each payoff coordinate;
// kept as a 3x3 coefficient table for fast evaluation and gradients
struct DetSurface {
  double c[3][3] = {};

  double eval(double x, double y) const {
    double r = 0;
    for (int i = 2; i >= 0; --i) {
      double row = 0;
      for (int j = 2; j >= 0; --j) row = row * y + c[i][j];
      r = r * x + row;
    }
    return r;
  }
  double dx(double x, double y) const {
    double r = 0;
    for (int i = 2; i >= 1; --i) {
      double row = 0;
      for (int j = 2; j >= 0; --j) row = row * y + c[i][j];
      r = r * x + i * row;
    }
    return r;
  }
  double dy(double x, double y) const {
    double r = 0;
    for (int i = 2; i >= 0; --i) {
      double row = 0;
      for (int j = 2; j >= 1; --j) row = row * y + j * c[i][j];
      r = r * x + row;
    }
    return r;
  }
};

// Newton-project x onto the zero level set of f (a few damped steps)
void project_onto_curve(const DetSurface& f, double& x, double& y) {
  for (int it = 0; it < 6; ++it) {
    double v = f.eval(x, y), gx = f.dx(x, y), gy = f.dy(x, y);
    double g2 = gx * gx + gy * gy;
    if (g2 == 0) return;
    x -= v * gx / g2;
    y -= v * gy / g2;
  }
}

DetSurface det_surface(const Game& g) {
  std::vector<std::string> ring = {"x1", "x2"};
  auto lin = [&](int var, const Rat& v) {
    return MultiPoly::variable(ring, var) - MultiPoly::constant(ring, v);
  };
  MultiPoly zero(ring);
  // columns p11, p12, p21, p22; block rows: player 1 strategies, player 2
  std::vector<std::vector<MultiPoly>> K = {
      {lin(0, g.payoff[0][0]), lin(0, g.payoff[0][1]), zero, zero},
      {zero, zero, lin(0, g.payoff[0][2]), lin(0, g.payoff[0][3])},
      {lin(1, g.payoff[1][0]), zero, lin(1, g.payoff[1][2]), zero},
      {zero, lin(1, g.payoff[1][1]), zero, lin(1, g.payoff[1][3])}};
  MultiPoly det = det_poly(std::move(K));
  DetSurface s;
  for (const auto& [m, coeff] : det.terms())
    s.c[m.e[0]][m.e[1]] = rat_double(coeff);
  return s;
}

// lift x to the probability simplex through the kernel direction of K(x);
// the least singular direction is used so that points slightly off the
// curve still lift to a nearby distribution
bool lift_point(const Game& g, double x1, double x2, std::array<double, 4>& p) {
  Eigen::Matrix4d K;
  K << x1 - rat_double(g.payoff[0][0]), x1 - rat_double(g.payoff[0][1]), 0, 0,
      0, 0, x1 - rat_double(g.payoff[0][2]), x1 - rat_double(g.payoff[0][3]),
      x2 - rat_double(g.payoff[1][0]), 0, x2 - rat_double(g.payoff[1][2]), 0,
      0, x2 - rat_double(g.payoff[1][1]), 0, x2 - rat_double(g.payoff[1][3]);
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(K, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(2) < 1e-8 * sv(0)) return false;  // kernel is not a single line
  Eigen::Vector4d v = svd.matrixV().col(3);
  double sum = v.sum();
  if (std::abs(sum) < 1e-9 * v.cwiseAbs().sum()) return false;
  for (int i = 0; i < 4; ++i) p[i] = v(i) / sum;
  return true;
}

bool in_simplex(const std::array<double, 4>& p, double tol = 1e-9) {
  return std::min(std::min(p[0], p[1]), std::min(p[2], p[3])) >= -tol;
}

struct Tracer {
  const Game& g;
  DetSurface f;
  double lo[2], hi[2];
  int res, rf;

  double sx(long i) const { return lo[0] + (hi[0] - lo[0]) * i / (res * (double)rf); }
  double sy(long j) const { return lo[1] + (hi[1] - lo[1]) * j / (res * (double)rf); }

  // crossing points live on sub-grid edges; key = (ix, iy, axis)
  struct EdgeKey {
    long ix, iy;
    int axis;  // 0: edge from (ix,iy) to (ix+1,iy); 1: to (ix,iy+1)
    bool operator<(const EdgeKey& o) const {
      return std::tie(ix, iy, axis) < std::tie(o.ix, o.iy, o.axis);
    }
  };

  std::map<EdgeKey, int> point_id;
  std::vector<std::array<double, 2>> points;
  std::vector<std::array<int, 2>> segments;

  int edge_point(const EdgeKey& k, double va, double vb) {
    auto it = point_id.find(k);
    if (it != point_id.end()) return it->second;
    double t = (va == vb) ? 0.5 : va / (va - vb);
    t = std::clamp(t, 0.0, 1.0);
    double x = sx(k.ix), y = sy(k.iy);
    if (k.axis == 0)
      x = sx(k.ix) + t * (sx(k.ix + 1) - sx(k.ix));
    else
      y = sy(k.iy) + t * (sy(k.iy + 1) - sy(k.iy));
    project_onto_curve(f, x, y);
    int id = static_cast<int>(points.size());
    points.push_back({x, y});
    point_id[k] = id;
    return id;
  }

  // marching-squares segments of one sub-cell with corner values v00..v11
  void emit_cell(long ix, long iy, double v00, double v10, double v01,
                 double v11) {
    auto neg = [](double v) { return v < 0; };
    int code = neg(v00) | (neg(v10) << 1) | (neg(v11) << 2) | (neg(v01) << 3);
    if (code == 0 || code == 15) return;
    EdgeKey bottom{ix, iy, 0}, top{ix, iy + 1, 0};
    EdgeKey left{ix, iy, 1}, right{ix + 1, iy, 1};
    auto seg = [&](const EdgeKey& a, double a0, double a1, const EdgeKey& b,
                   double b0, double b1) {
      int p = edge_point(a, a0, a1), q = edge_point(b, b0, b1);
      segments.push_back({p, q});
    };
    switch (code) {
      case 1: case 14: seg(bottom, v00, v10, left, v00, v01); break;
      case 2: case 13: seg(bottom, v00, v10, right, v10, v11); break;
      case 3: case 12: seg(left, v00, v01, right, v10, v11); break;
      case 4: case 11: seg(top, v01, v11, right, v10, v11); break;
      case 6: case 9:  seg(bottom, v00, v10, top, v01, v11); break;
      case 7: case 8:  seg(top, v01, v11, left, v00, v01); break;
      case 5: case 10: {
        // saddle: split by the center sample
        double cx = 0.5 * (sx(ix) + sx(ix + 1)), cy = 0.5 * (sy(iy) + sy(iy + 1));
        bool cneg = neg(f.eval(cx, cy));
        bool corner00 = neg(v00);
        if (cneg == corner00) {
          seg(bottom, v00, v10, right, v10, v11);
          seg(top, v01, v11, left, v00, v01);
        } else {
          seg(bottom, v00, v10, left, v00, v01);
          seg(top, v01, v11, right, v10, v11);
        }
        break;
      }
      default: break;
    }
  }
};

ArcEndpoint classify_endpoint(const Game& g, const DetSurface& f, double x,
                              double y, double vanish_tol) {
  project_onto_curve(f, x, y);
  ArcEndpoint ep;
  ep.x = {x, y};
  std::array<double, 4> p{};
  if (!lift_point(g, x, y, p)) return ep;
  ep.lift = p;
  int nvanish = 0, last_vanish = -1, argmax = 0;
  for (int k = 0; k < 4; ++k) {
    if (std::abs(p[k]) < vanish_tol) {
      ++nvanish;
      last_vanish = k;
    }
    if (std::abs(p[k]) > std::abs(p[argmax])) argmax = k;
  }
  int idx = -1;
  if (nvanish == 3) {
    ep.kind = 'E';
    idx = argmax;
  } else if (nvanish == 1) {
    ep.kind = 'F';
    idx = last_vanish;
  }
  if (idx >= 0) {
    ep.i = idx / 2 + 1;
    ep.j = idx % 2 + 1;
  }
  return ep;
}

}  // namespace

std::string ArcEndpoint::label() const {
  if (kind == '?') return "?";
  return std::string(1, kind) + std::to_string(i) + std::to_string(j);
}

std::string TracedArc::label() const {
  if (closed) return "loop";
  std::string a = ends[0].label(), b = ends[1].label();
  if (b < a) std::swap(a, b);
  return a + "-" + b;
}

ArcReport classify_arcs(const Game& g, const ArcTracerOptions& opt) {
  if (g.format.dims != std::vector<int>{2, 2})
    throw std::invalid_argument("expected a 2x2 game");
  ArcReport report;
  report.sign_condition_holds = sign_condition_22(g);

  SpohnCubic sc = spohn_cubic(g);
  if (cubic_discriminant(family_embed(sc.c)) == 0)
    throw std::invalid_argument(
        "singular curve: the payoff-space discriminant vanishes");

  Tracer tr{g, det_surface(g), {}, {}, opt.base_resolution, opt.refine_factor};
  for (int d = 0; d < 2; ++d) {
    double mn = rat_double(g.payoff[d][0]), mx = mn;
    for (int k = 1; k < 4; ++k) {
      double v = rat_double(g.payoff[d][k]);
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    double pad = 0.05 * std::max(mx - mn, 1e-6);
    tr.lo[d] = mn - pad;
    tr.hi[d] = mx + pad;
  }

  // base grid: find cells whose corners change sign, refine only those
  const int R = opt.base_resolution, F = opt.refine_factor;
  std::vector<double> grid((R + 1) * (size_t)(R + 1));
  for (int i = 0; i <= R; ++i)
    for (int j = 0; j <= R; ++j)
      grid[i * (size_t)(R + 1) + j] =
          tr.f.eval(tr.sx((long)i * F), tr.sy((long)j * F));
  std::vector<double> sub((F + 1) * (size_t)(F + 1));
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < R; ++j) {
      double v00 = grid[i * (size_t)(R + 1) + j];
      double v10 = grid[(i + 1) * (size_t)(R + 1) + j];
      double v01 = grid[i * (size_t)(R + 1) + j + 1];
      double v11 = grid[(i + 1) * (size_t)(R + 1) + j + 1];
      double mn = std::min(std::min(v00, v10), std::min(v01, v11));
      double mx = std::max(std::max(v00, v10), std::max(v01, v11));
      if (mn > 0 || mx < 0) continue;
      for (int a = 0; a <= F; ++a)
        for (int b = 0; b <= F; ++b)
          sub[a * (size_t)(F + 1) + b] =
              tr.f.eval(tr.sx((long)i * F + a), tr.sy((long)j * F + b));
      for (int a = 0; a < F; ++a)
        for (int b = 0; b < F; ++b)
          tr.emit_cell((long)i * F + a, (long)j * F + b,
                       sub[a * (size_t)(F + 1) + b],
                       sub[(a + 1) * (size_t)(F + 1) + b],
                       sub[a * (size_t)(F + 1) + b + 1],
                       sub[(a + 1) * (size_t)(F + 1) + b + 1]);
    }

  // chain the segments into polylines (crossing points have degree <= 2)
  const size_t np = tr.points.size();
  std::vector<std::vector<int>> adj(np);
  for (size_t s = 0; s < tr.segments.size(); ++s) {
    adj[tr.segments[s][0]].push_back(static_cast<int>(s));
    adj[tr.segments[s][1]].push_back(static_cast<int>(s));
  }
  std::vector<bool> seg_used(tr.segments.size(), false);
  std::vector<std::vector<int>> chains;
  std::vector<bool> chain_closed;
  auto walk = [&](int start) {
    std::vector<int> chain{start};
    int cur = start, prev_seg = -1;
    while (true) {
      int next_seg = -1;
      for (int s : adj[cur])
        if (!seg_used[s] && s != prev_seg) {
          next_seg = s;
          break;
        }
      if (next_seg < 0) break;
      seg_used[next_seg] = true;
      cur = tr.segments[next_seg][0] == cur ? tr.segments[next_seg][1]
                                            : tr.segments[next_seg][0];
      chain.push_back(cur);
      prev_seg = next_seg;
      if (cur == start) break;
    }
    return chain;
  };
  for (size_t p = 0; p < np; ++p)
    if (adj[p].size() == 1) {
      bool fresh = false;
      for (int s : adj[p]) fresh |= !seg_used[s];
      if (!fresh) continue;
      chains.push_back(walk(static_cast<int>(p)));
      chain_closed.push_back(false);
    }
  for (size_t s = 0; s < tr.segments.size(); ++s)
    if (!seg_used[s]) {
      seg_used[s] = true;
      auto chain = walk(tr.segments[s][1]);
      chain.insert(chain.begin(), tr.segments[s][0]);
      chains.push_back(std::move(chain));
      chain_closed.push_back(chains.back().front() == chains.back().back());
    }

  // lift every chain vertex; maximal in-simplex runs are the arcs
  report.conclusive = true;
  auto endpoint_between = [&](int id_in, int id_out) {
    std::array<double, 2> u = tr.points[id_in], w = tr.points[id_out];
    for (int it = 0; it < 60; ++it) {
      std::array<double, 2> m{0.5 * (u[0] + w[0]), 0.5 * (u[1] + w[1])};
      project_onto_curve(tr.f, m[0], m[1]);
      std::array<double, 4> p{};
      bool ok = lift_point(g, m[0], m[1], p) && in_simplex(p);
      (ok ? u : w) = m;
    }
    return classify_endpoint(g, tr.f, u[0], u[1], opt.vanish_tol);
  };
  for (size_t ci = 0; ci < chains.size(); ++ci) {
    std::vector<int> verts = chains[ci];
    bool closed = chain_closed[ci];
    if (closed) verts.pop_back();  // drop the repeated first vertex
    auto in_at = [&](int id) {
      std::array<double, 4> p{};
      return lift_point(g, tr.points[id][0], tr.points[id][1], p) &&
             in_simplex(p);
    };
    std::vector<bool> in(verts.size());
    size_t inside = 0;
    for (size_t t = 0; t < verts.size(); ++t) inside += in[t] = in_at(verts[t]);
    if (inside == 0) continue;
    if (closed && inside == verts.size()) {
      TracedArc arc;
      for (int id : verts) arc.samples.push_back(tr.points[id]);
      arc.samples.push_back(tr.points[verts[0]]);
      arc.closed = true;
      report.arcs.push_back(std::move(arc));
      report.conclusive = false;
      report.note = "closed curve component inside the simplex";
      continue;
    }
    if (closed) {
      // rotate so the scan starts outside and runs never wrap
      size_t s0 = 0;
      while (in[s0]) ++s0;
      std::rotate(verts.begin(), verts.begin() + s0, verts.end());
      std::rotate(in.begin(), in.begin() + s0, in.end());
    }

    const size_t m = verts.size();
    size_t step = 0;
    while (step < m) {
      if (!in[step]) {
        ++step;
        continue;
      }
      size_t a = step;
      while (step < m && in[step]) ++step;
      size_t b = step - 1;
      TracedArc arc;
      bool have0 = a > 0 || closed;
      bool have1 = b + 1 < m || closed;
      if (have0)
        arc.ends[0] = endpoint_between(verts[a], verts[a == 0 ? m - 1 : a - 1]);
      if (have1) arc.ends[1] = endpoint_between(verts[b], verts[(b + 1) % m]);
      if (!have0 || !have1) {
        // an arc reaching the tracing box would have left the payoff hull
        report.conclusive = false;
        if (report.note.empty()) report.note = "arc touches the tracing box";
      }
      if (have0) arc.samples.push_back(arc.ends[0].x);
      for (size_t k = a; k <= b; ++k) arc.samples.push_back(tr.points[verts[k]]);
      if (have1) arc.samples.push_back(arc.ends[1].x);
      if (arc.ends[0].kind == '?' || arc.ends[1].kind == '?') {
        report.conclusive = false;
        if (report.note.empty()) report.note = "endpoint classification failed";
      }
      report.arcs.push_back(std::move(arc));
    }
  }

  report.component_count = static_cast<int>(report.arcs.size());
  return report;
}

}  // namespace depeq
