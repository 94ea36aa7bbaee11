#include "depeq/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "depeq/simplex.hpp"

namespace depeq {

namespace {

// LP data for: maximize t s.t. K P = 0, sum(P) = 1, P >= t.
// Variables are (Q_1..Q_N, t+, t-) with P = Q + t and t = t+ - t-.
void fiber_lp(const KonstanzMatrix& K, std::vector<std::vector<Rat>>& A,
              std::vector<Rat>& b, std::vector<Rat>& c) {
  const size_t R = K.entries.size();
  const size_t N = R ? K.entries[0].size() : 0;
  A.assign(R + 1, std::vector<Rat>(N + 2, Rat(0)));
  for (size_t r = 0; r < R; ++r) {
    Rat rowsum = 0;
    for (size_t j = 0; j < N; ++j) {
      A[r][j] = K.entries[r][j];
      rowsum += K.entries[r][j];
    }
    A[r][N] = rowsum;
    A[r][N + 1] = -rowsum;
  }
  for (size_t j = 0; j < N; ++j) A[R][j] = 1;
  A[R][N] = Rat(static_cast<long>(N));
  A[R][N + 1] = -A[R][N];
  b.assign(R + 1, Rat(0));
  b[R] = 1;
  c.assign(N + 2, Rat(0));
  c[N] = 1;
  c[N + 1] = -1;
}

MembershipResult classify_fiber(const GameFormat& format,
                                const LPResult<Rat>& lp, const Rat& eps) {
  MembershipResult out;
  switch (lp.status) {
    case LPStatus::Infeasible:
      out.fiber_empty = true;
      out.farkas = lp.farkas;
      return out;
    case LPStatus::Optimal:
      break;
    default:
      throw std::logic_error("region_membership: fiber LP cannot be unbounded");
  }
  out.t_star = lp.value;
  out.inside = (eps == 0) ? (lp.value >= 0) : (lp.value > eps);
  if (out.inside) {
    ProbTensor P;
    P.dims = format.dims;
    const size_t N = format.profile_count();
    P.p.resize(N);
    for (size_t j = 0; j < N; ++j) P.p[j] = lp.x[j] + lp.value;
    out.certificate = std::move(P);
  }
  return out;
}

Rat cross(const std::vector<Rat>& o, const std::vector<Rat>& a,
          const std::vector<Rat>& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

std::vector<std::vector<Rat>> hull_2d(std::vector<std::vector<Rat>> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const std::vector<Rat>& p, const std::vector<Rat>& q) {
              if (p[0] != q[0]) return p[0] < q[0];
              return p[1] < q[1];
            });
  if (pts.size() <= 2) return pts;
  std::vector<std::vector<Rat>> h(2 * pts.size());
  size_t k = 0;
  for (const auto& p : pts) {  // lower hull
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (size_t i = pts.size() - 1, low = k + 1; i-- > 0;) {  // upper hull
    while (k >= low && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);  // last point repeats the first
  return h;
}

}  // namespace

std::vector<Rat> payoff_map(const Game& g, const ProbTensor& P) {
  const size_t N = g.format.profile_count();
  if (P.p.size() != N)
    throw std::invalid_argument("payoff_map: tensor size mismatch");
  std::vector<Rat> out(g.format.players(), Rat(0));
  for (int i = 0; i < g.format.players(); ++i)
    for (size_t f = 0; f < N; ++f) out[i] += g.payoff[i][f] * P.p[f];
  return out;
}

std::vector<std::vector<Rat>> payoff_polytope(const Game& g) {
  const int n = g.format.players();
  const size_t N = g.format.profile_count();
  std::vector<std::vector<Rat>> pts;
  for (size_t f = 0; f < N; ++f) {
    std::vector<Rat> p(n);
    for (int i = 0; i < n; ++i) p[i] = g.payoff[i][f];
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  if (pts.size() == 1) return pts;
  if (n == 2) return hull_2d(std::move(pts));

  // general position-free vertex test: q is a vertex iff it is not a
  // convex combination of the remaining points (exact LP feasibility)
  std::vector<std::vector<Rat>> vertices;
  for (size_t q = 0; q < pts.size(); ++q) {
    std::vector<std::vector<Rat>> A(n + 1, std::vector<Rat>(pts.size() - 1));
    std::vector<Rat> b(n + 1);
    size_t col = 0;
    for (size_t j = 0; j < pts.size(); ++j) {
      if (j == q) continue;
      for (int i = 0; i < n; ++i) A[i][col] = pts[j][i];
      A[n][col] = 1;
      ++col;
    }
    for (int i = 0; i < n; ++i) b[i] = pts[q][i];
    b[n] = 1;
    auto lp = lp_maximize(A, b, std::vector<Rat>(pts.size() - 1, Rat(0)));
    if (lp.status == LPStatus::Infeasible) vertices.push_back(pts[q]);
  }
  return vertices;
}

MembershipResult region_membership(const Game& g, const std::vector<Rat>& x,
                                   const Rat& eps) {
  if (eps < 0)
    throw std::invalid_argument("region_membership: eps must be nonnegative");
  auto K = build_konstanz(g, x);
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> b, c;
  fiber_lp(K, A, b, c);
  auto lp = lp_maximize(A, b, c);
  return classify_fiber(g.format, lp, eps);
}

std::string sign_vector(const SymbolicMinors& sm, const std::vector<Rat>& x) {
  std::string s;
  for (const auto& m : sm.minors) {
    if (m.is_zero()) continue;
    Rat v = m.eval(x);
    s += (v > 0) ? '+' : (v < 0 ? '-' : '0');
  }
  return s;
}

std::string sign_vector_at(const Game& g, const std::vector<Rat>& x) {
  return sign_vector(maximal_minors_symbolic(g), x);
}

std::size_t RegionRaster::cell_count() const {
  std::size_t total = 1;
  for (int d = 0; d < axes; ++d) total *= static_cast<std::size_t>(res);
  return total;
}

std::vector<double> RegionRaster::cell_center(std::size_t idx) const {
  std::vector<double> out(axes);
  for (int d = 0; d < axes; ++d) {
    std::size_t i = idx % static_cast<std::size_t>(res);
    idx /= static_cast<std::size_t>(res);
    double w = rat_double(hi[d] - lo[d]) / res;
    out[d] = rat_double(lo[d]) + (static_cast<double>(i) + 0.5) * w;
  }
  return out;
}

int RegionRaster::component_count() const {
  const std::size_t total = cell_count();
  std::vector<int> label(total, -1);
  std::vector<std::size_t> stack;
  int comps = 0;
  std::vector<std::size_t> stride(axes, 1);
  for (int d = 1; d < axes; ++d)
    stride[d] = stride[d - 1] * static_cast<std::size_t>(res);
  for (std::size_t start = 0; start < total; ++start) {
    if (status[start] != CellStatus::Inside || label[start] >= 0) continue;
    label[start] = comps;
    stack.assign(1, start);
    while (!stack.empty()) {
      std::size_t cur = stack.back();
      stack.pop_back();
      std::size_t rem = cur;
      for (int d = 0; d < axes; ++d) {
        std::size_t coord = (rem / stride[d]) % static_cast<std::size_t>(res);
        if (coord > 0) {
          std::size_t nb = cur - stride[d];
          if (status[nb] == CellStatus::Inside && label[nb] < 0) {
            label[nb] = comps;
            stack.push_back(nb);
          }
        }
        if (coord + 1 < static_cast<std::size_t>(res)) {
          std::size_t nb = cur + stride[d];
          if (status[nb] == CellStatus::Inside && label[nb] < 0) {
            label[nb] = comps;
            stack.push_back(nb);
          }
        }
      }
    }
    ++comps;
  }
  return comps;
}

RegionRaster rasterize_region(const Game& g, int resolution, const Rat& eps) {
  const int n = g.format.players();
  if (n < 2 || n > 3)
    throw std::invalid_argument("rasterize_region: supports 2 or 3 players");
  if (resolution < 2 || resolution > 4096)
    throw std::invalid_argument("rasterize_region: resolution out of range");
  if (eps < 0)
    throw std::invalid_argument("rasterize_region: eps must be nonnegative");

  RegionRaster rr;
  rr.res = resolution;
  rr.axes = n;
  rr.eps = eps;
  rr.lo.assign(n, Rat(0));
  rr.hi.assign(n, Rat(0));
  for (int i = 0; i < n; ++i) {
    rr.lo[i] = rr.hi[i] = g.payoff[i][0];
    for (const auto& v : g.payoff[i]) {
      if (v < rr.lo[i]) rr.lo[i] = v;
      if (v > rr.hi[i]) rr.hi[i] = v;
    }
  }
  std::vector<Rat> w(n);
  for (int i = 0; i < n; ++i) w[i] = (rr.hi[i] - rr.lo[i]) / resolution;

  auto sm = maximal_minors_symbolic(g);
  std::vector<const MultiPoly*> minors;
  for (const auto& m : sm.minors)
    if (!m.is_zero()) minors.push_back(&m);

  // absolute near-zero thresholds per minor over the box
  double bmax = 1.0;
  for (int i = 0; i < n; ++i) {
    bmax = std::max(bmax, std::abs(rat_double(rr.lo[i])));
    bmax = std::max(bmax, std::abs(rat_double(rr.hi[i])));
  }
  std::vector<double> thr(minors.size());
  for (size_t m = 0; m < minors.size(); ++m) {
    double s = 0;
    for (const auto& t : minors[m]->terms())
      s += std::abs(rat_double(t.second)) * std::pow(bmax, t.first.deg);
    thr[m] = 1e-12 * (s + 1.0);
  }

  // corner signs of every minor on the (res+1)^n grid, axis 0 fastest
  const std::size_t cpa = static_cast<std::size_t>(resolution) + 1;
  std::size_t corner_total = 1;
  for (int d = 0; d < n; ++d) corner_total *= cpa;
  std::vector<int8_t> csign(minors.size() * corner_total, 0);
  {
    std::vector<std::vector<double>> axis(n, std::vector<double>(cpa));
    for (int d = 0; d < n; ++d)
      for (std::size_t i = 0; i < cpa; ++i)
        axis[d][i] = rat_double(rr.lo[d] + w[d] * Rat(static_cast<long>(i)));
    std::vector<double> pt(n);
    for (std::size_t cidx = 0; cidx < corner_total; ++cidx) {
      std::size_t rem = cidx;
      for (int d = 0; d < n; ++d) {
        pt[d] = axis[d][rem % cpa];
        rem /= cpa;
      }
      for (std::size_t m = 0; m < minors.size(); ++m) {
        double v = minors[m]->eval_double(pt);
        csign[m * corner_total + cidx] =
            (std::abs(v) <= thr[m]) ? 0 : (v > 0 ? 1 : -1);
      }
    }
  }

  const std::size_t total = rr.cell_count();
  rr.status.assign(total, CellStatus::Outside);
  rr.t_star.assign(total, std::numeric_limits<double>::quiet_NaN());
  rr.signs.assign(total, std::string());

  const double eps_d = rat_double(eps);
  double amax = 1.0;
  for (const auto& pl : g.payoff)
    for (const auto& v : pl) amax = std::max(amax, std::abs(rat_double(v)));
  const double lp_tol = 1e-11 * amax;
  const double margin = std::max(10 * eps_d, 1e-7 * amax);

  std::vector<std::size_t> cstride(n, 1);
  for (int d = 1; d < n; ++d) cstride[d] = cstride[d - 1] * cpa;

  std::vector<int> ic(n);
  std::vector<Rat> cx(n);
  std::vector<double> cxd(n);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (int d = 0; d < n; ++d) {
      ic[d] = static_cast<int>(rem % static_cast<std::size_t>(resolution));
      rem /= static_cast<std::size_t>(resolution);
    }

    // does any minor change sign (or hit zero) over the cell's corners?
    bool straddle = false;
    std::size_t base = 0;
    for (int d = 0; d < n; ++d) base += static_cast<std::size_t>(ic[d]) * cstride[d];
    for (std::size_t m = 0; m < minors.size() && !straddle; ++m) {
      int mn = 2, mx = -2;
      for (unsigned bits = 0; bits < (1u << n); ++bits) {
        std::size_t cidx = base;
        for (int d = 0; d < n; ++d)
          if (bits & (1u << d)) cidx += cstride[d];
        int s = csign[m * corner_total + cidx];
        mn = std::min(mn, s);
        mx = std::max(mx, s);
      }
      if (mn <= 0 && mx >= 0) straddle = true;
    }

    for (int d = 0; d < n; ++d) {
      cx[d] = rr.lo[d] + w[d] * Rat(2 * ic[d] + 1, 2);
      cxd[d] = rat_double(cx[d]);
    }
    std::string sv;
    for (std::size_t m = 0; m < minors.size(); ++m) {
      double v = minors[m]->eval_double(cxd);
      sv += (std::abs(v) <= thr[m]) ? '0' : (v > 0 ? '+' : '-');
    }
    rr.signs[idx] = std::move(sv);

    auto K = build_konstanz(g, cx);
    std::vector<std::vector<Rat>> A;
    std::vector<Rat> b, c;
    fiber_lp(K, A, b, c);

    // float pre-pass rejects clear outsiders; anything else is re-solved
    // exactly (inside cells always are: the certificate must be exact)
    std::vector<std::vector<double>> Ad(A.size(), std::vector<double>(A[0].size()));
    std::vector<double> bd(b.size()), cd(c.size());
    for (size_t i = 0; i < A.size(); ++i)
      for (size_t j = 0; j < A[i].size(); ++j) Ad[i][j] = rat_double(A[i][j]);
    for (size_t i = 0; i < b.size(); ++i) bd[i] = rat_double(b[i]);
    for (size_t j = 0; j < c.size(); ++j) cd[j] = rat_double(c[j]);
    auto flp = lp_maximize(std::move(Ad), std::move(bd), cd, lp_tol);

    bool clear_outside = false;
    if (flp.status == LPStatus::Optimal && flp.value <= eps_d - margin) {
      clear_outside = true;
      rr.t_star[idx] = flp.value;
    } else if (flp.status == LPStatus::Infeasible && flp.value < -margin) {
      clear_outside = true;  // t_star stays NaN: empty fiber
    }

    bool center_inside = false;
    if (!clear_outside) {
      auto mr = classify_fiber(g.format, lp_maximize(A, b, c), eps);
      if (!mr.fiber_empty) rr.t_star[idx] = rat_double(mr.t_star);
      if (mr.inside && !straddle) {
        rr.status[idx] = CellStatus::Inside;
        rr.certificates.emplace(idx, std::move(*mr.certificate));
        continue;
      }
      center_inside = mr.inside;
    }
    rr.status[idx] = (straddle || center_inside) ? CellStatus::BoundaryUncertain
                                                 : CellStatus::Outside;
  }
  return rr;
}

ParetoResult pareto_optimal(const Game& g, const std::vector<Rat>& x,
                            int ray_samples, std::uint64_t seed) {
  const int n = g.format.players();
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("pareto_optimal: point dimension mismatch");
  std::vector<std::vector<Rat>> dirs;
  for (int i = 0; i < n; ++i) {
    std::vector<Rat> e(n, Rat(0));
    e[i] = 1;
    dirs.push_back(std::move(e));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(1, 8);
  for (int s = 0; s < ray_samples; ++s) {
    std::vector<Rat> d(n);
    for (auto& v : d) {
      v = Rat(pick(rng), 8);
      v.canonicalize();  // two-argument mpq construction is not reduced
    }
    dirs.push_back(std::move(d));
  }
  Rat scale(1);
  for (const auto& pl : g.payoff)
    for (const auto& v : pl) {
      Rat a = abs(v);
      if (a > scale) scale = a;
    }
  const Rat near(1, 1000000000);
  ParetoResult out;
  out.pareto = true;
  std::vector<Rat> y(n);
  for (const auto& dir : dirs) {
    Rat delta = scale / 4;
    for (int k = 0; k < 8; ++k, delta /= 4) {
      for (int i = 0; i < n; ++i) y[i] = x[i] + delta * dir[i];
      auto mr = region_membership(g, y, Rat(0));
      if (mr.inside) {  // a closure point weakly dominating x
        out.pareto = false;
        return out;
      }
      if (k == 7 && !mr.fiber_empty && mr.t_star > -near) out.conclusive = false;
    }
  }
  return out;
}

std::vector<MultiPoly> boundary_candidates(const Game& g) {
  auto sm = maximal_minors_symbolic(g);
  std::vector<MultiPoly> out;
  auto add = [&out](const MultiPoly& p) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  };
  for (const auto& minor : sm.minors) {
    if (minor.is_zero()) continue;
    MultiPoly p = minor;
    const auto ring = p.vars();
    bool stripped = true;
    while (stripped && p.total_degree() > 0) {
      stripped = false;
      for (int i = 0; i < g.format.players() && !stripped; ++i) {
        for (const auto& v : g.payoff[i]) {
          MultiPoly lin = MultiPoly::variable(ring, static_cast<size_t>(i)) -
                          MultiPoly::constant(ring, v);
          MultiPoly q(ring);
          if (p.divides_exactly(lin, &q)) {
            add(lin.primitive_part());
            p = std::move(q);
            stripped = true;
            break;
          }
        }
      }
    }
    if (p.total_degree() > 0) add(p.primitive_part());
  }
  return out;
}

}  // namespace depeq
