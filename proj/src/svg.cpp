#include "depeq/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "depeq/spohn.hpp"

namespace depeq {

namespace {

std::string fmt(double v) {
  if (!std::isfinite(v)) return "0";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  // avoid "-0.00" so byte output does not depend on rounding direction
  if (std::string(buf) == "-0.00") return "0.00";
  return buf;
}

// affine map from a data rectangle onto a pixel rectangle (y flipped)
struct Panel {
  double lo_u, hi_u, lo_v, hi_v;  // data box
  double px, py, side;            // pixel box: top-left corner and size

  double X(double u) const { return px + (u - lo_u) / (hi_u - lo_u) * side; }
  double Y(double v) const { return py + (hi_v - v) / (hi_v - lo_v) * side; }
};

Panel make_panel(double lo_u, double hi_u, double lo_v, double hi_v,
                 double px, double py, double side) {
  auto widen = [](double& lo, double& hi) {
    if (hi - lo < 1e-9) {
      lo -= 0.5;
      hi += 0.5;
    }
  };
  widen(lo_u, hi_u);
  widen(lo_v, hi_v);
  return Panel{lo_u, hi_u, lo_v, hi_v, px, py, side};
}

void rect(std::string& out, const Panel& pn, double u0, double v0, double u1,
          double v1, const char* fill) {
  out += "<rect x=\"" + fmt(pn.X(u0)) + "\" y=\"" + fmt(pn.Y(v1)) +
         "\" width=\"" + fmt(pn.X(u1) - pn.X(u0)) + "\" height=\"" +
         fmt(pn.Y(v0) - pn.Y(v1)) + "\" fill=\"" + fill + "\"/>\n";
}

void polyline(std::string& out, const Panel& pn,
              const std::vector<std::array<double, 2>>& pts, const char* stroke,
              const char* width, bool close) {
  if (pts.size() < 2) return;
  out += close ? "<polygon points=\"" : "<polyline points=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) out += " ";
    out += fmt(pn.X(pts[i][0])) + "," + fmt(pn.Y(pts[i][1]));
  }
  out += "\" fill=\"none\" stroke=\"";
  out += stroke;
  out += "\" stroke-width=\"";
  out += width;
  out += "\"/>\n";
}

void text(std::string& out, double x, double y, const std::string& s,
          const char* anchor = "middle", const char* size = "13") {
  out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" font-family=\"" +
         "monospace\" font-size=\"" + size + "\" text-anchor=\"" + anchor +
         "\">" + s + "</text>\n";
}

void frame_with_ticks(std::string& out, const Panel& pn, const std::string& ulab,
                      const std::string& vlab) {
  out += "<rect x=\"" + fmt(pn.px) + "\" y=\"" + fmt(pn.py) + "\" width=\"" +
         fmt(pn.side) + "\" height=\"" + fmt(pn.side) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  text(out, pn.px, pn.py + pn.side + 16, fmt(pn.lo_u), "start", "11");
  text(out, pn.px + pn.side, pn.py + pn.side + 16, fmt(pn.hi_u), "end", "11");
  text(out, pn.px - 4, pn.py + pn.side, fmt(pn.lo_v), "end", "11");
  text(out, pn.px - 4, pn.py + 10, fmt(pn.hi_v), "end", "11");
  text(out, pn.px + pn.side / 2, pn.py + pn.side + 32, ulab);
  text(out, pn.px - 28, pn.py + pn.side / 2, vlab, "middle");
}

// segments of {f = 0} on a uniform grid, for curve overlays
void contour_segments(std::string& out, const Panel& pn,
                      const std::function<double(double, double)>& f, int res,
                      const char* stroke) {
  std::vector<double> val((res + 1) * (res + 1));
  auto U = [&](int i) {
    return pn.lo_u + (pn.hi_u - pn.lo_u) * static_cast<double>(i) / res;
  };
  auto V = [&](int j) {
    return pn.lo_v + (pn.hi_v - pn.lo_v) * static_cast<double>(j) / res;
  };
  for (int j = 0; j <= res; ++j)
    for (int i = 0; i <= res; ++i) val[j * (res + 1) + i] = f(U(i), V(j));

  std::string pts;
  auto cross = [&](double ua, double va, double fa, double ub, double vb,
                   double fb, std::array<double, 2>& p) {
    if ((fa > 0) == (fb > 0)) return false;
    double t = fa / (fa - fb);
    p = {ua + t * (ub - ua), va + t * (vb - va)};
    return true;
  };
  for (int j = 0; j < res; ++j)
    for (int i = 0; i < res; ++i) {
      double f00 = val[j * (res + 1) + i], f10 = val[j * (res + 1) + i + 1];
      double f01 = val[(j + 1) * (res + 1) + i],
             f11 = val[(j + 1) * (res + 1) + i + 1];
      std::array<double, 2> hit[4];
      int m = 0;
      std::array<double, 2> p;
      if (cross(U(i), V(j), f00, U(i + 1), V(j), f10, p)) hit[m++] = p;
      if (cross(U(i + 1), V(j), f10, U(i + 1), V(j + 1), f11, p)) hit[m++] = p;
      if (cross(U(i + 1), V(j + 1), f11, U(i), V(j + 1), f01, p)) hit[m++] = p;
      if (cross(U(i), V(j + 1), f01, U(i), V(j), f00, p)) hit[m++] = p;
      if (m == 2)
        out += "<line x1=\"" + fmt(pn.X(hit[0][0])) + "\" y1=\"" +
               fmt(pn.Y(hit[0][1])) + "\" x2=\"" + fmt(pn.X(hit[1][0])) +
               "\" y2=\"" + fmt(pn.Y(hit[1][1])) + "\" stroke=\"" + stroke +
               "\" stroke-width=\"1\"/>\n";
      // ambiguous saddle cells are rare at overlay resolution; skip pairing
    }
}

// counterclockwise hull of 2-D points (monotone chain, exact comparisons)
std::vector<std::array<double, 2>> hull2d(
    std::vector<std::array<Rat, 2>> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto cross = [](const std::array<Rat, 2>& o, const std::array<Rat, 2>& a,
                  const std::array<Rat, 2>& b) -> Rat {
    return Rat((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]));
  };
  if (pts.size() < 3) {
    std::vector<std::array<double, 2>> out;
    for (auto& p : pts) out.push_back({p[0].get_d(), p[1].get_d()});
    return out;
  }
  std::vector<std::array<Rat, 2>> h(2 * pts.size());
  size_t k = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  std::vector<std::array<double, 2>> out;
  for (auto& p : h) out.push_back({p[0].get_d(), p[1].get_d()});
  return out;
}

const char* kHeader =
    "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";

std::string svg_open(int w, int h) {
  return kHeader + std::string("<svg xmlns=\"http://www.w3.org/2000/svg\" ") +
         "width=\"" + std::to_string(w) + "\" height=\"" + std::to_string(h) +
         "\" viewBox=\"0 0 " + std::to_string(w) + " " + std::to_string(h) +
         "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

constexpr double kSide = 360, kMargin = 52;

void draw_region_panel(std::string& out, const Game& g, const RegionRaster& r,
                       int au, int av, int fixed_axis, double px,
                       double py) {
  Panel pn = make_panel(r.lo[au].get_d(), r.hi[au].get_d(), r.lo[av].get_d(),
                        r.hi[av].get_d(), px, py, kSide);

  // strides of the raster index space (player-1 axis fastest)
  std::vector<size_t> stride(r.axes);
  size_t s = 1;
  for (int d = 0; d < r.axes; ++d) {
    stride[d] = s;
    s *= static_cast<size_t>(r.res);
  }
  int mid = r.res / 2;

  double wu = (pn.hi_u - pn.lo_u) / r.res, wv = (pn.hi_v - pn.lo_v) / r.res;
  for (int j = 0; j < r.res; ++j)
    for (int i = 0; i < r.res; ++i) {
      size_t idx = stride[au] * i + stride[av] * j;
      if (fixed_axis >= 0) idx += stride[fixed_axis] * mid;
      CellStatus st = r.status[idx];
      if (st == CellStatus::Outside) continue;
      const char* fill =
          st == CellStatus::Inside ? "#7cbf7c" : "#cccccc";
      rect(out, pn, pn.lo_u + i * wu, pn.lo_v + j * wv, pn.lo_u + (i + 1) * wu,
           pn.lo_v + (j + 1) * wv, fill);
    }

  // payoff polytope outline (projected for three players)
  std::vector<std::array<Rat, 2>> proj;
  for (const auto& vtx : payoff_polytope(g)) proj.push_back({vtx[au], vtx[av]});
  polyline(out, pn, hull2d(std::move(proj)), "#333333", "1.5", true);

  // boundary candidate zero sets, two-player panels only
  if (r.axes == 2) {
    for (const auto& f : boundary_candidates(g)) {
      if (f.total_degree() < 1) continue;
      contour_segments(
          out, pn,
          [&](double u, double v) { return f.eval_double({u, v}); }, 160,
          "#b03030");
    }
  }

  std::string ulab = "x" + std::to_string(au + 1),
              vlab = "x" + std::to_string(av + 1);
  if (fixed_axis >= 0) ulab += " (x" + std::to_string(fixed_axis + 1) + " mid)";
  frame_with_ticks(out, pn, ulab, vlab);
}

}  // namespace

std::string render_region_svg(const Game& g, const RegionRaster& r) {
  if (r.axes != 2 && r.axes != 3)
    throw std::invalid_argument("render_region_svg: supports 2 or 3 players");
  int panels = r.axes == 2 ? 1 : 3;
  int w = static_cast<int>(panels * (kSide + 2 * kMargin));
  int h = static_cast<int>(kSide + 2 * kMargin);
  std::string out = svg_open(w, h);
  if (r.axes == 2) {
    draw_region_panel(out, g, r, 0, 1, -1, kMargin, kMargin);
  } else {
    const int pairs[3][3] = {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}};
    for (int p = 0; p < 3; ++p)
      draw_region_panel(out, g, r, pairs[p][0], pairs[p][1], pairs[p][2],
                        kMargin + p * (kSide + 2 * kMargin), kMargin);
  }
  out += "</svg>\n";
  return out;
}

std::string render_arcs_svg(const Game& g, const ArcReport& rep) {
  if (g.format.dims != std::vector<int>{2, 2})
    throw std::invalid_argument("render_arcs_svg: requires a 2x2 game");

  // the tracer's padded payoff box
  double lo[2], hi[2];
  for (int pl = 0; pl < 2; ++pl) {
    double mn = g.payoff[pl][0].get_d(), mx = mn;
    for (const Rat& v : g.payoff[pl]) {
      mn = std::min(mn, v.get_d());
      mx = std::max(mx, v.get_d());
    }
    double pad = 0.05 * std::max(mx - mn, 1e-6);
    lo[pl] = mn - pad;
    hi[pl] = mx + pad;
  }
  int w = static_cast<int>(kSide + 2 * kMargin);
  std::string out = svg_open(w, w);
  Panel pn = make_panel(lo[0], hi[0], lo[1], hi[1], kMargin, kMargin, kSide);

  std::vector<std::array<Rat, 2>> proj;
  for (const auto& vtx : payoff_polytope(g)) proj.push_back({vtx[0], vtx[1]});
  polyline(out, pn, hull2d(std::move(proj)), "#333333", "1.5", true);

  for (const auto& arc : rep.arcs) {
    polyline(out, pn, arc.samples, "#2050c0", "2", arc.closed);
    if (arc.closed) continue;
    for (const auto& ep : arc.ends) {
      out += "<circle cx=\"" + fmt(pn.X(ep.x[0])) + "\" cy=\"" +
             fmt(pn.Y(ep.x[1])) + "\" r=\"4\" fill=\"" +
             (ep.kind == 'E' ? "#c03030" : "#208020") + "\"/>\n";
      text(out, pn.X(ep.x[0]) + 7, pn.Y(ep.x[1]) - 7, ep.label(), "start",
           "12");
    }
  }

  Nash22Result nash = nash_point_22(g);
  if (nash.status == Nash22Status::IN_DELTA) {
    auto x = payoff_map(g, nash.point.tensor);
    out += "<circle cx=\"" + fmt(pn.X(x[0].get_d())) + "\" cy=\"" +
           fmt(pn.Y(x[1].get_d())) + "\" r=\"4\" fill=\"#202020\"/>\n";
    text(out, pn.X(x[0].get_d()) + 7, pn.Y(x[1].get_d()) + 14, "N", "start",
         "12");
  }

  frame_with_ticks(out, pn, "x1", "x2");
  out += "</svg>\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
}

}  // namespace depeq
