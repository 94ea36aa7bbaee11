#include "depeq/region.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <random>

#include "depeq/simplex.hpp"
#include "depeq/spohn.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace depeq;

namespace {

Game generic_32_game() {
  Game g;
  g.format.dims = {3, 2};
  g.payoff = {{Rat(0), Rat(30), Rat(5), Rat(25), Rat(13), Rat(24)},
              {Rat(6), Rat(42), Rat(21), Rat(12), Rat(36), Rat(0)}};
  return g;
}

Game bach_game() {
  return game_from_matrices({{Rat(3), Rat(0)}, {Rat(0), Rat(2)}},
                            {{Rat(2), Rat(0)}, {Rat(0), Rat(3)}});
}

// exact center of a raster cell
std::vector<Rat> center_of(const RegionRaster& rr, size_t idx) {
  std::vector<Rat> out(rr.axes);
  size_t rem = idx;
  for (int d = 0; d < rr.axes; ++d) {
    long i = static_cast<long>(rem % static_cast<size_t>(rr.res));
    rem /= static_cast<size_t>(rr.res);
    Rat frac(2 * i + 1, 2L * rr.res);
    frac.canonicalize();  // two-argument mpq construction is not reduced
    out[d] = rr.lo[d] + (rr.hi[d] - rr.lo[d]) * frac;
  }
  return out;
}

}  // namespace

TEST_CASE("payoff map evaluates expected payoffs") {
  Game bach = bach_game();
  ProbTensor nash{{2, 2}, {Rat(6, 25), Rat(9, 25), Rat(4, 25), Rat(6, 25)}};
  auto v = payoff_map(bach, nash);
  CHECK(v == std::vector<Rat>{Rat(6, 5), Rat(6, 5)});

  Game g = generic_32_game();
  ProbTensor cell{{3, 2}, {1, 0, 0, 0, 0, 0}};
  CHECK(payoff_map(g, cell) == std::vector<Rat>{0, 6});

  Game zero;
  zero.format.dims = {2, 2};
  zero.payoff = {{0, 0, 0, 0}, {0, 0, 0, 0}};
  ProbTensor u = ProbTensor::uniform({2, 2});
  CHECK(payoff_map(zero, u) == std::vector<Rat>{0, 0});
}

TEST_CASE("payoff polytope hulls") {
  Game g = generic_32_game();
  auto hull = payoff_polytope(g);
  REQUIRE(hull.size() == 5);  // pentagon: profile (2,2) payoff is interior
  auto has = [&](long a, long b) {
    return std::find(hull.begin(), hull.end(),
                     std::vector<Rat>{Rat(a), Rat(b)}) != hull.end();
  };
  CHECK(has(0, 6));
  CHECK(has(30, 42));
  CHECK(has(5, 21));
  CHECK(has(13, 36));
  CHECK(has(24, 0));
  CHECK(!has(25, 12));

  auto tri = payoff_polytope(bach_game());
  REQUIRE(tri.size() == 3);

  Game flat;
  flat.format.dims = {2, 2};
  flat.payoff = {{5, 5, 5, 5}, {5, 5, 5, 5}};
  CHECK(payoff_polytope(flat).size() == 1);
}

TEST_CASE("membership: far-outside points are rejected, by sign or by Farkas") {
  // 3x2: the kernel is a line, so the affine fiber is a single signed point
  // almost everywhere -- rejection shows up as a negative optimum, not
  // as infeasibility
  Game g = generic_32_game();
  auto mr = region_membership(g, {Rat(100), Rat(100)}, Rat(0));
  CHECK(!mr.inside);
  CHECK(!mr.fiber_empty);
  CHECK(mr.t_star < 0);

  // 2x2: the matrix is square and generically nonsingular, so off the curve
  // the affine fiber is empty and the solver must produce a witness
  Game b2 = bach_game();
  std::vector<Rat> x{Rat(7), Rat(11)};
  auto mb = region_membership(b2, x, Rat(0));
  CHECK(!mb.inside);
  REQUIRE(mb.fiber_empty);

  // the witness refutes every column of the fiber program exactly
  auto K = build_konstanz(b2, x);
  const size_t R = K.entries.size(), N = K.entries[0].size();
  REQUIRE(mb.farkas.size() == R + 1);
  CHECK(mb.farkas[R] > 0);  // y.b where b = (0,...,0,1)
  for (size_t j = 0; j < N; ++j) {
    Rat col = mb.farkas[R];
    for (size_t r = 0; r < R; ++r) col += mb.farkas[r] * K.entries[r][j];
    CHECK(col <= 0);
  }
  Rat tcol = mb.farkas[R] * Rat(static_cast<long>(N));
  for (size_t r = 0; r < R; ++r) {
    Rat rowsum = 0;
    for (size_t j = 0; j < N; ++j) rowsum += K.entries[r][j];
    tcol += mb.farkas[r] * rowsum;
  }
  CHECK(tcol == 0);  // the free direction t forces equality
}

TEST_CASE("membership roundtrip: constructed games contain their payoff point") {
  std::mt19937_64 rng(808);
  for (int t = 0; t < 4; ++t) {
    auto [g, P, x] = depeq::testing::positive_spohn_instance(rng, {3, 2});
    auto mr = region_membership(g, x, Rat(0));
    REQUIRE(mr.inside);
    CHECK(mr.t_star > 0);
    REQUIRE(mr.certificate.has_value());
    // exact soundness of the certificate
    const auto& C = *mr.certificate;
    CHECK(C.sum() == 1);
    auto K = build_konstanz(g, x);
    for (const auto& row : K.entries) {
      Rat acc = 0;
      for (size_t j = 0; j < row.size(); ++j) acc += row[j] * C.p[j];
      CHECK(acc == 0);
    }
    Rat mn = C.p[0];
    for (const auto& v : C.p)
      if (v < mn) mn = v;
    CHECK(mn == mr.t_star);  // the optimum is attained by the certificate
    CHECK(is_dependency_equilibrium(g, C, Rat(0)).is_equilibrium);

    // strictness: the optimum itself fails a threshold set at t*
    auto strict = region_membership(g, x, mr.t_star);
    CHECK(!strict.inside);
  }
}

TEST_CASE("membership at the pinch: exact rational neighbors are outside, "
          "the true fiber is a segment through the interior") {
  Game g = generic_32_game();
  // truncated decimal approximation of the isolated rank-drop point
  std::vector<Rat> sp{rat_parse("22.9902299164"), rat_parse("16.2987107576")};
  auto mr = region_membership(g, sp, Rat(1, 1000000000));
  CHECK(!mr.inside);  // the nearby one-point fiber has a negative entry
  CHECK(!mr.fiber_empty);
  CHECK(mr.t_star < 0);

  // at the exact point the kernel is a plane; the fiber line inside it
  // meets the open simplex with margin
  auto ker = kernel_at_double(g, {22.9902299164, 16.2987107576}, 1e-7);
  REQUIRE(ker.rank == 4);
  REQUIRE(ker.basis.size() == 2);
  const auto &v1 = ker.basis[0], &v2 = ker.basis[1];
  const size_t N = v1.size();
  // maximize t s.t. P = a v1 + b v2, sum P = 1, P - t >= 0 (a, b, t free)
  std::vector<std::vector<double>> A(N + 1, std::vector<double>(6 + N, 0.0));
  std::vector<double> b(N + 1, 0.0), c(6 + N, 0.0);
  for (size_t j = 0; j < N; ++j) {
    A[j][0] = v1[j];
    A[j][1] = -v1[j];
    A[j][2] = v2[j];
    A[j][3] = -v2[j];
    A[j][4] = -1;
    A[j][5] = 1;
    A[j][6 + j] = -1;
    A[N][0] += v1[j];
    A[N][2] += v2[j];
  }
  A[N][1] = -A[N][0];
  A[N][3] = -A[N][2];
  b[N] = 1;
  c[4] = 1;
  c[5] = -1;
  auto lp = lp_maximize(A, b, c, 1e-11);
  REQUIRE(lp.status == LPStatus::Optimal);
  CHECK(lp.value > 0.01);
}

TEST_CASE("sign vectors: the two triangles fill opposite chambers") {
  Game g = generic_32_game();
  auto rr = rasterize_region(g, 128, Rat(1, 1000000));
  REQUIRE(rr.component_count() == 2);
  std::set<std::string> chambers;
  for (size_t i = 0; i < rr.status.size(); ++i)
    if (rr.status[i] == CellStatus::Inside)
      chambers.insert(sign_vector_at(g, center_of(rr, i)));
  // every minor flips between the components: all six vanish at the pinch
  // point separating them, so the two triangles see negated sign vectors
  REQUIRE(chambers.size() == 2);
  std::string a = *chambers.begin(), bsv = *std::next(chambers.begin());
  CHECK(a.find('0') == std::string::npos);
  CHECK(bsv.find('0') == std::string::npos);
  REQUIRE(a.size() == bsv.size());
  for (size_t k = 0; k < a.size(); ++k) CHECK(a[k] != bsv[k]);

  // any point on the vertical boundary line kills the minor it divides
  auto on_line = sign_vector_at(g, {Rat(13), Rat(20)});
  CHECK(on_line.find('0') != std::string::npos);
}

TEST_CASE("sign vectors: membership is constant on full-dimensional strata") {
  Game g = generic_32_game();
  auto sm = maximal_minors_symbolic(g);
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> dx(0, 30 * 8), dy(0, 42 * 8);
  struct Sample {
    std::string sv;
    bool inside;
  };
  std::vector<Sample> samples;
  int compared = 0;
  for (int t = 0; t < 400 && compared < 100; ++t) {
    std::vector<Rat> x{Rat(dx(rng), 8), Rat(dy(rng), 8)};
    auto sv = sign_vector(sm, x);
    if (sv.find('0') != std::string::npos) continue;
    bool inside = region_membership(g, x, Rat(1, 1000000000)).inside;
    for (const auto& s : samples)
      if (s.sv == sv) {
        CHECK(s.inside == inside);
        ++compared;
      }
    samples.push_back({std::move(sv), inside});
  }
  CHECK(compared >= 30);
}

TEST_CASE("raster: two open components with exact inside certificates") {
  Game g = generic_32_game();
  Rat eps(1, 1000000);
  auto rr = rasterize_region(g, 128, eps);
  CHECK(rr.component_count() == 2);
  int inside = 0;
  for (auto s : rr.status)
    if (s == CellStatus::Inside) ++inside;
  CHECK(inside > 100);
  REQUIRE(rr.certificates.size() == static_cast<size_t>(inside));
  for (const auto& [idx, P] : rr.certificates) {
    CHECK(rr.status[idx] == CellStatus::Inside);
    CHECK(P.sum() == 1);
    Rat mn = P.p[0];
    for (const auto& v : P.p)
      if (v < mn) mn = v;
    CHECK(mn > eps);
    auto K = build_konstanz(g, center_of(rr, idx));
    for (const auto& row : K.entries) {
      Rat acc = 0;
      for (size_t j = 0; j < row.size(); ++j) acc += row[j] * P.p[j];
      CHECK(acc == 0);
    }
  }
}

TEST_CASE("raster: a curve-only region yields no inside cells, only "
          "boundary-uncertain ones along the curve") {
  Game bp = game_from_matrices({{rat_parse("3.3"), Rat(0)}, {Rat(0), Rat(2)}},
                               {{Rat(2), Rat(0)}, {Rat(0), rat_parse("3.2")}});
  auto rr = rasterize_region(bp, 64, Rat(1, 1000000));
  int inside = 0, uncertain = 0;
  for (auto s : rr.status) {
    if (s == CellStatus::Inside) ++inside;
    if (s == CellStatus::BoundaryUncertain) ++uncertain;
  }
  CHECK(inside == 0);
  CHECK(uncertain > 0);
}

TEST_CASE("raster: provably empty region") {
  // player 1's first-row conditional payoff lies in (2,3), the second-row
  // one in (0,1); they can never agree, so no interior point qualifies
  Game e = game_from_matrices({{Rat(3), Rat(2)}, {Rat(1), Rat(0)}},
                              {{Rat(0), Rat(1)}, {Rat(2), Rat(3)}});
  auto rr = rasterize_region(e, 64, Rat(1, 1000000));
  for (auto s : rr.status) CHECK(s != CellStatus::Inside);
  CHECK(rr.certificates.empty());
}

TEST_CASE("raster input validation") {
  Game g = bach_game();
  CHECK_THROWS(rasterize_region(g, 1, Rat(0)));
  CHECK_THROWS(rasterize_region(g, 64, Rat(-1)));
  Game four;
  four.format.dims = {2, 2, 2, 2};
  four.payoff.assign(4, std::vector<Rat>(16, Rat(0)));
  CHECK_THROWS(rasterize_region(four, 8, Rat(0)));
}

TEST_CASE("pareto: deep interior points are dominated, upper-right boundary "
          "points are not") {
  Game g = generic_32_game();
  auto rr = rasterize_region(g, 64, Rat(1, 1000000));
  const int res = rr.res;
  auto inside_at = [&](int ix, int iy) {
    if (ix < 0 || iy < 0 || ix >= res || iy >= res) return false;
    return rr.status[static_cast<size_t>(iy) * res + ix] == CellStatus::Inside;
  };

  // a cell whose full 5x5 neighborhood is inside sits well off the boundary
  size_t deep = rr.status.size();
  for (size_t i = 0; i < rr.status.size() && deep == rr.status.size(); ++i) {
    if (rr.status[i] != CellStatus::Inside) continue;
    int ix = static_cast<int>(i % res), iy = static_cast<int>(i / res);
    bool all = true;
    for (int dx = -2; dx <= 2 && all; ++dx)
      for (int dy = -2; dy <= 2 && all; ++dy)
        if (!inside_at(ix + dx, iy + dy)) all = false;
    if (all) deep = i;
  }
  REQUIRE(deep < rr.status.size());
  auto interior = pareto_optimal(g, center_of(rr, deep));
  CHECK(!interior.pareto);

  // most-up-right inside cell, pushed to the boundary along (1,1)
  size_t best = rr.status.size();
  double bestv = -1e18;
  for (size_t i = 0; i < rr.status.size(); ++i) {
    if (rr.status[i] != CellStatus::Inside) continue;
    auto cc = rr.cell_center(i);
    if (cc[0] + cc[1] > bestv) {
      bestv = cc[0] + cc[1];
      best = i;
    }
  }
  REQUIRE(best < rr.status.size());
  auto c0 = center_of(rr, best);
  Rat louter(0), hq(8);  // region diameter bound along the diagonal
  // bracket the exit point of the closure along x = c0 + l*(1,1)
  auto closure_inside = [&](const Rat& l) {
    std::vector<Rat> x{c0[0] + l, c0[1] + l};
    return region_membership(g, x, Rat(0)).inside;
  };
  REQUIRE(closure_inside(louter));
  REQUIRE(!closure_inside(hq));
  Rat lin(0);
  for (int it = 0; it < 40; ++it) {
    Rat mid = (lin + hq) / 2;
    (closure_inside(mid) ? lin : hq) = mid;
  }
  std::vector<Rat> xb{c0[0] + lin, c0[1] + lin};
  auto edge = pareto_optimal(g, xb);
  CHECK(edge.pareto);

  // a vanishing maximal minor marks the boundary crossing
  auto sm = maximal_minors_symbolic(g);
  std::vector<double> xm{rat_double(c0[0] + (lin + hq) / 2),
                         rat_double(c0[1] + (lin + hq) / 2)};
  double best_rel = 1e18;
  for (const auto& m : sm.minors) {
    if (m.is_zero()) continue;
    double scale = 0;
    for (const auto& t : m.terms())
      scale += std::abs(rat_double(t.second)) * std::pow(50.0, t.first.deg);
    best_rel = std::min(best_rel, std::abs(m.eval_double(xm)) / scale);
  }
  CHECK(best_rel < 1e-6);
}

TEST_CASE("boundary candidates: cubics and vertical lines for the 3x2 game") {
  Game g = generic_32_game();
  auto cands = boundary_candidates(g);
  std::vector<std::string> ring{"x1", "x2"};
  auto c1 = poly_parse(ring,
                       "9*x1^2*x2 - 2*x1*x2^2 - 162*x1^2 - 189*x1*x2 +"
                       "30*x2^2 + 3906*x1 - 540*x2 + 2160");
  auto c2 = poly_parse(ring,
                       "72*x1^2*x2 - 19*x1*x2^2 - 1512*x1^2 - 1614*x1*x2 +"
                       "390*x2^2 + 36288*x1 - 2340*x2");
  auto l13 = poly_parse(ring, "x1 - 13");
  auto l24 = poly_parse(ring, "x1 - 24");
  auto has = [&](const MultiPoly& p) {
    return std::find(cands.begin(), cands.end(), p) != cands.end();
  };
  CHECK(has(c1));
  CHECK(has(c2));
  CHECK(has(l13));
  CHECK(has(l24));
  int bound = g.format.dim_sum() - g.format.players() + 1;
  for (const auto& c : cands) CHECK(c.total_degree() <= bound);
}

TEST_CASE("boundary candidates: one cubic-bounded candidate for 2x2, "
          "28 quartics for 2x2x2") {
  auto b = boundary_candidates(bach_game());
  REQUIRE(b.size() == 1);
  CHECK(b[0].total_degree() <= 3);

  // generic three-player games: all 28 column choices give quartics with no
  // payoff-shift factor (small payoff ranges often break this by accident,
  // hence the wide bound)
  std::mt19937_64 rng(4242);
  Game g = random_game(rng, {2, 2, 2}, 30);
  auto cands = boundary_candidates(g);
  CHECK(cands.size() == 28);
  for (const auto& c : cands) CHECK(c.total_degree() == 4);
}

TEST_CASE("inside points persist under small payoff-space perturbations") {
  std::mt19937_64 rng(909);
  auto [g, P, x] = depeq::testing::positive_spohn_instance(rng, {3, 2});
  auto mr = region_membership(g, x, Rat(0));
  REQUIRE(mr.inside);
  // the region is full-dimensional: a small ball around x stays inside
  Rat h = mr.t_star / 16;
  for (int i = 0; i < 2; ++i)
    for (int s = -1; s <= 1; s += 2) {
      auto y = x;
      y[i] += h * s;
      CHECK(region_membership(g, y, Rat(0)).inside);
    }
}
