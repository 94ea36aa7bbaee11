#include "depeq/curve22.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "depeq/invariants.hpp"
#include "depeq/spohn.hpp"
#include "doctest.h"

using namespace depeq;

namespace {

Game bach() { return game_from_matrices({{3, 0}, {0, 2}}, {{2, 0}, {0, 3}}); }

// the running example with a disconnected equilibrium curve
Game split_game() {
  return game_from_matrices({{2, 0}, {4, 1}}, {{2, 1}, {4, 3}});
}

Rat eval4(const MultiPoly& f, const std::array<Rat, 4>& p) {
  return f.eval({p[0], p[1], p[2], p[3]});
}

}  // namespace

TEST_CASE("cubic coefficients match their closed forms") {
  const auto& c = spohn_cubic_symbolic();
  const auto& ring = payoff_ring_22();
  auto v = [&](const char* name) {
    for (size_t k = 0; k < ring.size(); ++k)
      if (ring[k] == name) return MultiPoly::variable(ring, static_cast<int>(k));
    REQUIRE(false);
    return MultiPoly(ring);
  };
  auto a11 = v("a11"), a12 = v("a12"), a21 = v("a21"), a22 = v("a22");
  auto b11 = v("b11"), b12 = v("b12"), b21 = v("b21"), b22 = v("b22");
  CHECK(c[0] == (a11 - a22) * (b11 - b12));
  CHECK(c[1] == (a11 - a21) * (b22 - b11));
  CHECK(c[2] == (a12 - a22) * (b11 - b12));
  CHECK(c[3] == (a11 - a21) * (b22 - b21));
  CHECK(c[4] == (a12 - a22) * (b21 - b12));
  CHECK(c[5] == (a12 - a21) * (b22 - b21));
  CHECK(c[6] == (a12 - a21) * (b22 - b11) + (a11 - a22) * (b21 - b12));

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    Game g = random_game(rng, {2, 2});
    std::vector<Rat> pay;
    for (int pl = 0; pl < 2; ++pl)
      for (int k = 0; k < 4; ++k) pay.push_back(g.payoff[pl][k]);
    SpohnCubic sc = spohn_cubic(g);
    for (int k = 0; k < 7; ++k) CHECK(sc.c[k] == c[k].eval(pay));
  }
}

TEST_CASE("every game's coefficient vector satisfies the two relations") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    SpohnCubic sc = spohn_cubic(random_game(rng, {2, 2}, 50));
    CHECK(sc.relation_linear() == 0);
    CHECK(sc.relation_cubic() == 0);
  }
}

TEST_CASE("the resultant eliminant reproduces the cubic up to sign") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    Game g = random_game(rng, {2, 2});
    MultiPoly cubic = spohn_cubic(g).poly();
    MultiPoly res = eliminant_by_resultant(g);
    bool match = (res == cubic) || (res == cubic * MultiPoly::constant(
                                               res.vars(), Rat(-1)));
    CHECK(match);
  }
}

TEST_CASE("the Bach cubic vanishes at the image of its Nash point") {
  SpohnCubic sc = spohn_cubic(bach());
  CHECK(sc.poly().eval({6, 9, 4}) == 0);
}

TEST_CASE("landmark points carry their stated geometry") {
  std::mt19937_64 rng(8);
  int tested = 0;
  while (tested < 12) {
    Game g = random_game(rng, {2, 2}, 20);
    Landmarks22 lm = landmarks_22(g);
    if (lm.degenerate) continue;
    ++tested;
    auto q = quadrics_22(g);
    auto on_curve = [&](const std::array<Rat, 4>& p) {
      bool nonzero = p[0] != 0 || p[1] != 0 || p[2] != 0 || p[3] != 0;
      return nonzero && eval4(q[0], p) == 0 && eval4(q[1], p) == 0;
    };
    CHECK(on_curve(lm.N));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        CAPTURE(i);
        CAPTURE(j);
        // F_ij lies on the curve inside the plane {p_ij = 0}
        CHECK(on_curve(lm.F[i][j]));
        CHECK(lm.F[i][j][2 * i + j] == 0);
        // D_ij spans the tangent line at the corner E_ij: it sits in the
        // opposite coordinate plane and is annihilated by both gradients
        CHECK(lm.D[i][j][2 * i + j] == 0);
        std::array<Rat, 4> E{};
        E[2 * i + j] = 1;
        for (int k = 0; k < 2; ++k) {
          Rat dot = 0;
          for (int v = 0; v < 4; ++v)
            dot += q[k].derivative(v).eval({E[0], E[1], E[2], E[3]}) *
                   lm.D[i][j][v];
          CHECK(dot == 0);
        }
      }
  }
}

TEST_CASE("the rank-one landmark matches the Nash candidate") {
  std::mt19937_64 rng(9);
  int tested = 0;
  while (tested < 12) {
    Game g = random_game(rng, {2, 2}, 20);
    Landmarks22 lm = landmarks_22(g);
    if (lm.degenerate) continue;
    auto nz = std::find_if(lm.N.begin(), lm.N.end(),
                           [](const Rat& v) { return v != 0; });
    if (nz == lm.N.end()) continue;
    ++tested;
    NashPoint np = nash_point_22(g).point;
    // compare projectively against the outer product of the factors
    std::array<Rat, 4> outer{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        outer[2 * i + j] = Rat(np.factors[0][i] * np.factors[1][j]);
    size_t piv = static_cast<size_t>(nz - lm.N.begin());
    if (outer[piv] == 0) continue;
    for (int k = 0; k < 4; ++k)
      CHECK(Rat(lm.N[k] * outer[piv]) == Rat(outer[k] * lm.N[piv]));
  }
}

TEST_CASE("the disconnected example has the published j-invariant") {
  JInvariant22 ji = j_invariant_22(split_game());
  REQUIRE(ji.finite);
  // -(7^3 * 103^3) / (2^8 * 3^2 * 47)
  CHECK(ji.j == Rat(-374805361, 108288));
}

TEST_CASE("the Bach curve is singular through its core factor") {
  JInvariant22 ji = j_invariant_22(bach());
  CHECK(!ji.finite);
  CHECK(ji.discriminant == 0);
  // none of the eight linear payoff differences vanish for this game, so
  // the reducibility comes from the degree-8 core alone
  CHECK(ji.vanishing == std::vector<std::string>{"core"});
  const auto& factors = payoff_discriminant_factors();
  std::vector<Rat> pay;
  Game g = bach();
  for (int pl = 0; pl < 2; ++pl)
    for (int k = 0; k < 4; ++k) pay.push_back(g.payoff[pl][k]);
  for (const auto& [name, f] : factors)
    if (name == "core")
      CHECK(f.eval(pay) == 0);
    else
      CHECK(f.eval(pay) != 0);
}

TEST_CASE("j is unchanged by per-player affine payoff rescaling") {
  std::mt19937_64 rng(10);
  int tested = 0;
  while (tested < 8) {
    Game g = random_game(rng, {2, 2}, 12);
    JInvariant22 ji = j_invariant_22(g);
    if (!ji.finite) continue;
    ++tested;
    Game h = g;
    for (int k = 0; k < 4; ++k) {
      h.payoff[0][k] = Rat(Rat(5) * g.payoff[0][k] + 3);
      h.payoff[1][k] = Rat(Rat(-2) * g.payoff[1][k] + 1);
    }
    JInvariant22 jh = j_invariant_22(h);
    REQUIRE(jh.finite);
    CHECK(jh.j == ji.j);
  }
}

TEST_CASE("the payoff-space discriminant factors as stated") {
  const MultiPoly& D = payoff_discriminant();
  const MultiPoly& E = payoff_discriminant_core();
  CHECK(D.total_degree() == 24);
  CHECK(E.term_count() == 587);
  CHECK(E.total_degree() == 8);

  const auto& factors = payoff_discriminant_factors();
  REQUIRE(factors.size() == 9);
  MultiPoly prod = MultiPoly::constant(D.vars(), 1);
  for (const auto& [name, f] : factors) {
    if (name == "core")
      prod = prod * f;
    else
      prod = prod * f * f;  // linear differences enter squared
  }
  CHECK(prod == D);

  const MultiPoly& I = payoff_aronhold();
  CHECK(I.term_count() == 633);
  CHECK(I.total_degree() == 8);
}

TEST_CASE("arc tracing splits the disconnected example into two EF arcs") {
  ArcReport rep = classify_arcs(split_game());
  CHECK(rep.component_count == 2);
  CHECK(rep.conclusive);
  CHECK(!rep.sign_condition_holds);
  REQUIRE(rep.arcs.size() == 2);
  std::set<std::string> labels{rep.arcs[0].label(), rep.arcs[1].label()};
  CHECK(labels == std::set<std::string>{"E11-F21", "E22-F12"});
  for (const auto& arc : rep.arcs) {
    CHECK(!arc.closed);
    CHECK(arc.samples.size() > 10);
    for (const auto& e : arc.ends) {
      double sum = e.lift[0] + e.lift[1] + e.lift[2] + e.lift[3];
      CHECK(std::abs(sum - 1.0) < 1e-9);
      double mn = *std::min_element(e.lift.begin(), e.lift.end());
      CHECK(mn > -1e-6);
    }
  }
  // endpoint locations are rational here: F21=(1,2), E11=(2,2), E22=(1,3), F12=(2,3)
  for (const auto& arc : rep.arcs)
    for (const auto& e : arc.ends) {
      CHECK(std::abs(e.x[0] - std::round(e.x[0])) < 1e-6);
      CHECK(std::abs(e.x[1] - std::round(e.x[1])) < 1e-6);
    }
}

TEST_CASE("a sign-condition game carries exactly one arc") {
  Game g = game_from_matrices({{2, 0}, {1, 3}}, {{4, 1}, {0, 2}});
  REQUIRE(sign_condition_22(g));
  ArcReport rep = classify_arcs(g);
  CHECK(rep.sign_condition_holds);
  CHECK(rep.conclusive);
  CHECK(rep.component_count == 1);
}

TEST_CASE("ordering sweep: component counts stay within the theorem") {
  // exhaustive over player 1's orderings, a fixed spread of player 2's;
  // the full 576-pair sweep runs in the acceptance suite
  const std::array<Rat, 4> values{0, 1, 3, 7};
  std::array<int, 4> pa{0, 1, 2, 3};
  const std::array<std::array<int, 4>, 3> pbs = {
      {{0, 1, 2, 3}, {3, 1, 0, 2}, {2, 3, 1, 0}}};
  int checked = 0;
  do {
    for (const auto& pb : pbs) {
      Game g = game_from_matrices(
          {{values[pa[0]], values[pa[1]]}, {values[pa[2]], values[pa[3]]}},
          {{values[pb[0]], values[pb[1]]}, {values[pb[2]], values[pb[3]]}});
      if (j_invariant_22(g).discriminant == 0) continue;  // non-generic values
      ArcReport rep = classify_arcs(g);
      CAPTURE(pa);
      CAPTURE(pb);
      REQUIRE(rep.conclusive);
      CHECK(rep.component_count >= 0);
      CHECK(rep.component_count <= 2);
      if (rep.sign_condition_holds) CHECK(rep.component_count == 1);
      for (const auto& arc : rep.arcs) {
        CHECK(!arc.closed);
        if (!rep.sign_condition_holds) {
          // mixed endpoints: one corner limit, one face crossing
          std::set<char> kinds{arc.ends[0].kind, arc.ends[1].kind};
          CHECK(kinds == std::set<char>{'E', 'F'});
        }
      }
      ++checked;
    }
  } while (std::next_permutation(pa.begin(), pa.end()));
  CHECK(checked > 40);
}
