#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "depeq/game.hpp"
#include "depeq/poly.hpp"

namespace depeq {

// Analysis of 2x2 games. The equilibrium variety of such a game is the
// intersection of two quadrics in P^3 (coordinates p11, p12, p21, p22),
// generically an elliptic curve; eliminating p22 gives a plane cubic with
// seven coefficients c1..c7 over (x,y,z) = (p11, p12, p21).

struct SpohnCubic {
  std::array<Rat, 7> c;

  // the two exact linear/cubic relations every game-built c-vector satisfies
  Rat relation_linear() const;
  Rat relation_cubic() const;
  // the cubic as a polynomial over the ring {x, y, z}
  MultiPoly poly() const;
};

SpohnCubic spohn_cubic(const Game& g);

// the same coefficients as polynomials in a11..a22, b11..b22
const std::array<MultiPoly, 7>& spohn_cubic_symbolic();
const std::vector<std::string>& payoff_ring_22();

// the two defining quadrics det M_1, det M_2 over {p11, p12, p21, p22}
std::array<MultiPoly, 2> quadrics_22(const Game& g);

// Plane model via the resultant of the quadrics with respect to p22,
// mapped onto {x, y, z}; equals spohn_cubic(g).poly() up to sign.
MultiPoly eliminant_by_resultant(const Game& g);

// Landmark points of the curve in P^3, stored flat as (p11, p12, p21, p22).
// N is the rank-one point; D[i][j] spans the tangent line at the coordinate
// point E_ij together with E_ij itself; F[i][j] is the unique non-coordinate
// intersection with the plane {p_ij = 0}. Indices are 0-based here.
struct Landmarks22 {
  std::array<Rat, 4> N;
  std::array<std::array<std::array<Rat, 4>, 2>, 2> D;
  std::array<std::array<std::array<Rat, 4>, 2>, 2> F;
  bool degenerate = false;  // repeated entries within a payoff matrix
  std::string note;
};

Landmarks22 landmarks_22(const Game& g);

// j-invariant of the plane cubic. When the discriminant vanishes the curve
// is singular and j is undefined; `vanishing` then names the factors of the
// payoff-space discriminant that are zero ("a11-a12", ..., "core").
struct JInvariant22 {
  bool finite = false;
  Rat j;
  Rat discriminant;
  std::vector<std::string> vanishing;
};

JInvariant22 j_invariant_22(const Game& g);

// The discriminant of the cubic as a degree-24 polynomial in the eight
// payoff entries; it factors as the product of the eight squared payoff
// differences within each matrix and a degree-8 core with 587 terms.
const MultiPoly& payoff_discriminant();
const MultiPoly& payoff_discriminant_core();
// names + polynomials of all nine factors, in a fixed order
const std::vector<std::pair<std::string, MultiPoly>>& payoff_discriminant_factors();

// Aronhold invariant of the plane cubic in payoff variables: degree 8,
// 633 terms, primitive.
const MultiPoly& payoff_aronhold();

// --- real arcs in the simplex ------------------------------------------

// sign(a11-a21) = sign(a22-a12) != 0 and sign(b11-b12) = sign(b22-b21) != 0;
// exactly the condition for the rank-one point to give a totally mixed Nash
// equilibrium.
bool sign_condition_22(const Game& g);

struct ArcEndpoint {
  char kind = '?';               // 'E' or 'F'
  int i = 0, j = 0;              // 1-based strategy pair
  std::array<double, 2> x{};     // payoff-space location
  std::array<double, 4> lift{};  // simplex point reached in the limit
  std::string label() const;     // "E11", "F21", ...
};

struct TracedArc {
  std::vector<std::array<double, 2>> samples;  // payoff-space polyline
  std::array<ArcEndpoint, 2> ends;
  bool closed = false;  // loop with no boundary endpoint (non-generic)
  std::string label() const;  // endpoint pair, lexicographically sorted
};

struct ArcReport {
  int component_count = 0;
  std::vector<TracedArc> arcs;
  bool sign_condition_holds = false;
  bool conclusive = false;
  std::string note;
};

struct ArcTracerOptions {
  int base_resolution = 256;
  int refine_factor = 16;    // refined cells reach base * factor resolution
  double vanish_tol = 1e-6;  // kernel entry threshold for E/F classification
};

// Traces {x in R^2 : det K(x) = 0, kernel meets the simplex} inside the
// padded payoff bounding box, lifts sample points through the kernel, and
// reports the connected arcs with classified endpoints. Requires a game
// whose payoff-space discriminant does not vanish.
ArcReport classify_arcs(const Game& g, const ArcTracerOptions& opt = {});

}  // namespace depeq
