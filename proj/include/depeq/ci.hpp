#pragma once

#include <array>
#include <string>
#include <vector>

#include "depeq/game.hpp"
#include "depeq/poly.hpp"

namespace depeq {

// Conditional independence statement A _||_ B | C between groups of players,
// viewed as random variables with the strategy sets as states.
struct CIStatement {
  std::vector<int> A, B, C;  // 1-based player indices, pairwise disjoint
  std::string str() const;   // mini-grammar form, e.g. "1_|_23|4"
};

// Parses the mini-grammar "A_|_B|C": digit lists separated by "_|_", with an
// optional "|C" tail. Examples: "2_|_3", "1_|_23", "12_|_3|4".
CIStatement ci_parse(const std::string& text);

// The quadratic constraints of one statement: for every assignment of the
// C players, the 2x2 minors of the (A-profiles) x (B-profiles) matrix whose
// entries are the marginal sums over the remaining players. Deterministic
// order: C assignments, then row pairs, then column pairs, lex.
std::vector<MultiPoly> ci_quadrics(const CIStatement& stmt, const GameFormat& f);

// Values of all quadrics of all statements at P, in generation order. P is
// a CI equilibrium of a game iff these and dependency_residual(g, P) all
// vanish and P lies in the open simplex.
std::vector<Rat> ci_residual(const ProbTensor& P,
                             const std::vector<CIStatement>& stmts);

// --- the one-edge Bayesian network on three binary players ----------------
//
// Model points factor as p_ijk = sigma_i tau_jk. Substituting into the three
// Spohn matrices and cancelling the common row/column factors leaves:
//   M1 = [ 1 , sum_jk a_1jk tau_jk ; 1 , sum_jk a_2jk tau_jk ]
//   M2 = [ tau_11+tau_12 , sum_il b_i1l sigma_i tau_1l ; (row for j = 2) ]
//   M3 = [ tau_11+tau_21 , sum_ij c_ij1 sigma_i tau_j1 ; (row for k = 2) ]

struct OneEdgeMatrices {
  // [player][row][column]
  std::array<std::array<std::array<Rat, 2>, 2>, 3> M;
};

OneEdgeMatrices one_edge_matrices(const Game& g, const std::array<Rat, 2>& sigma,
                                  const std::array<std::array<Rat, 2>, 2>& tau);

// The same matrices with symbolic parameters, over the ring
// {s1, s2, t11, t12, t21, t22}.
std::array<std::array<std::array<MultiPoly, 2>, 2>, 3> one_edge_matrices_symbolic(
    const Game& g);
const std::vector<std::string>& one_edge_ring();

// det(M1) multiplied by sigma_1 and sigma_2, rewritten in the p variables:
// the two linear forms sum_jk (a_2jk - a_1jk) p_sjk, s = 1, 2. They vanish
// on the whole Spohn variety restricted to the model.
std::array<MultiPoly, 2> one_edge_linear_forms(const Game& g);

// Numerically sampled points of the one-edge Spohn CI curve inside the open
// simplex: for each sigma on a grid, the linear conditions (det M1 and the
// affine normalization) reduce tau to two parameters, and the remaining two
// conics are intersected by resultant + root extraction.
struct OneEdgeSample {
  std::array<Rat, 2> sigma;
  std::array<std::array<Rat, 2>, 2> tau;
  ProbTensor P;     // the product tensor
  double residual;  // normalized Spohn residual at P
};

std::vector<OneEdgeSample> one_edge_curve_samples(const Game& g, int grid = 40);

// Number of complex solutions of the totally mixed Nash system for binary
// games with 2 or 3 players (1 and 2 for generic games). Throws
// std::runtime_error when the de-factored system degenerates.
int full_independence_nash_count(const Game& g);

}  // namespace depeq
