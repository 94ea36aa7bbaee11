#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "depeq/game.hpp"
#include "depeq/poly.hpp"

namespace depeq {

// Per player i, the d_i x 2 matrix whose k-th row is
//   ( p_{+...k...+} , sum over profiles with j_i = k of X^(i)_j p_j ).
// A point of the open simplex is a dependency equilibrium exactly when
// every one of these matrices has rank one.
struct SpohnMatrixSet {
  std::vector<std::vector<std::array<Rat, 2>>> matrices;
};

SpohnMatrixSet build_spohn_matrices(const Game& g, const ProbTensor& P);

// M_i with an extra top row (1, P·X^(i)) of column sums; the (top,k) minors
// vanish exactly when player i's conditional payoffs all equal P·X^(i).
std::vector<std::array<Rat, 2>> augmented_spohn_matrix(const Game& g, int player,
                                                       const ProbTensor& P);

// All 2x2 minors of all M_i: players in order, row pairs (k,l), k<l, lex.
// P lies on the Spohn variety (affinely) iff every value is zero.
std::vector<Rat> dependency_residual(const Game& g, const ProbTensor& P);

struct DeCheck {
  bool is_equilibrium = false;
  std::vector<Rat> residuals;   // the certificate
  double normalized_max = 0.0;  // max |minor| / max |entry of its matrix|
};

// tol = 0 demands exact vanishing; otherwise the normalized residual of
// each matrix must stay within tol. P must lie in the open simplex.
DeCheck is_dependency_equilibrium(const Game& g, const ProbTensor& P,
                                  const Rat& tol = Rat(0));

struct NashPoint {
  GameFormat format;
  std::vector<std::vector<Rat>> factors;  // per-player distributions
  ProbTensor tensor;                      // their outer product
  bool in_delta = false;
};

enum class Nash22Status { IN_DELTA, UNBALANCED_SIGNS };

struct Nash22Result {
  Nash22Status status;
  NashPoint point;  // for UNBALANCED_SIGNS the raw projective outer product
};

// The unique candidate rank-one point (b22-b21, b11-b12)^T (a22-a12, a11-a21)
// of a 2x2 game; it lands in the open simplex exactly when
// sign(a11-a21) = sign(a22-a12) != 0 and sign(b11-b12) = sign(b22-b21) != 0.
Nash22Result nash_point_22(const Game& g);

struct Nash222Point {
  std::array<std::complex<double>, 3> params;  // (alpha, beta, gamma)
  bool real = false;
  bool in_delta = false;
  double residual = 0.0;  // max |g_i| at the solution
};

enum class Nash222Status { OK, DEGENERATE };

struct Nash222Result {
  Nash222Status status = Nash222Status::OK;
  std::vector<Nash222Point> points;
  // factors of the raw det M_i removed before solving, per player
  std::vector<std::vector<MultiPoly>> removed_factors;
  std::string note;
};

// Substitutes the rank-one parametrization (alpha,1-alpha) x (beta,1-beta)
// x (gamma,1-gamma) into the three Spohn determinants, strips the simplex
// factors by exact division, and solves the remaining multilinear system
// down to one quadratic. Generic games have exactly two complex solutions.
Nash222Result nash_points_222(const Game& g);

// true iff d_i <= sum_{j != i} d_j - n + 2 for every player i; formats
// failing this have no totally mixed Nash equilibria.
bool is_balanced_format(const GameFormat& f);

// Names p11, p12, ... (indices 1-based, last player fastest) matching the
// flat profile order.
std::vector<std::string> prob_var_names(const std::vector<int>& dims);

// Symbolic Spohn matrices; payoff[i][f] and probs[f] are polynomials (one
// common ring) giving player i's payoff and the probability at profile f.
std::vector<std::vector<std::array<MultiPoly, 2>>> spohn_matrices_symbolic(
    const std::vector<int>& dims,
    const std::vector<std::vector<MultiPoly>>& payoff,
    const std::vector<MultiPoly>& probs);

// Same with rational payoffs from g, over the ring of p-variables only.
std::vector<std::vector<std::array<MultiPoly, 2>>> spohn_matrices_symbolic(
    const Game& g);

// All 2x2 minors (row pairs, lex) of player i's symbolic matrix.
std::vector<MultiPoly> spohn_minors_symbolic(
    const std::vector<std::vector<std::array<MultiPoly, 2>>>& ms, int player);

}  // namespace depeq
