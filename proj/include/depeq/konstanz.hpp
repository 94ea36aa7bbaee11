#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "depeq/game.hpp"
#include "depeq/numeric.hpp"
#include "depeq/poly.hpp"

namespace depeq {

// Stacked matrix with one block of d_i rows per player and one column per
// strategy profile; the (block i, row k) entry of column j is x_i - X^(i)_j
// when j_i = k and zero otherwise. For P summing over its kernel fibers,
// K_X(x) P = 0 encodes "every conditional payoff of player i equals x_i".
struct KonstanzMatrix {
  std::vector<int> dims;
  std::vector<Rat> x;
  std::vector<std::vector<Rat>> entries;  // (sum d_i) x (prod d_i)

  int row_offset(int player) const;
};

KonstanzMatrix build_konstanz(const Game& g, const std::vector<Rat>& x);

// Same matrix with symbolic payoff coordinates x1, ..., xn.
std::vector<std::vector<MultiPoly>> konstanz_symbolic(const Game& g);
std::vector<std::string> payoff_var_names(int players);

struct KernelBasis {
  std::vector<Rat> x;
  int rank = 0;
  std::vector<std::vector<Rat>> basis;  // exact kernel vectors
  int generic_dim = 0;                  // prod d_i - sum d_i (clamped at 0)
};

// Exact kernel of K_X(x) by rational Gaussian elimination.
KernelBasis kernel_at(const Game& g, const std::vector<Rat>& x);

struct KernelBasisF {
  std::vector<double> x;
  int rank = 0;
  std::vector<std::vector<double>> basis;
  double threshold = 0;
};

// Float kernel via singular value decomposition; singular values below
// rel_tol times the largest matrix entry count as zero.
KernelBasisF kernel_at_double(const Game& g, const std::vector<double>& x,
                              double rel_tol = 1e-10);

// A kernel vector rescaled to sum 1, when the kernel is nontrivial and not
// orthogonal to the all-ones functional; empty otherwise. Entries may be
// negative; the result always has dependency_residual zero.
std::optional<ProbTensor> sample_spohn_point(const Game& g,
                                             const std::vector<Rat>& x);

struct SymbolicMinors {
  std::vector<std::vector<int>> column_sets;  // lex-ordered stable ids
  std::vector<MultiPoly> minors;              // same order
};

// All maximal minors of the symbolic Konstanz matrix, columns chosen in
// lexicographic order. Refuses games with more than max_columns profiles.
SymbolicMinors maximal_minors_symbolic(const Game& g, size_t max_columns = 16);

struct RankDropPoint {
  std::array<std::complex<double>, 2> x;  // meaningful where not at infinity
  bool inf1 = false, inf2 = false;
};

struct RankDrop32 {
  std::vector<RankDropPoint> points;
  std::vector<MultiPoly> cubics;  // distinct cubic factors of the minors
  std::string note;               // filled on non-generic coincidences
};

// The finitely many points of P^1 x P^1 where a (3,2)-format Konstanz
// matrix drops to rank 4; generically six, five of them affine.
RankDrop32 rank_drop_points_32(const Game& g);

}  // namespace depeq
