#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "depeq/game.hpp"
#include "depeq/konstanz.hpp"
#include "depeq/poly.hpp"

namespace depeq {

// Expected payoff vector (P.X^(1), ..., P.X^(n)).
std::vector<Rat> payoff_map(const Game& g, const ProbTensor& P);

// Vertices of the convex hull of the per-profile payoff vectors. For two
// players the hull is returned counterclockwise starting at the
// lexicographic minimum; for more players the vertex set keeps input order.
std::vector<std::vector<Rat>> payoff_polytope(const Game& g);

// Outcome of the fiber linear program at a payoff vector x:
//   maximize t  subject to  K_X(x) P = 0, sum(P) = 1, P >= t
// The fiber is empty iff the program is infeasible; otherwise t_star is the
// best achievable minimum entry. "Inside" means t_star > eps, except that
// eps = 0 asks for the closed fiber (t_star >= 0).
struct MembershipResult {
  bool inside = false;
  bool fiber_empty = false;
  Rat t_star;                              // meaningful unless fiber_empty
  std::optional<ProbTensor> certificate;   // inside only: an exact witness
  std::vector<Rat> farkas;                 // fiber_empty only: y with
                                           // y.[K; 1] <= 0 and y_last > 0
};

MembershipResult region_membership(const Game& g, const std::vector<Rat>& x,
                                   const Rat& eps);

// Signs ('-', '0', '+') of the not-identically-zero maximal minors of the
// symbolic matrix, evaluated exactly at x, in the canonical minor order.
std::string sign_vector_at(const Game& g, const std::vector<Rat>& x);
std::string sign_vector(const SymbolicMinors& sm, const std::vector<Rat>& x);

enum class CellStatus : std::uint8_t { Outside = 0, Inside = 1, BoundaryUncertain = 2 };

// Cell-center classification of the payoff region over the bounding box of
// the payoff polytope. Cells are indexed with the player-1 axis fastest.
// A cell is Inside (with an exact certificate for its center) only when no
// maximal minor changes sign across its corners; any cell straddling such a
// sign change is BoundaryUncertain, because a region boundary piece may
// cross it regardless of what the center alone says.
struct RegionRaster {
  std::vector<Rat> lo, hi;   // bounding box corners
  int res = 0;               // cells per axis
  int axes = 0;              // number of players n
  Rat eps;
  std::vector<CellStatus> status;         // res^n entries
  std::vector<double> t_star;             // NaN where the fiber is empty
  std::vector<std::string> signs;         // center sign pattern, float eval
  std::map<std::size_t, ProbTensor> certificates;  // keyed by inside cells

  std::size_t cell_count() const;
  std::vector<double> cell_center(std::size_t idx) const;
  // Connected components of Inside cells under 2n-adjacency;
  // BoundaryUncertain cells never join two components.
  int component_count() const;
};

RegionRaster rasterize_region(const Game& g, int resolution, const Rat& eps);

// Pareto test by probing x + delta * direction for closure membership along
// the coordinate axes and sampled strictly positive rays, with delta on a
// decreasing schedule. Not Pareto optimal iff some probe stays in the
// region's closure. `conclusive` is false when the smallest probes came
// within 1e-9 of feasibility without crossing it.
struct ParetoResult {
  bool pareto = false;
  bool conclusive = true;
  explicit operator bool() const { return pareto; }
};

ParetoResult pareto_optimal(const Game& g, const std::vector<Rat>& x,
                            int ray_samples = 8, std::uint64_t seed = 1);

// Deduplicated irreducible-candidate factors of the nonzero maximal
// minors: payoff-shift linear factors are peeled exactly, whatever remains
// is emitted as-is (primitive, positive leading coefficient).
std::vector<MultiPoly> boundary_candidates(const Game& g);

}  // namespace depeq
