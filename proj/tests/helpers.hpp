#pragma once

#include <random>
#include <tuple>
#include <vector>

#include "depeq/game.hpp"
#include "depeq/rational.hpp"

namespace depeq::testing {

// Builds a game whose Konstanz kernel at x contains the interior point P:
// payoffs start random, then for each player i and strategy k the entry at
// the profile (j_i = k, all other coordinates last) is re-solved so that
// sum_{j : j_i = k} (x_i - X_i[j]) P[j] = 0 holds exactly.
inline std::tuple<Game, ProbTensor, std::vector<Rat>> positive_spohn_instance(
    std::mt19937_64& rng, const std::vector<int>& dims) {
  Game g = random_game(rng, dims);
  ProbTensor P = random_interior_point(rng, dims);
  std::vector<Rat> x = rat_random_vec(rng, dims.size(), 6, 2);
  int n = static_cast<int>(dims.size());
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < dims[i]; ++k) {
      std::vector<int> star(dims.begin(), dims.end());
      for (int m = 0; m < n; ++m) star[m] = (m == i) ? k : dims[m] - 1;
      size_t fstar = flat_index(dims, star);
      Rat s = 0;
      for (size_t f = 0; f < g.format.profile_count(); ++f) {
        if (f == fstar) continue;
        if (unflat_index(dims, f)[i] != k) continue;
        s += (x[i] - g.payoff[i][f]) * P.p[f];
      }
      g.payoff[i][fstar] = x[i] + s / P.p[fstar];
    }
  }
  return {std::move(g), std::move(P), std::move(x)};
}

}  // namespace depeq::testing
