#pragma once

#include <random>
#include <string>
#include <vector>

#include "depeq/rational.hpp"

namespace depeq {

// Strategy counts (d_1, ..., d_n) of a finite game in normal form.
struct GameFormat {
  std::vector<int> dims;

  int players() const { return static_cast<int>(dims.size()); }
  size_t profile_count() const;
  int dim_sum() const;
  void validate() const;  // every d_i >= 2, at least 2 players
};

// Strategy profiles are flattened with the last index fastest, so for
// dims (2,2) the order is (1,1), (1,2), (2,1), (2,2).
size_t flat_index(const std::vector<int>& dims, const std::vector<int>& profile);
std::vector<int> unflat_index(const std::vector<int>& dims, size_t flat);

// Payoff tables for every player, indexed [player][flat profile].
struct Game {
  GameFormat format;
  std::vector<std::vector<Rat>> payoff;

  const Rat& at(int player, const std::vector<int>& profile) const;
  Rat& at(int player, const std::vector<int>& profile);
  void validate() const;
};

// A joint probability table over strategy profiles, same flattening.
struct ProbTensor {
  std::vector<int> dims;
  std::vector<Rat> p;

  const Rat& at(const std::vector<int>& profile) const;
  Rat sum() const;
  bool is_distribution() const;          // entries >= 0 and sum == 1
  bool is_interior() const;              // entries > 0 and sum == 1
  static ProbTensor uniform(const std::vector<int>& dims);
};

// Two-player game from row-player and column-player payoff matrices.
Game game_from_matrices(const std::vector<std::vector<Rat>>& a,
                        const std::vector<std::vector<Rat>>& b);

Game random_game(std::mt19937_64& rng, const std::vector<int>& dims,
                 long bound = 9);
// Interior rational distribution with denominator control for tests.
ProbTensor random_interior_point(std::mt19937_64& rng,
                                 const std::vector<int>& dims, long bound = 9);

Rat expected_payoff(const Game& g, int player, const ProbTensor& P);

// Marginal probability that `player` plays strategy k: sum of P over all
// profiles whose player-th coordinate is k.
Rat marginal(const ProbTensor& P, int player, int k);

// Expected payoff of `player` conditional on them playing strategy k.
// Throws std::domain_error when the conditioning marginal is zero.
Rat conditional_expected_payoff(const Game& g, int player, int k,
                                const ProbTensor& P);

}  // namespace depeq
