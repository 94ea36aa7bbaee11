#include "depeq/game.hpp"

#include <numeric>
#include <stdexcept>

namespace depeq {

size_t GameFormat::profile_count() const {
  size_t n = 1;
  for (int d : dims) n *= static_cast<size_t>(d);
  return n;
}

int GameFormat::dim_sum() const {
  return std::accumulate(dims.begin(), dims.end(), 0);
}

void GameFormat::validate() const {
  if (dims.size() < 2)
    throw std::invalid_argument("GameFormat: need at least two players");
  for (int d : dims)
    if (d < 2) throw std::invalid_argument("GameFormat: every d_i must be >= 2");
}

size_t flat_index(const std::vector<int>& dims, const std::vector<int>& profile) {
  if (profile.size() != dims.size())
    throw std::invalid_argument("flat_index: profile length mismatch");
  size_t f = 0;
  for (size_t i = 0; i < dims.size(); ++i) {
    if (profile[i] < 0 || profile[i] >= dims[i])
      throw std::out_of_range("flat_index: strategy out of range");
    f = f * static_cast<size_t>(dims[i]) + static_cast<size_t>(profile[i]);
  }
  return f;
}

std::vector<int> unflat_index(const std::vector<int>& dims, size_t flat) {
  std::vector<int> profile(dims.size());
  for (size_t i = dims.size(); i-- > 0;) {
    profile[i] = static_cast<int>(flat % static_cast<size_t>(dims[i]));
    flat /= static_cast<size_t>(dims[i]);
  }
  if (flat) throw std::out_of_range("unflat_index: flat index out of range");
  return profile;
}

const Rat& Game::at(int player, const std::vector<int>& profile) const {
  return payoff.at(player).at(flat_index(format.dims, profile));
}

Rat& Game::at(int player, const std::vector<int>& profile) {
  return payoff.at(player).at(flat_index(format.dims, profile));
}

void Game::validate() const {
  format.validate();
  if (payoff.size() != static_cast<size_t>(format.players()))
    throw std::invalid_argument("Game: one payoff table per player required");
  for (const auto& t : payoff)
    if (t.size() != format.profile_count())
      throw std::invalid_argument("Game: payoff table size mismatch");
}

const Rat& ProbTensor::at(const std::vector<int>& profile) const {
  return p.at(flat_index(dims, profile));
}

Rat ProbTensor::sum() const {
  Rat s(0);
  for (const auto& v : p) s += v;
  return s;
}

bool ProbTensor::is_distribution() const {
  for (const auto& v : p)
    if (v < 0) return false;
  return sum() == 1;
}

bool ProbTensor::is_interior() const {
  for (const auto& v : p)
    if (v <= 0) return false;
  return sum() == 1;
}

ProbTensor ProbTensor::uniform(const std::vector<int>& dims) {
  GameFormat fmt{dims};
  ProbTensor P{dims, std::vector<Rat>(fmt.profile_count())};
  Rat w(1, static_cast<unsigned long>(fmt.profile_count()));
  for (auto& v : P.p) v = w;
  return P;
}

Game game_from_matrices(const std::vector<std::vector<Rat>>& a,
                        const std::vector<std::vector<Rat>>& b) {
  int d1 = static_cast<int>(a.size());
  int d2 = d1 ? static_cast<int>(a[0].size()) : 0;
  if (b.size() != a.size())
    throw std::invalid_argument("game_from_matrices: shape mismatch");
  Game g;
  g.format.dims = {d1, d2};
  g.payoff.assign(2, std::vector<Rat>(g.format.profile_count()));
  for (int i = 0; i < d1; ++i) {
    if (static_cast<int>(a[i].size()) != d2 || static_cast<int>(b[i].size()) != d2)
      throw std::invalid_argument("game_from_matrices: ragged matrix");
    for (int j = 0; j < d2; ++j) {
      size_t f = flat_index(g.format.dims, {i, j});
      g.payoff[0][f] = a[i][j];
      g.payoff[1][f] = b[i][j];
    }
  }
  g.validate();
  return g;
}

Game random_game(std::mt19937_64& rng, const std::vector<int>& dims, long bound) {
  Game g;
  g.format.dims = dims;
  g.format.validate();
  g.payoff.assign(dims.size(), {});
  for (auto& t : g.payoff) t = rat_random_vec(rng, g.format.profile_count(), bound);
  return g;
}

ProbTensor random_interior_point(std::mt19937_64& rng,
                                 const std::vector<int>& dims, long bound) {
  GameFormat fmt{dims};
  ProbTensor P{dims, {}};
  std::uniform_int_distribution<long> num(1, bound);
  std::vector<Rat> w;
  Rat total(0);
  for (size_t i = 0; i < fmt.profile_count(); ++i) {
    w.emplace_back(num(rng), num(rng));
    w.back().canonicalize();
    total += w.back();
  }
  for (auto& v : w) P.p.push_back(v / total);
  return P;
}

Rat expected_payoff(const Game& g, int player, const ProbTensor& P) {
  if (P.dims != g.format.dims)
    throw std::invalid_argument("expected_payoff: dims mismatch");
  const auto& t = g.payoff.at(player);
  Rat s(0);
  for (size_t f = 0; f < t.size(); ++f) s += t[f] * P.p[f];
  return s;
}

Rat marginal(const ProbTensor& P, int player, int k) {
  Rat s(0);
  for (size_t f = 0; f < P.p.size(); ++f)
    if (unflat_index(P.dims, f)[player] == k) s += P.p[f];
  return s;
}

Rat conditional_expected_payoff(const Game& g, int player, int k,
                                const ProbTensor& P) {
  if (P.dims != g.format.dims)
    throw std::invalid_argument("conditional_expected_payoff: dims mismatch");
  Rat m(0), num(0);
  for (size_t f = 0; f < P.p.size(); ++f) {
    if (unflat_index(P.dims, f)[player] != k) continue;
    m += P.p[f];
    num += g.payoff.at(player)[f] * P.p[f];
  }
  if (m == 0)
    throw std::domain_error("conditional_expected_payoff: zero marginal for player " +
                            std::to_string(player + 1) + ", strategy " +
                            std::to_string(k + 1));
  return num / m;
}

}  // namespace depeq
