#include "depeq/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace depeq {

using nlohmann::json;

Rat rat_from_json(const json& v) {
  if (v.is_string()) return rat_parse(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<long>());
  throw std::invalid_argument("expected a rational as \"p/q\" string or integer, got " +
                              v.dump());
}

json game_to_json(const Game& g) {
  json j;
  j["dims"] = g.format.dims;
  j["payoffs"] = json::array();
  for (size_t i = 0; i < g.payoff.size(); ++i) {
    json t;
    t["player"] = i + 1;
    t["entries"] = json::array();
    for (const auto& v : g.payoff[i]) t["entries"].push_back(rat_str(v));
    j["payoffs"].push_back(std::move(t));
  }
  return j;
}

Game game_from_json(const json& j) {
  if (!j.contains("dims") || !j.contains("payoffs"))
    throw std::invalid_argument("game json needs \"dims\" and \"payoffs\"");
  Game g;
  g.format.dims = j.at("dims").get<std::vector<int>>();
  g.format.validate();
  size_t m = g.format.profile_count();
  g.payoff.assign(g.format.players(), std::vector<Rat>(m));
  std::vector<bool> seen(g.format.players(), false);
  if (j.at("payoffs").size() != g.payoff.size())
    throw std::invalid_argument("game json: one payoff table per player required");
  for (const auto& t : j.at("payoffs")) {
    int player = t.at("player").get<int>();
    if (player < 1 || player > g.format.players())
      throw std::invalid_argument("game json: player index out of range");
    if (seen[player - 1])
      throw std::invalid_argument("game json: duplicate player " +
                                  std::to_string(player));
    seen[player - 1] = true;
    const auto& entries = t.at("entries");
    if (entries.size() != m)
      throw std::invalid_argument("game json: expected " + std::to_string(m) +
                                  " entries for player " + std::to_string(player));
    for (size_t f = 0; f < m; ++f) g.payoff[player - 1][f] = rat_from_json(entries[f]);
  }
  g.validate();
  return g;
}

Game load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open game file: " + path);
  json j;
  in >> j;
  return game_from_json(j);
}

void save_game(const Game& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write game file: " + path);
  out << game_to_json(g).dump(2) << "\n";
}

json prob_to_json(const ProbTensor& P) {
  json j;
  j["dims"] = P.dims;
  j["entries"] = json::array();
  for (const auto& v : P.p) j["entries"].push_back(rat_str(v));
  return j;
}

ProbTensor prob_from_json(const json& j) {
  ProbTensor P;
  P.dims = j.at("dims").get<std::vector<int>>();
  GameFormat fmt{P.dims};
  fmt.validate();
  const auto& entries = j.at("entries");
  if (entries.size() != fmt.profile_count())
    throw std::invalid_argument("probability json: entry count mismatch");
  for (const auto& v : entries) P.p.push_back(rat_from_json(v));
  return P;
}

ProbTensor load_prob(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open probability file: " + path);
  json j;
  in >> j;
  return prob_from_json(j);
}

}  // namespace depeq
