#pragma once

#include <string>

#include "depeq/game.hpp"
#include "json.hpp"

namespace depeq {

// On-disk game format:
// {"dims":[2,2],
//  "payoffs":[{"player":1,"entries":["3","0","0","2"]},
//             {"player":2,"entries":["2","0","0","3"]}]}
// Entries follow the flat profile order (last player's index fastest) and
// may be "p/q" strings, decimal strings, or plain JSON integers.
nlohmann::json game_to_json(const Game& g);
Game game_from_json(const nlohmann::json& j);
Game load_game(const std::string& path);
void save_game(const Game& g, const std::string& path);

// {"dims":[2,2],"entries":["1/4","1/4","1/4","1/4"]}
nlohmann::json prob_to_json(const ProbTensor& P);
ProbTensor prob_from_json(const nlohmann::json& j);
ProbTensor load_prob(const std::string& path);

Rat rat_from_json(const nlohmann::json& v);

}  // namespace depeq
