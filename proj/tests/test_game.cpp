#include "depeq/game.hpp"

#include <random>

#include "depeq/json_io.hpp"
#include "doctest.h"

using namespace depeq;

TEST_CASE("flat order puts the last player's index fastest") {
  std::vector<int> dims{2, 2};
  CHECK(flat_index(dims, {0, 0}) == 0);
  CHECK(flat_index(dims, {0, 1}) == 1);
  CHECK(flat_index(dims, {1, 0}) == 2);
  CHECK(flat_index(dims, {1, 1}) == 3);
  std::vector<int> d23{2, 3};
  CHECK(flat_index(d23, {1, 0}) == 3);
  std::vector<int> d222{2, 2, 2};
  CHECK(flat_index(d222, {0, 1, 0}) == 2);
  CHECK(flat_index(d222, {1, 0, 1}) == 5);
  for (size_t f = 0; f < 8; ++f) CHECK(flat_index(d222, unflat_index(d222, f)) == f);
  CHECK_THROWS(flat_index(dims, {0, 2}));
  CHECK_THROWS(unflat_index(dims, 4));
}

TEST_CASE("format validation") {
  CHECK_THROWS(GameFormat{{2}}.validate());
  CHECK_THROWS(GameFormat{{2, 1}}.validate());
  CHECK_NOTHROW(GameFormat{{3, 2}}.validate());
  CHECK(GameFormat{{3, 2}}.profile_count() == 6);
  CHECK(GameFormat{{2, 2, 2, 2}}.dim_sum() == 8);
}

TEST_CASE("marginals of a distribution sum to one") {
  std::mt19937_64 rng(2718);
  for (const auto& dims : {std::vector<int>{2, 2}, {3, 2}, {2, 2, 2}}) {
    ProbTensor P = random_interior_point(rng, dims);
    REQUIRE(P.is_interior());
    for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
      Rat total(0);
      for (int k = 0; k < dims[i]; ++k) total += marginal(P, i, k);
      CHECK(total == 1);
    }
  }
}

TEST_CASE("law of total expectation") {
  std::mt19937_64 rng(163);
  for (const auto& dims : {std::vector<int>{2, 2}, {3, 2}, {2, 2, 2}}) {
    Game g = random_game(rng, dims);
    ProbTensor P = random_interior_point(rng, dims);
    for (int i = 0; i < g.format.players(); ++i) {
      Rat total(0);
      for (int k = 0; k < dims[i]; ++k)
        total += marginal(P, i, k) * conditional_expected_payoff(g, i, k, P);
      CHECK(total == expected_payoff(g, i, P));
    }
  }
}

TEST_CASE("zero marginal is an error") {
  Game g = game_from_matrices({{Rat(3), Rat(0)}, {Rat(0), Rat(2)}},
                              {{Rat(2), Rat(0)}, {Rat(0), Rat(3)}});
  ProbTensor P{{2, 2}, {Rat(0), Rat(0), Rat(1, 2), Rat(1, 2)}};
  CHECK_THROWS_AS(conditional_expected_payoff(g, 0, 0, P), std::domain_error);
  CHECK(conditional_expected_payoff(g, 0, 1, P) == Rat(1));
}

TEST_CASE("expected payoff at the uniform point") {
  Game g = game_from_matrices({{Rat(3), Rat(0)}, {Rat(0), Rat(2)}},
                              {{Rat(2), Rat(0)}, {Rat(0), Rat(3)}});
  ProbTensor U = ProbTensor::uniform({2, 2});
  CHECK(expected_payoff(g, 0, U) == Rat(5, 4));
  CHECK(expected_payoff(g, 1, U) == Rat(5, 4));
}

TEST_CASE("json round trip") {
  std::mt19937_64 rng(55);
  for (const auto& dims : {std::vector<int>{2, 2}, {3, 2}, {2, 2, 2}}) {
    Game g = random_game(rng, dims);
    Game h = game_from_json(game_to_json(g));
    CHECK(h.format.dims == g.format.dims);
    CHECK(h.payoff == g.payoff);
    ProbTensor P = random_interior_point(rng, dims);
    ProbTensor Q = prob_from_json(prob_to_json(P));
    CHECK(Q.p == P.p);
  }
}

TEST_CASE("json accepts integers, fractions and decimals") {
  auto j = nlohmann::json::parse(R"({
    "dims": [2, 2],
    "payoffs": [
      {"player": 1, "entries": [3, "0", "0", "3.3"]},
      {"player": 2, "entries": ["2", "1/2", "0", "3"]}
    ]
  })");
  Game g = game_from_json(j);
  CHECK(g.at(0, {1, 1}) == Rat(33, 10));
  CHECK(g.at(1, {0, 1}) == Rat(1, 2));
}

TEST_CASE("rational parsing accepts scientific notation") {
  CHECK(rat_parse("1e-9") == Rat(1, 1000000000));
  CHECK(rat_parse("2.5e3") == Rat(2500));
  CHECK(rat_parse("-3E+2") == Rat(-300));
  CHECK(rat_parse("1e0") == Rat(1));
  CHECK_THROWS_AS(rat_parse("1e"), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse("e9"), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse("1/2e3"), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse("1e2.5"), std::invalid_argument);
}

TEST_CASE("malformed game files are rejected") {
  auto base = R"({"dims":[2,2],"payoffs":[
    {"player":1,"entries":["1","2","3","4"]},
    {"player":2,"entries":["1","2","3","4"]}]})";
  CHECK_NOTHROW(game_from_json(nlohmann::json::parse(base)));

  auto wrong_count = nlohmann::json::parse(base);
  wrong_count["payoffs"][0]["entries"] = {"1", "2", "3"};
  CHECK_THROWS(game_from_json(wrong_count));

  auto dup_player = nlohmann::json::parse(base);
  dup_player["payoffs"][1]["player"] = 1;
  CHECK_THROWS(game_from_json(dup_player));

  auto bad_dim = nlohmann::json::parse(base);
  bad_dim["dims"] = {2, 1};
  CHECK_THROWS(game_from_json(bad_dim));

  auto bad_entry = nlohmann::json::parse(base);
  bad_entry["payoffs"][0]["entries"][0] = "x/y";
  CHECK_THROWS(game_from_json(bad_entry));
}
