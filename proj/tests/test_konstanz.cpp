#include "depeq/konstanz.hpp"

#include <algorithm>
#include <random>

#include "helpers.hpp"

#include "depeq/spohn.hpp"
#include "doctest.h"

using namespace depeq;

namespace {

Game generic_32_game() {
  Game g;
  g.format.dims = {3, 2};
  g.payoff = {{Rat(0), Rat(30), Rat(5), Rat(25), Rat(13), Rat(24)},
              {Rat(6), Rat(42), Rat(21), Rat(12), Rat(36), Rat(0)}};
  return g;
}

}  // namespace

TEST_CASE("2x2 Konstanz layout") {
  std::mt19937_64 rng(8);
  Game g = random_game(rng, {2, 2});
  auto a = [&](int i, int j) { return g.at(0, {i, j}); };
  auto b = [&](int i, int j) { return g.at(1, {i, j}); };
  std::vector<Rat> x{Rat(5), Rat(7)};
  auto K = build_konstanz(g, x);
  REQUIRE(K.entries.size() == 4);
  REQUIRE(K.entries[0].size() == 4);
  CHECK(K.entries[0] ==
        std::vector<Rat>{x[0] - a(0, 0), x[0] - a(0, 1), Rat(0), Rat(0)});
  CHECK(K.entries[1] ==
        std::vector<Rat>{Rat(0), Rat(0), x[0] - a(1, 0), x[0] - a(1, 1)});
  CHECK(K.entries[2] ==
        std::vector<Rat>{x[1] - b(0, 0), Rat(0), x[1] - b(1, 0), Rat(0)});
  CHECK(K.entries[3] ==
        std::vector<Rat>{Rat(0), x[1] - b(0, 1), Rat(0), x[1] - b(1, 1)});
}

TEST_CASE("3x2 Konstanz layout: 5x6 with one nonzero entry per block") {
  Game g = generic_32_game();
  auto K = build_konstanz(g, {Rat(1), Rat(2)});
  REQUIRE(K.entries.size() == 5);
  REQUIRE(K.entries[0].size() == 6);
  for (size_t f = 0; f < 6; ++f) {
    auto j = unflat_index({3, 2}, f);
    for (int r = 0; r < 3; ++r)
      CHECK((K.entries[r][f] != 0 || Rat(1) - g.payoff[0][f] == 0) ==
            (r == j[0]));
    for (int r = 0; r < 2; ++r)
      CHECK((K.entries[3 + r][f] != 0 || Rat(2) - g.payoff[1][f] == 0) ==
            (r == j[1]));
  }
  CHECK(K.row_offset(1) == 3);
}

TEST_CASE("zero payoffs at x=(1,...,1) give vertex incidence columns") {
  Game g;
  g.format.dims = {2, 2, 2};
  g.payoff.assign(3, std::vector<Rat>(8, Rat(0)));
  auto K = build_konstanz(g, {Rat(1), Rat(1), Rat(1)});
  for (size_t f = 0; f < 8; ++f) {
    auto j = unflat_index({2, 2, 2}, f);
    for (int i = 0, off = 0; i < 3; off += 2, ++i)
      for (int k = 0; k < 2; ++k)
        CHECK(K.entries[off + k][f] == (j[i] == k ? Rat(1) : Rat(0)));
  }
}

TEST_CASE("K(x) P stacks the matrices M_i(P) applied to (x_i, -1)") {
  std::mt19937_64 rng(606);
  for (const auto& dims :
       {std::vector<int>{2, 2}, {3, 2}, {3, 3}, {2, 2, 2}, {2, 2, 2, 2}}) {
    Game g = random_game(rng, dims);
    ProbTensor P = random_interior_point(rng, dims);
    auto x = rat_random_vec(rng, dims.size());
    auto K = build_konstanz(g, x);
    auto ms = build_spohn_matrices(g, P);
    int off = 0;
    for (size_t i = 0; i < dims.size(); ++i) {
      for (int k = 0; k < dims[i]; ++k) {
        Rat lhs(0);
        for (size_t f = 0; f < P.p.size(); ++f)
          lhs += K.entries[off + k][f] * P.p[f];
        Rat rhs = ms.matrices[i][k][0] * x[i] - ms.matrices[i][k][1];
        CHECK(lhs == rhs);
      }
      off += dims[i];
    }
  }
}

TEST_CASE("generic kernel dimension is profiles minus strategies") {
  std::mt19937_64 rng(1903);
  struct Case {
    std::vector<int> dims;
    int dim;
  };
  for (const auto& c : {Case{{3, 2}, 1}, Case{{3, 3}, 3}, Case{{2, 2, 2}, 2},
                        Case{{2, 2, 2, 2}, 8}}) {
    Game g = random_game(rng, c.dims);
    for (int t = 0; t < 10; ++t) {
      auto x = rat_random_vec(rng, c.dims.size(), 40, 7);
      auto ker = kernel_at(g, x);
      CHECK(ker.rank == g.format.dim_sum());
      CHECK(static_cast<int>(ker.basis.size()) == c.dim);
      CHECK(ker.generic_dim == c.dim);
    }
  }
}

TEST_CASE("2x2 kernel is trivial off the curve and sampling is EMPTY") {
  std::mt19937_64 rng(22);
  Game g = random_game(rng, {2, 2});
  auto x = std::vector<Rat>{Rat(1000, 7), Rat(2000, 11)};  // far off the curve
  auto ker = kernel_at(g, x);
  CHECK(ker.rank == 4);
  CHECK(ker.basis.empty());
  CHECK(!sample_spohn_point(g, x).has_value());
}

TEST_CASE("sampled kernel points satisfy the conditional payoff identity") {
  std::mt19937_64 rng(77);
  int sampled = 0;
  for (int t = 0; t < 40; ++t) {
    Game g = random_game(rng, {3, 2}, 5);
    auto x = rat_random_vec(rng, 2, 6, 3);
    auto P = sample_spohn_point(g, x);
    if (!P) continue;
    ++sampled;
    for (const auto& r : dependency_residual(g, *P)) CHECK(r == 0);
    for (int i = 0; i < 2; ++i) {
      CHECK(expected_payoff(g, i, *P) == x[i]);
      for (int k = 0; k < g.format.dims[i]; ++k) {
        if (marginal(*P, i, k) == 0) continue;  // conditional undefined
        CHECK(conditional_expected_payoff(g, i, k, *P) == x[i]);
      }
    }
  }
  CHECK(sampled > 0);
}

TEST_CASE("games built around an interior point sample back to that point") {
  std::mt19937_64 rng(78);
  for (const auto& dims :
       std::vector<std::vector<int>>{{2, 2}, {3, 2}, {2, 2, 2}}) {
    for (int t = 0; t < 5; ++t) {
      auto [g, P, x] = depeq::testing::positive_spohn_instance(rng, dims);
      // P is interior and lies in the kernel, so it is a dependency
      // equilibrium with value x
      for (const auto& r : dependency_residual(g, P)) CHECK(r == 0);
      for (size_t i = 0; i < dims.size(); ++i) {
        CHECK(expected_payoff(g, static_cast<int>(i), P) == x[i]);
        for (int k = 0; k < dims[i]; ++k)
          CHECK(conditional_expected_payoff(g, static_cast<int>(i), k, P) ==
                x[i]);
      }
      auto ker = kernel_at(g, x);
      REQUIRE(!ker.basis.empty());
      if (ker.basis.size() == 1) {
        // one-dimensional kernel: the normalized sample is exactly P
        auto Q = sample_spohn_point(g, x);
        REQUIRE(Q.has_value());
        CHECK(Q->p == P.p);
      }
    }
  }
}

TEST_CASE("maximal minor counts and the degree bound") {
  std::mt19937_64 rng(3141);
  struct Case {
    std::vector<int> dims;
    size_t count;
  };
  for (const auto& c :
       {Case{{2, 2}, 1}, Case{{3, 2}, 6}, Case{{2, 2, 2}, 28}}) {
    Game g = random_game(rng, c.dims);
    auto sm = maximal_minors_symbolic(g);
    CHECK(sm.minors.size() == c.count);
    CHECK(sm.column_sets.size() == c.count);
    int bound = g.format.dim_sum() - g.format.players() + 1;
    for (const auto& m : sm.minors) CHECK(m.total_degree() <= bound);
  }
  Game big = random_game(rng, {3, 3, 2});
  CHECK_THROWS(maximal_minors_symbolic(big));
}

TEST_CASE("(2,2,2) maximal minors are quartics") {
  std::mt19937_64 rng(999);
  Game g = random_game(rng, {2, 2, 2});
  auto sm = maximal_minors_symbolic(g);
  for (const auto& m : sm.minors) CHECK(m.total_degree() == 4);
}

TEST_CASE("3x2 fixture: boundary cubics and rank-drop points") {
  Game g = generic_32_game();
  auto rd = rank_drop_points_32(g);
  INFO(rd.note);
  CHECK(rd.note.empty());
  REQUIRE(rd.cubics.size() >= 2);
  std::vector<std::string> ring{"x1", "x2"};
  auto c1 = poly_parse(ring,
                       "9*x1^2*x2 - 2*x1*x2^2 - 162*x1^2 - 189*x1*x2 +"
                       "30*x2^2 + 3906*x1 - 540*x2 + 2160");
  auto c2 = poly_parse(ring,
                       "72*x1^2*x2 - 19*x1*x2^2 - 1512*x1^2 - 1614*x1*x2 +"
                       "390*x2^2 + 36288*x1 - 2340*x2");
  auto has = [&](const MultiPoly& c) {
    return std::find(rd.cubics.begin(), rd.cubics.end(), c) != rd.cubics.end();
  };
  CHECK(has(c1));
  CHECK(has(c2));

  REQUIRE(rd.points.size() == 6);
  int affine = 0, at_inf = 0;
  bool special_found = false;
  for (const auto& p : rd.points) {
    if (p.inf1 || p.inf2) {
      ++at_inf;
      continue;
    }
    ++affine;
    if (std::abs(p.x[0] - std::complex<double>(22.9902299164, 0)) < 1e-6 &&
        std::abs(p.x[1] - std::complex<double>(16.2987107576, 0)) < 1e-6)
      special_found = true;
  }
  CHECK(affine == 5);
  CHECK(at_inf == 1);
  CHECK(special_found);
}

TEST_CASE("3x2 fixture: numeric rank at the special point is 4") {
  Game g = generic_32_game();
  auto ker = kernel_at_double(g, {22.9902299164, 16.2987107576}, 1e-7);
  CHECK(ker.rank == 4);
  CHECK(ker.basis.size() == 2);
  auto nearby = kernel_at_double(g, {22.5, 16.0}, 1e-7);
  CHECK(nearby.rank == 5);
}

TEST_CASE("random 3x2 games have five affine rank-drop points") {
  std::mt19937_64 rng(112233);
  int checked = 0;
  for (int t = 0; t < 6 && checked < 3; ++t) {
    Game g = random_game(rng, {3, 2}, 12);
    auto rd = rank_drop_points_32(g);
    if (!rd.note.empty()) continue;
    ++checked;
    int affine = 0;
    for (const auto& p : rd.points)
      if (!p.inf1 && !p.inf2) ++affine;
    CHECK(affine == 5);
  }
  CHECK(checked >= 3);
}
