#include "depeq/simplex.hpp"

#include <random>

#include "doctest.h"

using namespace depeq;

namespace {

// feasibility check for A x = b, x >= 0 in exact arithmetic
bool satisfies(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
               const std::vector<Rat>& x) {
  for (const auto& v : x)
    if (v < 0) return false;
  for (size_t i = 0; i < A.size(); ++i) {
    Rat acc = 0;
    for (size_t j = 0; j < x.size(); ++j) acc += A[i][j] * x[j];
    if (acc != b[i]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("textbook maximum with slacks") {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6
  std::vector<std::vector<Rat>> A{{1, 2, 1, 0}, {3, 1, 0, 1}};
  std::vector<Rat> b{4, 6};
  std::vector<Rat> c{1, 1, 0, 0};
  auto r = lp_maximize(A, b, c);
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.value == Rat(14, 5));
  CHECK(r.x[0] == Rat(8, 5));
  CHECK(r.x[1] == Rat(6, 5));
  CHECK(satisfies(A, b, r.x));
}

TEST_CASE("negative right-hand sides are handled by row flips") {
  // x - y = -3, x + y = 5  ->  x = 1, y = 4
  std::vector<std::vector<Rat>> A{{1, -1}, {1, 1}};
  std::vector<Rat> b{-3, 5};
  std::vector<Rat> c{0, 1};
  auto r = lp_maximize(A, b, c);
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.x == std::vector<Rat>{1, 4});
}

TEST_CASE("infeasible system yields a verified Farkas witness") {
  // x1 + x2 = -1 with x >= 0 is impossible
  std::vector<std::vector<Rat>> A{{1, 1}};
  std::vector<Rat> b{-1};
  std::vector<Rat> c{1, 0};
  auto r = lp_maximize(A, b, c);
  REQUIRE(r.status == LPStatus::Infeasible);
  REQUIRE(r.farkas.size() == 1);
  // y.A <= 0 and y.b > 0 refute feasibility
  for (size_t j = 0; j < 2; ++j) CHECK(r.farkas[0] * A[0][j] <= 0);
  CHECK(r.farkas[0] * b[0] > 0);
}

TEST_CASE("random infeasible systems: Farkas certificates check out") {
  std::mt19937_64 rng(5150);
  int found = 0;
  for (int t = 0; t < 40; ++t) {
    // nonnegative columns, one negative b entry: cone(A) misses b
    size_t m = 3, n = 4;
    std::vector<std::vector<Rat>> A(m, std::vector<Rat>(n));
    std::uniform_int_distribution<int> d(0, 9);
    for (auto& row : A)
      for (auto& v : row) v = d(rng);
    std::vector<Rat> b{Rat(d(rng)), -Rat(1 + d(rng)), Rat(d(rng))};
    auto r = lp_maximize(A, b, std::vector<Rat>(n, Rat(0)));
    if (r.status != LPStatus::Infeasible) continue;  // can be feasible if a column is zero-ish
    ++found;
    REQUIRE(r.farkas.size() == m);
    Rat yb = 0;
    for (size_t i = 0; i < m; ++i) yb += r.farkas[i] * b[i];
    CHECK(yb > 0);
    for (size_t j = 0; j < n; ++j) {
      Rat ya = 0;
      for (size_t i = 0; i < m; ++i) ya += r.farkas[i] * A[i][j];
      CHECK(ya <= 0);
    }
  }
  CHECK(found > 10);
}

TEST_CASE("unbounded ray is reported") {
  // max x s.t. x - y = 0: the ray (t, t) grows forever
  std::vector<std::vector<Rat>> A{{1, -1}};
  std::vector<Rat> b{0};
  std::vector<Rat> c{1, 0};
  auto r = lp_maximize(A, b, c);
  CHECK(r.status == LPStatus::Unbounded);
}

TEST_CASE("Bland's rule passes the classic cycling example") {
  // Beale: max 3/4 x1 - 150 x2 + 1/50 x3 - 6 x4 with slacks, optimum 1/20
  std::vector<std::vector<Rat>> A{
      {Rat(1, 4), -60, Rat(-1, 25), 9, 1, 0, 0},
      {Rat(1, 2), -90, Rat(-1, 50), 3, 0, 1, 0},
      {0, 0, 1, 0, 0, 0, 1}};
  std::vector<Rat> b{0, 0, 1};
  std::vector<Rat> c{Rat(3, 4), -150, Rat(1, 50), -6, 0, 0, 0};
  auto r = lp_maximize(A, b, c);
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.value == Rat(1, 20));
  CHECK(r.x[0] == Rat(1, 25));
  CHECK(r.x[2] == 1);
}

TEST_CASE("redundant equality rows are tolerated") {
  // duplicated constraint x + y = 2
  std::vector<std::vector<Rat>> A{{1, 1}, {1, 1}, {1, -1}};
  std::vector<Rat> b{2, 2, 0};
  std::vector<Rat> c{1, 0};
  auto r = lp_maximize(A, b, c);
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.x == std::vector<Rat>{1, 1});
}

TEST_CASE("float mode agrees with exact mode on small instances") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> d(-5, 5);
  int compared = 0;
  for (int t = 0; t < 60; ++t) {
    size_t m = 2 + t % 2, n = 4 + t % 3;
    std::vector<std::vector<Rat>> A(m, std::vector<Rat>(n));
    std::vector<std::vector<double>> Ad(m, std::vector<double>(n));
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < n; ++j) {
        int v = d(rng);
        A[i][j] = v;
        Ad[i][j] = v;
      }
    std::vector<Rat> b(m);
    std::vector<double> bd(m);
    for (size_t i = 0; i < m; ++i) {
      int v = d(rng);
      b[i] = v;
      bd[i] = v;
    }
    std::vector<Rat> c(n);
    std::vector<double> cd(n);
    for (size_t j = 0; j < n; ++j) {
      int v = d(rng);
      c[j] = v;
      cd[j] = v;
    }
    auto re = lp_maximize(A, b, c);
    auto rf = lp_maximize(Ad, bd, cd, 1e-9);
    if (re.status == LPStatus::IterationLimit ||
        rf.status == LPStatus::IterationLimit)
      continue;
    ++compared;
    CHECK(re.status == rf.status);
    if (re.status == LPStatus::Optimal)
      CHECK(std::abs(rat_double(re.value) - rf.value) < 1e-6);
  }
  CHECK(compared > 40);
}
