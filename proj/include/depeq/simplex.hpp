#pragma once

#include <vector>

#include "depeq/rational.hpp"

namespace depeq {

enum class LPStatus { Optimal, Infeasible, Unbounded, IterationLimit };

template <class T>
struct LPResult {
  LPStatus status = LPStatus::IterationLimit;
  T value{};             // objective at the optimum; phase-one deficit (< 0) when infeasible
  std::vector<T> x;      // primal optimum, size n, when Optimal
  std::vector<T> farkas; // when Infeasible: y with y.A <= 0 componentwise and y.b > 0
};

// Maximizes c.x subject to A x = b, x >= 0 (A dense, m rows by n columns)
// with a two-phase primal simplex using Bland's rule. tol = 0 pivots
// exactly (use with Rat); floating-point callers pass a small positive
// tolerance. Redundant equality rows are dropped after phase one.
template <class T>
LPResult<T> lp_maximize(std::vector<std::vector<T>> A, std::vector<T> b,
                        const std::vector<T>& c, const T& tol = T(0));

}  // namespace depeq
