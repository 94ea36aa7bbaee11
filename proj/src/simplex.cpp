#include "depeq/simplex.hpp"

#include <cstddef>
#include <stdexcept>

namespace depeq {

namespace {

// One tableau pivot at (row, col): scale the pivot row to 1 and eliminate
// the column from every other row including the objective row.
template <class T>
void pivot(std::vector<std::vector<T>>& t, std::vector<T>& obj, size_t row,
           size_t col) {
  const size_t width = t[row].size();
  T piv = t[row][col];
  for (size_t j = 0; j < width; ++j) t[row][j] /= piv;
  t[row][col] = T(1);  // exact, avoids drift in float mode
  for (size_t i = 0; i < t.size(); ++i) {
    if (i == row) continue;
    T f = t[i][col];
    if (f == T(0)) continue;
    for (size_t j = 0; j < width; ++j) t[i][j] -= f * t[row][j];
    t[i][col] = T(0);
  }
  T f = obj[col];
  if (f != T(0)) {
    for (size_t j = 0; j < width; ++j) obj[j] -= f * t[row][j];
    obj[col] = T(0);
  }
}

// Bland's rule: entering column = smallest index with positive reduced
// cost; leaving row = smallest basic index among the minimum ratios.
template <class T>
LPStatus run_phase(std::vector<std::vector<T>>& t, std::vector<T>& obj,
                   std::vector<size_t>& basis, size_t scan_cols, const T& tol,
                   size_t iteration_limit) {
  const size_t m = t.size();
  const size_t rhs = t.empty() ? 0 : t[0].size() - 1;
  for (size_t iter = 0; iter < iteration_limit; ++iter) {
    size_t enter = scan_cols;
    for (size_t j = 0; j < scan_cols; ++j)
      if (obj[j] > tol) {
        enter = j;
        break;
      }
    if (enter == scan_cols) return LPStatus::Optimal;
    size_t leave = m;
    for (size_t i = 0; i < m; ++i) {
      if (!(t[i][enter] > tol)) continue;
      if (leave == m) {
        leave = i;
        continue;
      }
      T lhs = t[i][rhs] * t[leave][enter];
      T rhsv = t[leave][rhs] * t[i][enter];
      if (lhs < rhsv || (lhs == rhsv && basis[i] < basis[leave])) leave = i;
    }
    if (leave == m) return LPStatus::Unbounded;
    pivot(t, obj, leave, enter);
    basis[leave] = enter;
  }
  return LPStatus::IterationLimit;
}

}  // namespace

template <class T>
LPResult<T> lp_maximize(std::vector<std::vector<T>> A, std::vector<T> b,
                        const std::vector<T>& c, const T& tol) {
  const size_t m = A.size();
  const size_t n = c.size();
  for (const auto& row : A)
    if (row.size() != n)
      throw std::invalid_argument("lp_maximize: ragged constraint matrix");
  if (b.size() != m) throw std::invalid_argument("lp_maximize: |b| != rows");

  // row signs flipped so b >= 0; remembered for the Farkas certificate
  std::vector<int> sign(m, 1);
  for (size_t i = 0; i < m; ++i)
    if (b[i] < T(0)) {
      sign[i] = -1;
      b[i] = -b[i];
      for (auto& v : A[i]) v = -v;
    }

  const size_t width = n + m + 1;  // real | artificial | rhs
  std::vector<std::vector<T>> t(m, std::vector<T>(width, T(0)));
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) t[i][j] = A[i][j];
    t[i][n + i] = T(1);
    t[i][width - 1] = b[i];
    basis[i] = n + i;
  }
  const size_t iteration_limit = 2000 + 200 * (m + n);

  // phase one: maximize -(sum of artificials). Bottom-row convention:
  // obj[j] = c_j - y.A_j with y = c_B B^{-1}, obj[rhs] = -objective value.
  // With the all-artificial starting basis this is the column sum of A on
  // real columns, zero on (basic) artificial columns, and sum(b) on the rhs.
  std::vector<T> obj(width, T(0));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < width; ++j) obj[j] += t[i][j];
  for (size_t i = 0; i < m; ++i) obj[n + i] -= T(1);

  LPResult<T> out;
  LPStatus st = run_phase(t, obj, basis, n + m, tol, iteration_limit);
  if (st == LPStatus::IterationLimit) {
    out.status = st;
    return out;
  }
  if (st == LPStatus::Unbounded) {
    // impossible in exact arithmetic; with a float tolerance it means every
    // admissible pivot fell below tol -- a numerical stall, not a ray
    if (tol == T(0))
      throw std::logic_error("lp_maximize: phase one cannot be unbounded");
    out.status = LPStatus::IterationLimit;
    return out;
  }
  // leftover artificial mass = obj[rhs] = -(phase-one optimum)
  if (obj[width - 1] > tol) {
    out.status = LPStatus::Infeasible;
    out.value = -obj[width - 1];
    // reduced cost of artificial i is -1 - y_i, so y_i = -1 - obj[n+i];
    // the witness -y (re-signed per flipped row) has y.A <= 0, y.b > 0
    out.farkas.resize(m);
    for (size_t i = 0; i < m; ++i) {
      T w = T(1) + obj[n + i];
      out.farkas[i] = (sign[i] > 0) ? w : -w;
    }
    return out;
  }

  // drive leftover artificials out of the basis; rows that cannot pivot on
  // a real column are redundant and dropped
  for (size_t i = m; i-- > 0;) {
    if (basis[i] < n) continue;
    size_t col = n;
    for (size_t j = 0; j < n; ++j) {
      T v = t[i][j] < T(0) ? -t[i][j] : t[i][j];
      if (v > tol) {
        col = j;
        break;
      }
    }
    if (col < n) {
      pivot(t, obj, i, col);
      basis[i] = col;
    } else {
      t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
      basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }

  // phase two objective: reduced costs of c against the current basis
  std::vector<T> obj2(width, T(0));
  for (size_t j = 0; j < n; ++j) obj2[j] = c[j];
  for (size_t i = 0; i < t.size(); ++i) {
    if (basis[i] >= n) continue;
    T cb = c[basis[i]];
    if (cb == T(0)) continue;
    for (size_t j = 0; j < width; ++j) obj2[j] -= cb * t[i][j];
  }
  st = run_phase(t, obj2, basis, n, tol, iteration_limit);  // artificials barred
  out.status = st;
  if (st != LPStatus::Optimal) return out;
  out.x.assign(n, T(0));
  for (size_t i = 0; i < t.size(); ++i)
    if (basis[i] < n) out.x[basis[i]] = t[i][width - 1];
  out.value = T(0);
  for (size_t j = 0; j < n; ++j) out.value += c[j] * out.x[j];
  return out;
}

template LPResult<Rat> lp_maximize<Rat>(std::vector<std::vector<Rat>>,
                                        std::vector<Rat>,
                                        const std::vector<Rat>&, const Rat&);
template LPResult<double> lp_maximize<double>(std::vector<std::vector<double>>,
                                              std::vector<double>,
                                              const std::vector<double>&,
                                              const double&);

}  // namespace depeq
