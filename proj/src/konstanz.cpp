#include "depeq/konstanz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace depeq {

int KonstanzMatrix::row_offset(int player) const {
  int off = 0;
  for (int i = 0; i < player; ++i) off += dims[i];
  return off;
}

KonstanzMatrix build_konstanz(const Game& g, const std::vector<Rat>& x) {
  if (x.size() != static_cast<size_t>(g.format.players()))
    throw std::invalid_argument("build_konstanz: one coordinate per player");
  KonstanzMatrix K;
  K.dims = g.format.dims;
  K.x = x;
  size_t cols = g.format.profile_count();
  K.entries.assign(g.format.dim_sum(), std::vector<Rat>(cols, Rat(0)));
  for (size_t f = 0; f < cols; ++f) {
    auto j = unflat_index(K.dims, f);
    int off = 0;
    for (int i = 0; i < g.format.players(); ++i) {
      K.entries[off + j[i]][f] = x[i] - g.payoff[i][f];
      off += K.dims[i];
    }
  }
  return K;
}

std::vector<std::string> payoff_var_names(int players) {
  std::vector<std::string> v;
  for (int i = 1; i <= players; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

std::vector<std::vector<MultiPoly>> konstanz_symbolic(const Game& g) {
  auto ring = payoff_var_names(g.format.players());
  size_t cols = g.format.profile_count();
  std::vector<std::vector<MultiPoly>> K(g.format.dim_sum(),
                                        std::vector<MultiPoly>(cols, MultiPoly(ring)));
  for (size_t f = 0; f < cols; ++f) {
    auto j = unflat_index(g.format.dims, f);
    int off = 0;
    for (int i = 0; i < g.format.players(); ++i) {
      K[off + j[i]][f] = MultiPoly::variable(ring, i) -
                         MultiPoly::constant(ring, g.payoff[i][f]);
      off += g.format.dims[i];
    }
  }
  return K;
}

KernelBasis kernel_at(const Game& g, const std::vector<Rat>& x) {
  KonstanzMatrix K = build_konstanz(g, x);
  RatKernel ker = rat_kernel(K.entries);
  KernelBasis out;
  out.x = x;
  out.rank = ker.rank;
  out.basis = std::move(ker.basis);
  out.generic_dim = std::max<int>(
      0, static_cast<int>(g.format.profile_count()) - g.format.dim_sum());
  return out;
}

KernelBasisF kernel_at_double(const Game& g, const std::vector<double>& x,
                              double rel_tol) {
  if (x.size() != static_cast<size_t>(g.format.players()))
    throw std::invalid_argument("kernel_at_double: one coordinate per player");
  size_t cols = g.format.profile_count();
  std::vector<std::vector<double>> m(g.format.dim_sum(),
                                     std::vector<double>(cols, 0.0));
  for (size_t f = 0; f < cols; ++f) {
    auto j = unflat_index(g.format.dims, f);
    int off = 0;
    for (int i = 0; i < g.format.players(); ++i) {
      m[off + j[i]][f] = x[i] - rat_double(g.payoff[i][f]);
      off += g.format.dims[i];
    }
  }
  DoubleKernel ker = kernel_double(m, rel_tol);
  KernelBasisF out;
  out.x = x;
  out.rank = ker.rank;
  out.basis = std::move(ker.basis);
  out.threshold = ker.threshold;
  return out;
}

std::optional<ProbTensor> sample_spohn_point(const Game& g,
                                             const std::vector<Rat>& x) {
  KernelBasis ker = kernel_at(g, x);
  for (const auto& v : ker.basis) {
    Rat s(0);
    for (const auto& e : v) s += e;
    if (s != 0) {
      ProbTensor P{g.format.dims, {}};
      P.p.reserve(v.size());
      for (const auto& e : v) P.p.push_back(e / s);
      return P;
    }
  }
  return std::nullopt;
}

SymbolicMinors maximal_minors_symbolic(const Game& g, size_t max_columns) {
  size_t cols = g.format.profile_count();
  size_t rows = static_cast<size_t>(g.format.dim_sum());
  if (cols > max_columns)
    throw std::invalid_argument(
        "maximal_minors_symbolic: profile count exceeds the column bound");
  if (rows > cols)
    throw std::invalid_argument("maximal_minors_symbolic: more rows than columns");
  auto K = konstanz_symbolic(g);
  SymbolicMinors out;
  std::vector<int> pick(rows);
  for (size_t i = 0; i < rows; ++i) pick[i] = static_cast<int>(i);
  while (true) {
    std::vector<std::vector<MultiPoly>> sub(rows);
    for (size_t r = 0; r < rows; ++r) {
      sub[r].reserve(rows);
      for (int c : pick) sub[r].push_back(K[r][c]);
    }
    out.column_sets.push_back(pick);
    out.minors.push_back(det_poly(std::move(sub)));
    // advance to next lex combination
    int i = static_cast<int>(rows) - 1;
    while (i >= 0 && pick[i] == static_cast<int>(cols - rows + i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (size_t j = i + 1; j < rows; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

namespace {

// strips every factor (x_i - payoff entry) that divides p exactly
MultiPoly peel_payoff_linears(const Game& g, MultiPoly p) {
  const auto ring = p.vars();
  std::vector<MultiPoly> candidates;
  for (int i = 0; i < g.format.players(); ++i) {
    std::vector<Rat> seen;
    for (const auto& v : g.payoff[i]) {
      if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
      seen.push_back(v);
      candidates.push_back(MultiPoly::variable(ring, i) -
                           MultiPoly::constant(ring, v));
    }
  }
  bool stripped = true;
  while (stripped && p.total_degree() > 0) {
    stripped = false;
    for (const auto& c : candidates) {
      MultiPoly q(ring);
      if (p.divides_exactly(c, &q)) {
        p = q;
        stripped = true;
        break;
      }
    }
  }
  return p;
}

std::vector<std::vector<std::complex<double>>> complex_konstanz(
    const Game& g, std::complex<double> x1, std::complex<double> x2) {
  size_t cols = g.format.profile_count();
  std::vector<std::vector<std::complex<double>>> m(
      g.format.dim_sum(), std::vector<std::complex<double>>(cols, 0.0));
  std::array<std::complex<double>, 2> x{x1, x2};
  for (size_t f = 0; f < cols; ++f) {
    auto j = unflat_index(g.format.dims, f);
    int off = 0;
    for (int i = 0; i < 2; ++i) {
      m[off + j[i]][f] = x[i] - rat_double(g.payoff[i][f]);
      off += g.format.dims[i];
    }
  }
  return m;
}

std::vector<std::complex<double>> univariate_coeffs(const MultiPoly& p,
                                                    size_t idx) {
  auto cs = p.coeffs_in(idx);
  std::vector<std::complex<double>> out;
  for (const auto& c : cs) {
    if (!c.is_constant())
      throw std::logic_error("univariate_coeffs: polynomial is not univariate");
    out.emplace_back(rat_double(c.constant_value()), 0.0);
  }
  return out;
}

// roots in `var` of p specialized at `other` for the remaining variable
std::vector<std::complex<double>> specialized_roots(const MultiPoly& p,
                                                    size_t var,
                                                    std::complex<double> other) {
  auto cs = p.coeffs_in(var);
  std::vector<std::complex<double>> coeffs;
  for (const auto& c : cs)
    coeffs.push_back(eval_complex(c, {other, other}));
  double scale = 0;
  for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0) return {};
  return poly_roots(coeffs);
}

void newton_polish_pair(const MultiPoly& f, const MultiPoly& h,
                        std::complex<double>& x, std::complex<double>& y) {
  auto fx = f.derivative(0), fy = f.derivative(1);
  auto hx = h.derivative(0), hy = h.derivative(1);
  for (int it = 0; it < 8; ++it) {
    std::vector<std::complex<double>> pt{x, y};
    auto F = eval_complex(f, pt), H = eval_complex(h, pt);
    auto a = eval_complex(fx, pt), b = eval_complex(fy, pt);
    auto c = eval_complex(hx, pt), d = eval_complex(hy, pt);
    auto det = a * d - b * c;
    if (std::abs(det) < 1e-14) return;
    auto dx = (F * d - H * b) / det;
    auto dy = (H * a - F * c) / det;
    x -= dx;
    y -= dy;
    if (std::abs(dx) + std::abs(dy) < 1e-14 * (1.0 + std::abs(x) + std::abs(y)))
      return;
  }
}

}  // namespace

RankDrop32 rank_drop_points_32(const Game& g) {
  if (g.format.dims != std::vector<int>{3, 2})
    throw std::invalid_argument("rank_drop_points_32: format must be (3,2)");
  RankDrop32 out;
  auto sm = maximal_minors_symbolic(g);
  for (const auto& minor : sm.minors) {
    if (minor.is_zero()) {
      out.note += "a maximal minor vanishes identically; ";
      continue;
    }
    MultiPoly core = peel_payoff_linears(g, minor).primitive_part();
    if (core.total_degree() != 3) {
      out.note += "a minor does not factor as linears times a cubic; ";
      continue;
    }
    if (std::find(out.cubics.begin(), out.cubics.end(), core) == out.cubics.end())
      out.cubics.push_back(core);
  }
  if (out.cubics.size() < 2) {
    out.note += "fewer than two distinct cubic factors, cannot intersect";
    return out;
  }

  // The rank-4 locus is where all six minors vanish; generically that is a
  // finite subset of the intersection of any two distinct cubic factors.
  MultiPoly C1(out.cubics[0].vars()), C2 = C1, R = C1;
  bool pair_found = false;
  for (size_t i = 0; i < out.cubics.size() && !pair_found; ++i)
    for (size_t j = i + 1; j < out.cubics.size() && !pair_found; ++j) {
      MultiPoly res = resultant_univariate(out.cubics[i], out.cubics[j], 1);
      if (!res.is_zero()) {
        C1 = out.cubics[i];
        C2 = out.cubics[j];
        R = res;  // x2 eliminated
        pair_found = true;
      }
    }
  if (!pair_found) {
    out.note += "all cubic factor pairs share components";
    return out;
  }
  std::vector<RankDropPoint> affine;
  for (const auto& r1 : poly_roots(univariate_coeffs(R, 0))) {
    for (auto r2 : specialized_roots(C1, 1, r1)) {
      std::complex<double> x = r1, y = r2;
      newton_polish_pair(C1, C2, x, y);
      if (rel_residual(C1, {x, y}) > 1e-8 || rel_residual(C2, {x, y}) > 1e-8)
        continue;
      bool all_minors = true;
      for (const auto& minor : sm.minors)
        if (!minor.is_zero() && rel_residual(minor, {x, y}) > 1e-6)
          all_minors = false;
      if (!all_minors) continue;
      if (numeric_rank(complex_konstanz(g, x, y), 1e-7) > 4) continue;
      bool dup = false;
      for (const auto& q : affine)
        if (std::abs(q.x[0] - x) + std::abs(q.x[1] - y) <
            1e-6 * (1.0 + std::abs(x) + std::abs(y)))
          dup = true;
      if (!dup) affine.push_back({{x, y}, false, false});
    }
  }
  if (affine.size() != 5)
    out.note += "expected five affine rank-drop points, found " +
                std::to_string(affine.size()) + "; ";
  out.points = std::move(affine);

  // strata at infinity: replace the infinite coordinate's block by its 0/1
  // incidence pattern and look for rank <= 4 in the remaining variable
  auto infinity_stratum = [&](int finite_player) {
    std::vector<std::string> ring{"t"};
    size_t cols = g.format.profile_count();
    size_t rows = static_cast<size_t>(g.format.dim_sum());
    std::vector<std::vector<MultiPoly>> K(rows,
                                          std::vector<MultiPoly>(cols, MultiPoly(ring)));
    for (size_t f = 0; f < cols; ++f) {
      auto j = unflat_index(g.format.dims, f);
      int off = 0;
      for (int i = 0; i < 2; ++i) {
        K[off + j[i]][f] =
            (i == finite_player)
                ? MultiPoly::variable(ring, 0) -
                      MultiPoly::constant(ring, g.payoff[i][f])
                : MultiPoly::constant(ring, Rat(1));
        off += g.format.dims[i];
      }
    }
    std::vector<MultiPoly> minors;
    std::vector<int> pick(rows);
    for (size_t i = 0; i < rows; ++i) pick[i] = static_cast<int>(i);
    while (true) {
      std::vector<std::vector<MultiPoly>> sub(rows);
      for (size_t r = 0; r < rows; ++r)
        for (int c : pick) sub[r].push_back(K[r][c]);
      minors.push_back(det_poly(std::move(sub)));
      int i = static_cast<int>(rows) - 1;
      while (i >= 0 && pick[i] == static_cast<int>(cols - rows + i)) --i;
      if (i < 0) break;
      ++pick[i];
      for (size_t j = i + 1; j < rows; ++j) pick[j] = pick[j - 1] + 1;
    }
    const MultiPoly* lead = nullptr;
    for (const auto& m : minors)
      if (!m.is_zero()) {
        lead = &m;
        break;
      }
    std::vector<std::complex<double>> hits;
    if (!lead) {
      out.note += "an infinity stratum has all minors zero; ";
      return hits;
    }
    if (lead->total_degree() == 0) return hits;
    for (const auto& r : poly_roots(univariate_coeffs(*lead, 0))) {
      bool ok = true;
      for (const auto& m : minors)
        if (!m.is_zero() && rel_residual(m, {r}) > 1e-6) ok = false;
      if (!ok) continue;
      bool dup = false;
      for (const auto& h : hits)
        if (std::abs(h - r) < 1e-6 * (1.0 + std::abs(r))) dup = true;
      if (!dup) hits.push_back(r);
    }
    return hits;
  };

  for (const auto& y : infinity_stratum(1))
    out.points.push_back({{0.0, y}, true, false});
  for (const auto& x : infinity_stratum(0))
    out.points.push_back({{x, 0.0}, false, true});

  // (infinity, infinity): both blocks become incidence rows; each block's
  // rows sum to the all-ones vector, so the rank is at most 4
  {
    std::vector<std::vector<std::complex<double>>> m(
        g.format.dim_sum(),
        std::vector<std::complex<double>>(g.format.profile_count(), 0.0));
    for (size_t f = 0; f < g.format.profile_count(); ++f) {
      auto j = unflat_index(g.format.dims, f);
      m[j[0]][f] = 1.0;
      m[3 + j[1]][f] = 1.0;
    }
    if (numeric_rank(m, 1e-10) <= 4) out.points.push_back({{0.0, 0.0}, true, true});
  }

  if (out.points.size() != 6)
    out.note += "expected six rank-drop points in total, found " +
                std::to_string(out.points.size());
  return out;
}

}  // namespace depeq
