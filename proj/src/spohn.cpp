#include "depeq/spohn.hpp"

#include <cmath>
#include <stdexcept>

#include "depeq/numeric.hpp"

namespace depeq {

SpohnMatrixSet build_spohn_matrices(const Game& g, const ProbTensor& P) {
  if (P.dims != g.format.dims)
    throw std::invalid_argument("build_spohn_matrices: format mismatch");
  SpohnMatrixSet s;
  s.matrices.resize(g.format.players());
  for (int i = 0; i < g.format.players(); ++i)
    s.matrices[i].assign(g.format.dims[i], {Rat(0), Rat(0)});
  for (size_t f = 0; f < P.p.size(); ++f) {
    auto profile = unflat_index(g.format.dims, f);
    for (int i = 0; i < g.format.players(); ++i) {
      auto& row = s.matrices[i][profile[i]];
      row[0] += P.p[f];
      row[1] += g.payoff[i][f] * P.p[f];
    }
  }
  return s;
}

std::vector<std::array<Rat, 2>> augmented_spohn_matrix(const Game& g, int player,
                                                       const ProbTensor& P) {
  auto s = build_spohn_matrices(g, P);
  std::vector<std::array<Rat, 2>> m;
  Rat total(0), value(0);
  for (const auto& row : s.matrices.at(player)) {
    total += row[0];
    value += row[1];
  }
  m.push_back({total, value});  // = (1, P·X^(i)) for a distribution P
  for (const auto& row : s.matrices.at(player)) m.push_back(row);
  return m;
}

std::vector<Rat> dependency_residual(const Game& g, const ProbTensor& P) {
  auto s = build_spohn_matrices(g, P);
  std::vector<Rat> out;
  for (const auto& m : s.matrices)
    for (size_t k = 0; k < m.size(); ++k)
      for (size_t l = k + 1; l < m.size(); ++l)
        out.push_back(m[k][0] * m[l][1] - m[l][0] * m[k][1]);
  return out;
}

DeCheck is_dependency_equilibrium(const Game& g, const ProbTensor& P,
                                  const Rat& tol) {
  if (!P.is_interior())
    throw std::domain_error(
        "is_dependency_equilibrium: P must lie in the open simplex");
  auto s = build_spohn_matrices(g, P);
  DeCheck r;
  r.is_equilibrium = true;
  for (const auto& m : s.matrices) {
    Rat scale(0);
    for (const auto& row : m)
      for (const auto& v : row) {
        Rat a = abs(v);
        if (a > scale) scale = a;
      }
    for (size_t k = 0; k < m.size(); ++k)
      for (size_t l = k + 1; l < m.size(); ++l) {
        Rat minor = m[k][0] * m[l][1] - m[l][0] * m[k][1];
        r.residuals.push_back(minor);
        Rat a = abs(minor);
        if (scale > 0)
          r.normalized_max =
              std::max(r.normalized_max, rat_double(a / scale));
        bool ok = (tol == 0) ? (minor == 0) : (a <= tol * scale);
        if (!ok) r.is_equilibrium = false;
      }
  }
  return r;
}

Nash22Result nash_point_22(const Game& g) {
  if (g.format.dims != std::vector<int>{2, 2})
    throw std::invalid_argument("nash_point_22: format must be (2,2)");
  auto a = [&](int i, int j) { return g.at(0, {i, j}); };
  auto b = [&](int i, int j) { return g.at(1, {i, j}); };
  std::array<Rat, 2> u{b(1, 1) - b(1, 0), b(0, 0) - b(0, 1)};
  std::array<Rat, 2> v{a(1, 1) - a(0, 1), a(0, 0) - a(1, 0)};
  if ((u[0] == 0 && u[1] == 0) || (v[0] == 0 && v[1] == 0))
    throw std::domain_error("nash_point_22: degenerate payoff differences");

  Nash22Result res;
  res.point.format = g.format;
  bool balanced = rat_sign(v[1]) == rat_sign(v[0]) && rat_sign(v[0]) != 0 &&
                  rat_sign(u[1]) == rat_sign(u[0]) && rat_sign(u[0]) != 0;
  ProbTensor N{{2, 2}, std::vector<Rat>(4)};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) N.p[flat_index({2, 2}, {i, j})] = u[i] * v[j];
  if (balanced) {
    Rat su = u[0] + u[1], sv = v[0] + v[1];
    res.status = Nash22Status::IN_DELTA;
    res.point.in_delta = true;
    res.point.factors = {{u[0] / su, u[1] / su}, {v[0] / sv, v[1] / sv}};
    for (auto& p : N.p) p /= su * sv;
    res.point.tensor = std::move(N);
  } else {
    res.status = Nash22Status::UNBALANCED_SIGNS;
    res.point.in_delta = false;
    res.point.factors = {{u[0], u[1]}, {v[0], v[1]}};
    res.point.tensor = std::move(N);  // projective representative
  }
  return res;
}

bool is_balanced_format(const GameFormat& f) {
  int n = f.players();
  for (int i = 0; i < n; ++i) {
    int other = f.dim_sum() - f.dims[i];
    if (f.dims[i] > other - n + 2) return false;
  }
  return true;
}

std::vector<std::string> prob_var_names(const std::vector<int>& dims) {
  GameFormat fmt{dims};
  std::vector<std::string> names;
  for (size_t f = 0; f < fmt.profile_count(); ++f) {
    std::string s = "p";
    for (int j : unflat_index(dims, f)) s += std::to_string(j + 1);
    names.push_back(s);
  }
  return names;
}

std::vector<std::vector<std::array<MultiPoly, 2>>> spohn_matrices_symbolic(
    const std::vector<int>& dims,
    const std::vector<std::vector<MultiPoly>>& payoff,
    const std::vector<MultiPoly>& probs) {
  GameFormat fmt{dims};
  if (probs.size() != fmt.profile_count())
    throw std::invalid_argument("spohn_matrices_symbolic: probs size mismatch");
  const auto& ring = probs.at(0).vars();
  std::vector<std::vector<std::array<MultiPoly, 2>>> out(dims.size());
  for (size_t i = 0; i < dims.size(); ++i)
    out[i].assign(dims[i], {MultiPoly(ring), MultiPoly(ring)});
  for (size_t f = 0; f < fmt.profile_count(); ++f) {
    auto profile = unflat_index(dims, f);
    for (size_t i = 0; i < dims.size(); ++i) {
      out[i][profile[i]][0] += probs[f];
      out[i][profile[i]][1] += payoff.at(i).at(f) * probs[f];
    }
  }
  return out;
}

std::vector<std::vector<std::array<MultiPoly, 2>>> spohn_matrices_symbolic(
    const Game& g) {
  auto ring = prob_var_names(g.format.dims);
  std::vector<MultiPoly> probs;
  for (size_t f = 0; f < g.format.profile_count(); ++f)
    probs.push_back(MultiPoly::variable(ring, f));
  std::vector<std::vector<MultiPoly>> payoff(g.format.players());
  for (int i = 0; i < g.format.players(); ++i)
    for (const auto& v : g.payoff[i])
      payoff[i].push_back(MultiPoly::constant(ring, v));
  return spohn_matrices_symbolic(g.format.dims, payoff, probs);
}

std::vector<MultiPoly> spohn_minors_symbolic(
    const std::vector<std::vector<std::array<MultiPoly, 2>>>& ms, int player) {
  const auto& m = ms.at(player);
  std::vector<MultiPoly> out;
  for (size_t k = 0; k < m.size(); ++k)
    for (size_t l = k + 1; l < m.size(); ++l)
      out.push_back(m[k][0] * m[l][1] - m[l][0] * m[k][1]);
  return out;
}

Nash222Result nash_points_222(const Game& g) {
  if (g.format.dims != std::vector<int>{2, 2, 2})
    throw std::invalid_argument("nash_points_222: format must be (2,2,2)");
  const std::vector<std::string> ring{"alpha", "beta", "gamma"};
  auto var = [&](int i) { return MultiPoly::variable(ring, i); };
  auto one = MultiPoly::constant(ring, Rat(1));
  std::array<std::array<MultiPoly, 2>, 3> pi{
      std::array<MultiPoly, 2>{var(0), one - var(0)},
      std::array<MultiPoly, 2>{var(1), one - var(1)},
      std::array<MultiPoly, 2>{var(2), one - var(2)}};

  std::vector<MultiPoly> probs;
  std::vector<std::vector<MultiPoly>> payoff(3);
  for (size_t f = 0; f < 8; ++f) {
    auto j = unflat_index(g.format.dims, f);
    probs.push_back(pi[0][j[0]] * pi[1][j[1]] * pi[2][j[2]]);
    for (int i = 0; i < 3; ++i)
      payoff[i].push_back(MultiPoly::constant(ring, g.payoff[i][f]));
  }
  auto ms = spohn_matrices_symbolic(g.format.dims, payoff, probs);

  Nash222Result res;
  res.removed_factors.resize(3);
  std::vector<MultiPoly> eqs;
  std::vector<MultiPoly> candidates;
  for (int v = 0; v < 3; ++v) {
    candidates.push_back(var(v));
    candidates.push_back(one - var(v));
  }
  for (int i = 0; i < 3; ++i) {
    MultiPoly f = spohn_minors_symbolic(ms, i)[0];
    bool stripped = true;
    while (stripped && !f.is_constant()) {
      stripped = false;
      for (const auto& c : candidates) {
        MultiPoly q(ring);
        if (f.divides_exactly(c, &q)) {
          res.removed_factors[i].push_back(c);
          f = q;
          stripped = true;
          break;
        }
      }
    }
    if (f.degree_in(i) > 0 || f.degree_in((i + 1) % 3) > 1 ||
        f.degree_in((i + 2) % 3) > 1) {
      res.status = Nash222Status::DEGENERATE;
      res.note = "equation " + std::to_string(i + 1) +
                 " is not multilinear in the other two variables after "
                 "removing simplex factors";
      return res;
    }
    eqs.push_back(f);
  }

  // eqs[0] = g1(beta,gamma), eqs[1] = g2(alpha,gamma), eqs[2] = g3(alpha,beta)
  MultiPoly r23 = resultant_univariate(eqs[1], eqs[2], 0);
  MultiPoly R = resultant_univariate(eqs[0], r23, 1);
  auto qc = R.coeffs_in(2);
  Rat c2 = qc.size() > 2 ? qc[2].constant_value() : Rat(0);
  Rat c1 = qc.size() > 1 ? qc[1].constant_value() : Rat(0);
  Rat c0 = qc.size() > 0 ? qc[0].constant_value() : Rat(0);
  if (c2 == 0) {
    res.status = Nash222Status::DEGENERATE;
    res.note = "final eliminant in gamma is not a genuine quadratic";
    return res;
  }

  std::complex<double> disc(rat_double(c1 * c1 - 4 * c2 * c0), 0.0);
  std::complex<double> sq = std::sqrt(disc);
  double a2 = rat_double(c2), a1 = rat_double(c1);
  for (int s = 0; s < 2; ++s) {
    std::complex<double> gamma = (-a1 + (s ? sq : -sq)) / (2 * a2);
    auto solve_linear = [&](const MultiPoly& eq, int solve_var, int known_var,
                            std::complex<double> known) {
      auto cs = eq.coeffs_in(solve_var);
      std::complex<double> den =
          cs.size() > 1 ? eval_complex(cs[1], {known, known, known}) : 0.0;
      std::complex<double> num = -eval_complex(cs[0], {known, known, known});
      (void)known_var;
      return std::pair{num, den};
    };
    // coeffs_in polynomials depend only on the single remaining variable, so
    // feeding `known` in every slot is safe.
    auto [nb, db] = solve_linear(eqs[0], 1, 2, gamma);
    auto [na, da] = solve_linear(eqs[1], 0, 2, gamma);
    if (std::abs(db) < 1e-13 || std::abs(da) < 1e-13) {
      res.status = Nash222Status::DEGENERATE;
      res.note = "back substitution hit a vanishing linear coefficient";
      return res;
    }
    Nash222Point pt;
    std::complex<double> beta = nb / db, alpha = na / da;
    pt.params = {alpha, beta, gamma};
    std::vector<std::complex<double>> xyz{alpha, beta, gamma};
    pt.residual = 0;
    for (const auto& eq : eqs)
      pt.residual = std::max(pt.residual, std::abs(eval_complex(eq, xyz)));
    auto real_enough = [](std::complex<double> z) {
      return std::abs(z.imag()) < 1e-9;
    };
    pt.real = real_enough(alpha) && real_enough(beta) && real_enough(gamma);
    auto open01 = [](std::complex<double> z) {
      return z.real() > 0 && z.real() < 1;
    };
    pt.in_delta = pt.real && open01(alpha) && open01(beta) && open01(gamma);
    res.points.push_back(pt);
  }
  return res;
}

}  // namespace depeq
