#include "depeq/ci.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <stdexcept>

#include "depeq/numeric.hpp"
#include "depeq/spohn.hpp"

namespace depeq {

namespace {

std::string digits(const std::vector<int>& group) {
  std::string s;
  for (int v : group) s += std::to_string(v);
  return s;
}

std::vector<int> parse_digits(const std::string& s) {
  std::vector<int> out;
  for (char ch : s) {
    if (ch < '1' || ch > '9')
      throw std::invalid_argument("player indices must be digits 1-9");
    out.push_back(ch - '0');
  }
  return out;
}

void validate(const CIStatement& st, int n) {
  if (st.A.empty() || st.B.empty())
    throw std::invalid_argument("both sides of a CI statement must be nonempty");
  std::set<int> seen;
  for (const auto* grp : {&st.A, &st.B, &st.C})
    for (int v : *grp) {
      if (v < 1 || v > n) throw std::invalid_argument("player index out of range");
      if (!seen.insert(v).second)
        throw std::invalid_argument("CI statement groups must be disjoint");
    }
}

// enumerate assignments of the given players (values per player in `dims`
// order), last listed player fastest; calls fn(assignment)
template <typename F>
void for_assignments(const std::vector<int>& players,
                     const std::vector<int>& dims, F&& fn) {
  std::vector<int> a(players.size(), 1);
  while (true) {
    fn(a);
    int pos = static_cast<int>(players.size()) - 1;
    while (pos >= 0 && a[pos] == dims[players[pos] - 1]) {
      a[pos] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++a[pos];
  }
}

}  // namespace

std::string CIStatement::str() const {
  std::string s = digits(A) + "_|_" + digits(B);
  if (!C.empty()) s += "|" + digits(C);
  return s;
}

CIStatement ci_parse(const std::string& text) {
  size_t sep = text.find("_|_");
  if (sep == std::string::npos)
    throw std::invalid_argument("expected A_|_B|C, got '" + text + "'");
  CIStatement st;
  st.A = parse_digits(text.substr(0, sep));
  std::string rest = text.substr(sep + 3);
  size_t bar = rest.find('|');
  if (bar == std::string::npos) {
    st.B = parse_digits(rest);
  } else {
    st.B = parse_digits(rest.substr(0, bar));
    st.C = parse_digits(rest.substr(bar + 1));
  }
  if (st.A.empty() || st.B.empty())
    throw std::invalid_argument("both sides of a CI statement must be nonempty");
  return st;
}

std::vector<MultiPoly> ci_quadrics(const CIStatement& stmt, const GameFormat& f) {
  const auto& dims = f.dims;
  const int n = static_cast<int>(dims.size());
  validate(stmt, n);

  std::vector<int> rest;  // marginalized players
  for (int v = 1; v <= n; ++v) {
    bool used = false;
    for (const auto* grp : {&stmt.A, &stmt.B, &stmt.C})
      used |= std::find(grp->begin(), grp->end(), v) != grp->end();
    if (!used) rest.push_back(v);
  }

  auto ring = prob_var_names(dims);
  std::vector<MultiPoly> quadrics;
  for_assignments(stmt.C, dims, [&](const std::vector<int>& cvals) {
    // the flattening matrix of this C-slice, entries are marginal sums
    std::vector<std::vector<MultiPoly>> M;
    for_assignments(stmt.A, dims, [&](const std::vector<int>& avals) {
      std::vector<MultiPoly> row;
      for_assignments(stmt.B, dims, [&](const std::vector<int>& bvals) {
        MultiPoly entry(ring);
        for_assignments(rest, dims, [&](const std::vector<int>& rvals) {
          std::vector<int> profile(n);
          for (size_t k = 0; k < stmt.A.size(); ++k)
            profile[stmt.A[k] - 1] = avals[k];
          for (size_t k = 0; k < stmt.B.size(); ++k)
            profile[stmt.B[k] - 1] = bvals[k];
          for (size_t k = 0; k < stmt.C.size(); ++k)
            profile[stmt.C[k] - 1] = cvals[k];
          for (size_t k = 0; k < rest.size(); ++k)
            profile[rest[k] - 1] = rvals[k];
          for (auto& v : profile) --v;  // flat_index takes 0-based profiles
          entry += MultiPoly::variable(
              ring, static_cast<int>(flat_index(dims, profile)));
        });
        row.push_back(std::move(entry));
      });
      M.push_back(std::move(row));
    });
    for (size_t r = 0; r < M.size(); ++r)
      for (size_t s = r + 1; s < M.size(); ++s)
        for (size_t u = 0; u < M[r].size(); ++u)
          for (size_t v = u + 1; v < M[r].size(); ++v)
            quadrics.push_back(M[r][u] * M[s][v] - M[r][v] * M[s][u]);
  });
  return quadrics;
}

std::vector<Rat> ci_residual(const ProbTensor& P,
                             const std::vector<CIStatement>& stmts) {
  GameFormat f{P.dims};
  std::vector<Rat> out;
  for (const auto& st : stmts)
    for (const auto& q : ci_quadrics(st, f)) out.push_back(q.eval(P.p));
  return out;
}

const std::vector<std::string>& one_edge_ring() {
  static const std::vector<std::string> ring = {"s1",  "s2",  "t11",
                                                "t12", "t21", "t22"};
  return ring;
}

namespace {

void require_222(const Game& g) {
  if (g.format.dims != std::vector<int>{2, 2, 2})
    throw std::invalid_argument("expected a 2x2x2 game");
}

int tau_var(int j, int k) { return 2 + 2 * (j - 1) + (k - 1); }

// payoff of player `pl` at profile (i,j,k), 1-based
const Rat& pay(const Game& g, int pl, int i, int j, int k) {
  return g.payoff[pl][flat_index(g.format.dims, {i - 1, j - 1, k - 1})];
}

}  // namespace

std::array<std::array<std::array<MultiPoly, 2>, 2>, 3> one_edge_matrices_symbolic(
    const Game& g) {
  require_222(g);
  const auto& ring = one_edge_ring();
  auto S = [&](int i) { return MultiPoly::variable(ring, i - 1); };
  auto T = [&](int j, int k) { return MultiPoly::variable(ring, tau_var(j, k)); };
  auto C = [&](const Rat& v) { return MultiPoly::constant(ring, v); };

  std::array<std::array<std::array<MultiPoly, 2>, 2>, 3> M{};
  for (int i = 1; i <= 2; ++i) {
    MultiPoly acc(ring);
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 2; ++k) acc += C(pay(g, 0, i, j, k)) * T(j, k);
    M[0][i - 1] = {C(1), acc};
  }
  for (int j = 1; j <= 2; ++j) {
    MultiPoly acc(ring);
    for (int i = 1; i <= 2; ++i)
      for (int k = 1; k <= 2; ++k) acc += C(pay(g, 1, i, j, k)) * S(i) * T(j, k);
    M[1][j - 1] = {T(j, 1) + T(j, 2), acc};
  }
  for (int k = 1; k <= 2; ++k) {
    MultiPoly acc(ring);
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j) acc += C(pay(g, 2, i, j, k)) * S(i) * T(j, k);
    M[2][k - 1] = {T(1, k) + T(2, k), acc};
  }
  return M;
}

OneEdgeMatrices one_edge_matrices(const Game& g, const std::array<Rat, 2>& sigma,
                                  const std::array<std::array<Rat, 2>, 2>& tau) {
  for (const Rat& v : {sigma[0], sigma[1], tau[0][0], tau[0][1], tau[1][0],
                       tau[1][1]})
    if (v <= 0)
      throw std::invalid_argument("one-edge parameters must be positive");
  auto sym = one_edge_matrices_symbolic(g);
  std::vector<Rat> point = {sigma[0],  sigma[1],  tau[0][0],
                            tau[0][1], tau[1][0], tau[1][1]};
  OneEdgeMatrices out;
  for (int m = 0; m < 3; ++m)
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) out.M[m][r][c] = sym[m][r][c].eval(point);
  return out;
}

std::array<MultiPoly, 2> one_edge_linear_forms(const Game& g) {
  require_222(g);
  auto ring = prob_var_names(g.format.dims);
  std::array<MultiPoly, 2> out{MultiPoly(ring), MultiPoly(ring)};
  for (int s = 1; s <= 2; ++s)
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 2; ++k) {
        Rat coeff = pay(g, 0, 2, j, k) - pay(g, 0, 1, j, k);
        size_t var = flat_index(g.format.dims, {s - 1, j - 1, k - 1});
        std::vector<int> exps(8, 0);
        exps[var] = 1;
        out[s - 1] += MultiPoly::mono(ring, exps, coeff);
      }
  return out;
}

std::vector<OneEdgeSample> one_edge_curve_samples(const Game& g, int grid) {
  require_222(g);
  std::vector<OneEdgeSample> samples;
  auto sym = one_edge_matrices_symbolic(g);

  for (int step = 1; step <= grid; ++step) {
    Rat s1(step, grid + 1);
    s1.canonicalize();  // two-argument mpq construction is not reduced
    std::array<Rat, 2> sigma = {s1, Rat(1) - s1};

    // det M1 = 0 and sum(tau) = 1 are linear in tau: eliminate to 2 params.
    // det M1 coefficients: a_2jk - a_1jk.
    std::array<Rat, 4> lin{};
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 2; ++k)
        lin[2 * (j - 1) + (k - 1)] =
            Rat(pay(g, 0, 2, j, k) - pay(g, 0, 1, j, k));
    // pick a pivot pair to solve {lin . tau = 0, sum tau = 1}
    int piv = -1;
    for (int u = 0; u < 4 && piv < 0; ++u)
      for (int v = u + 1; v < 4 && piv < 0; ++v)
        if (Rat(lin[u] - lin[v]) != 0) piv = 4 * u + v;
    if (piv < 0) continue;  // det M1 identically balanced: no isolated slice
    int u = piv / 4, v = piv % 4;

    // tau = base + x * dir1 + y * dir2 with the two free slots as params
    std::array<int, 2> free{};
    int fc = 0;
    for (int w = 0; w < 4; ++w)
      if (w != u && w != v) free[fc++] = w;
    // solve for tau_u, tau_v from: lin.tau = 0, sum = 1
    //   lin_u tau_u + lin_v tau_v = -(lin_f1 x + lin_f2 y)
    //   tau_u + tau_v = 1 - x - y
    Rat det = lin[u] - lin[v];
    std::vector<std::string> st_ring = {"x", "y"};
    auto X = MultiPoly::variable(st_ring, 0);
    auto Y = MultiPoly::variable(st_ring, 1);
    auto Cst = [&](const Rat& r) { return MultiPoly::constant(st_ring, r); };
    MultiPoly rhs1 = Cst(0) - Cst(lin[free[0]]) * X - Cst(lin[free[1]]) * Y;
    MultiPoly rhs2 = Cst(1) - X - Y;
    // [lin_u lin_v; 1 1] [tau_u; tau_v] = [rhs1; rhs2]
    MultiPoly tau_u = (rhs1 - Cst(lin[v]) * rhs2) * Cst(Rat(1) / det);
    MultiPoly tau_v = (Cst(lin[u]) * rhs2 - rhs1) * Cst(Rat(1) / det);
    std::array<MultiPoly, 4> tau_poly{Cst(0), Cst(0), Cst(0), Cst(0)};
    tau_poly[u] = tau_u;
    tau_poly[v] = tau_v;
    tau_poly[free[0]] = X;
    tau_poly[free[1]] = Y;

    // substitute into the two remaining determinants
    std::vector<MultiPoly> sub;
    sub.push_back(Cst(sigma[0]));
    sub.push_back(Cst(sigma[1]));
    for (int w = 0; w < 4; ++w) sub.push_back(tau_poly[w]);
    auto det_of = [&](int m) {
      MultiPoly d = sym[m][0][0] * sym[m][1][1] - sym[m][0][1] * sym[m][1][0];
      return d.compose(sub);
    };
    MultiPoly q2 = det_of(1), q3 = det_of(2);
    if (q2 == MultiPoly(st_ring) || q3 == MultiPoly(st_ring)) continue;

    MultiPoly res = resultant_univariate(q2, q3, 1);  // eliminate y
    if (res == MultiPoly(st_ring)) continue;
    std::vector<std::complex<double>> cr;
    for (auto& c : res.coeffs_in(0)) cr.push_back(c.eval_double({0, 0}));
    if (cr.size() < 2) continue;
    auto xroots = poly_roots(cr);

    for (const auto& xr : xroots) {
      if (std::abs(xr.imag()) > 1e-9) continue;
      double x = xr.real();
      // y from q2(x, y) = 0 (quadratic in y)
      std::vector<std::complex<double>> yc;
      for (auto& c : q2.coeffs_in(1)) yc.push_back(c.eval_double({x, 0}));
      while (yc.size() > 1 && std::abs(yc.back()) < 1e-12) yc.pop_back();
      if (yc.size() < 2) continue;
      for (const auto& yr : poly_roots(yc)) {
        if (std::abs(yr.imag()) > 1e-7) continue;
        double y = yr.real();
        if (std::abs(q3.eval_double({x, y})) > 1e-6) continue;
        std::array<double, 4> tau_val{};
        bool positive = true;
        for (int w = 0; w < 4; ++w) {
          tau_val[w] = tau_poly[w].eval_double({x, y});
          positive &= tau_val[w] > 1e-9;
        }
        if (!positive) continue;

        OneEdgeSample smp;
        smp.sigma = sigma;
        // exact renormalization keeps the product tensor on the simplex
        Rat tsum = 0;
        std::array<Rat, 4> tau_rat;
        for (int w = 0; w < 4; ++w) {
          tau_rat[w] = Rat(tau_val[w]);
          tsum += tau_rat[w];
        }
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k)
            smp.tau[j][k] = Rat(tau_rat[2 * j + k] / tsum);
        ProbTensor P;
        P.dims = g.format.dims;
        P.p.resize(8);
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
              P.p[flat_index(P.dims, {i, j, k})] =
                  Rat(smp.sigma[i] * smp.tau[j][k]);
        smp.P = P;
        DeCheck chk = is_dependency_equilibrium(g, P, Rat(1, 1000000));
        smp.residual = chk.normalized_max;
        if (smp.residual < 1e-7) samples.push_back(std::move(smp));
      }
    }
  }
  return samples;
}

int full_independence_nash_count(const Game& g) {
  const auto& dims = g.format.dims;
  if (!std::all_of(dims.begin(), dims.end(), [](int d) { return d == 2; }))
    throw std::invalid_argument("expected binary strategy sets");
  if (dims.size() == 2) {
    const auto& a = g.payoff[0];  // a11 a12 a21 a22
    const auto& b = g.payoff[1];
    Rat da = Rat(a[0] - a[2]) + Rat(a[3] - a[1]);
    Rat db = Rat(b[0] - b[1]) + Rat(b[3] - b[2]);
    if (da == 0 || db == 0)
      throw std::runtime_error(
          "degenerate game: the totally mixed Nash system loses rank");
    return 1;
  }
  if (dims.size() == 3) {
    Nash222Result r = nash_points_222(g);
    if (r.status == Nash222Status::DEGENERATE)
      throw std::runtime_error(
          r.note.empty() ? "degenerate game: de-factored system collapses"
                         : r.note);
    return static_cast<int>(r.points.size());
  }
  throw std::invalid_argument("only 2 or 3 binary players are supported");
}

}  // namespace depeq
