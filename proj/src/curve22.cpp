#include "depeq/curve22.hpp"

#include <stdexcept>

#include "depeq/invariants.hpp"

namespace depeq {

namespace {

void require_22(const Game& g) {
  if (g.format.dims != std::vector<int>{2, 2})
    throw std::invalid_argument("expected a 2x2 game");
}

const std::vector<std::string>& xyz_ring() {
  static const std::vector<std::string> ring = {"x", "y", "z"};
  return ring;
}

const std::vector<std::string>& p_ring() {
  static const std::vector<std::string> ring = {"p11", "p12", "p21", "p22"};
  return ring;
}

// payoff entries in flat order (row-major): a11, a12, a21, a22
std::array<Rat, 4> amat(const Game& g) {
  return {g.payoff[0][0], g.payoff[0][1], g.payoff[0][2], g.payoff[0][3]};
}
std::array<Rat, 4> bmat(const Game& g) {
  return {g.payoff[1][0], g.payoff[1][1], g.payoff[1][2], g.payoff[1][3]};
}

}  // namespace

Rat SpohnCubic::relation_linear() const {
  return c[0] + c[1] - c[2] - c[3] + c[4] + c[5] - c[6];
}

Rat SpohnCubic::relation_cubic() const {
  const Rat &c2 = c[1], &c3 = c[2], &c4 = c[3], &c5 = c[4], &c6 = c[5],
            &c7 = c[6];
  return c2 * c4 * c5 - c3 * c4 * c5 - c2 * c3 * c6 + c4 * c5 * c6 +
         c3 * c4 * c7 - c4 * c5 * c7 - c4 * c4 * c5 + c4 * c5 * c5;
}

MultiPoly SpohnCubic::poly() const {
  const auto& ring = xyz_ring();
  MultiPoly f(ring);
  f += MultiPoly::mono(ring, {2, 1, 0}, c[0]);
  f += MultiPoly::mono(ring, {2, 0, 1}, c[1]);
  f += MultiPoly::mono(ring, {1, 2, 0}, c[2]);
  f += MultiPoly::mono(ring, {1, 0, 2}, c[3]);
  f += MultiPoly::mono(ring, {0, 2, 1}, c[4]);
  f += MultiPoly::mono(ring, {0, 1, 2}, c[5]);
  f += MultiPoly::mono(ring, {1, 1, 1}, c[6]);
  return f;
}

SpohnCubic spohn_cubic(const Game& g) {
  require_22(g);
  auto [a11, a12, a21, a22] = amat(g);
  auto [b11, b12, b21, b22] = bmat(g);
  SpohnCubic sc;
  sc.c[0] = (a11 - a22) * (b11 - b12);
  sc.c[1] = (a11 - a21) * (b22 - b11);
  sc.c[2] = (a12 - a22) * (b11 - b12);
  sc.c[3] = (a11 - a21) * (b22 - b21);
  sc.c[4] = (a12 - a22) * (b21 - b12);
  sc.c[5] = (a12 - a21) * (b22 - b21);
  sc.c[6] = (a12 - a21) * (b22 - b11) + (a11 - a22) * (b21 - b12);
  return sc;
}

const std::vector<std::string>& payoff_ring_22() {
  static const std::vector<std::string> ring = {"a11", "a12", "a21", "a22",
                                                "b11", "b12", "b21", "b22"};
  return ring;
}

const std::array<MultiPoly, 7>& spohn_cubic_symbolic() {
  static const std::array<MultiPoly, 7> cs = [] {
    const auto& ring = payoff_ring_22();
    auto v = [&](const char* n) { return MultiPoly::variable(ring, n); };
    MultiPoly a11 = v("a11"), a12 = v("a12"), a21 = v("a21"), a22 = v("a22");
    MultiPoly b11 = v("b11"), b12 = v("b12"), b21 = v("b21"), b22 = v("b22");
    return std::array<MultiPoly, 7>{
        (a11 - a22) * (b11 - b12),
        (a11 - a21) * (b22 - b11),
        (a12 - a22) * (b11 - b12),
        (a11 - a21) * (b22 - b21),
        (a12 - a22) * (b21 - b12),
        (a12 - a21) * (b22 - b21),
        (a12 - a21) * (b22 - b11) + (a11 - a22) * (b21 - b12)};
  }();
  return cs;
}

std::array<MultiPoly, 2> quadrics_22(const Game& g) {
  require_22(g);
  auto [a11, a12, a21, a22] = amat(g);
  auto [b11, b12, b21, b22] = bmat(g);
  const auto& ring = p_ring();
  auto M = [&](int i, int j, const Rat& c) {
    std::vector<int> e(4, 0);
    e[i]++;
    e[j]++;
    return MultiPoly::mono(ring, e, c);
  };
  // p11=0, p12=1, p21=2, p22=3
  MultiPoly f1 = M(0, 2, a21 - a11) + M(0, 3, a22 - a11) + M(1, 2, a21 - a12) +
                 M(1, 3, a22 - a12);
  MultiPoly f2 = M(0, 1, b12 - b11) + M(0, 3, b22 - b11) + M(1, 2, b12 - b21) +
                 M(2, 3, b22 - b21);
  return {f1, f2};
}

MultiPoly eliminant_by_resultant(const Game& g) {
  auto [f1, f2] = quadrics_22(g);
  MultiPoly res = resultant_univariate(f1, f2, 3);  // eliminate p22
  // rename p11, p12, p21 -> x, y, z
  std::vector<MultiPoly> sub;
  for (int i = 0; i < 3; ++i)
    sub.push_back(MultiPoly::variable(xyz_ring(), i));
  sub.push_back(MultiPoly(xyz_ring()));  // p22 no longer occurs
  return res.compose(sub);
}

Landmarks22 landmarks_22(const Game& g) {
  require_22(g);
  auto [a11, a12, a21, a22] = amat(g);
  auto [b11, b12, b21, b22] = bmat(g);
  Landmarks22 lm;
  for (const auto* m : {&g.payoff[0], &g.payoff[1]})
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = i + 1; j < 4; ++j)
        if ((*m)[i] == (*m)[j]) {
          lm.degenerate = true;
          lm.note = "repeated payoff entries; landmark points degenerate";
        }

  lm.N = {(b22 - b21) * (a22 - a12), (b22 - b21) * (a11 - a21),
          (b11 - b12) * (a22 - a12), (b11 - b12) * (a11 - a21)};

  lm.D[0][0] = {Rat(0), (a11 - a21) * (b22 - b11), (a22 - a11) * (b11 - b12),
                (a11 - a21) * (b11 - b12)};
  lm.D[0][1] = {(a22 - a12) * (b12 - b21), Rat(0), (a22 - a12) * (b11 - b12),
                (a12 - a21) * (b11 - b12)};
  lm.D[1][0] = {(a21 - a12) * (b21 - b22), (a11 - a21) * (b21 - b22), Rat(0),
                (a11 - a21) * (b12 - b21)};
  lm.D[1][1] = {(a22 - a12) * (b21 - b22), (a11 - a22) * (b21 - b22),
                (a12 - a22) * (b11 - b22), Rat(0)};

  lm.F[0][0] = {Rat(0), (a12 - a21) * (b21 - b22), (a12 - a22) * (b21 - b12),
                (a12 - a21) * (b12 - b21)};
  lm.F[0][1] = {(a11 - a22) * (b21 - b22), Rat(0), (a11 - a22) * (b22 - b11),
                (a11 - a21) * (b11 - b22)};
  lm.F[1][0] = {(a12 - a22) * (b11 - b22), (a11 - a22) * (b22 - b11), Rat(0),
                (a11 - a22) * (b11 - b12)};
  lm.F[1][1] = {(a12 - a21) * (b12 - b21), (a11 - a21) * (b21 - b12),
                (a12 - a21) * (b11 - b12), Rat(0)};
  return lm;
}

JInvariant22 j_invariant_22(const Game& g) {
  SpohnCubic sc = spohn_cubic(g);
  std::array<Rat, 10> coeffs = family_embed(sc.c);
  JInvariant22 out;
  out.discriminant = cubic_discriminant(coeffs);
  if (cubic_j_invariant(coeffs, out.j)) {
    out.finite = true;
    return out;
  }
  // name the vanishing factors of the factored payoff-space discriminant
  auto [a11, a12, a21, a22] = amat(g);
  auto [b11, b12, b21, b22] = bmat(g);
  const std::pair<const char*, Rat> lin[] = {
      {"a11-a12", a11 - a12}, {"a11-a21", a11 - a21}, {"a12-a22", a12 - a22},
      {"a21-a22", a21 - a22}, {"b11-b12", b11 - b12}, {"b11-b21", b11 - b21},
      {"b12-b22", b12 - b22}, {"b21-b22", b21 - b22}};
  for (const auto& [name, v] : lin)
    if (v == 0) out.vanishing.push_back(name);
  // the discriminant is the product of the squared differences and the core,
  // so when no difference vanishes the core must
  if (out.vanishing.empty()) out.vanishing.push_back("core");
  return out;
}

const MultiPoly& payoff_discriminant() {
  static const MultiPoly d = [] {
    const auto& cs = spohn_cubic_symbolic();
    std::vector<MultiPoly> sub(cs.begin(), cs.end());
    return family_discriminant().compose(sub);
  }();
  return d;
}

const std::vector<std::pair<std::string, MultiPoly>>&
payoff_discriminant_factors() {
  static const std::vector<std::pair<std::string, MultiPoly>> fs = [] {
    const auto& ring = payoff_ring_22();
    auto v = [&](const char* n) { return MultiPoly::variable(ring, n); };
    std::vector<std::pair<std::string, MultiPoly>> out;
    const char* names[][2] = {{"a11", "a12"}, {"a11", "a21"}, {"a12", "a22"},
                              {"a21", "a22"}, {"b11", "b12"}, {"b11", "b21"},
                              {"b12", "b22"}, {"b21", "b22"}};
    for (auto [p, q] : names)
      out.emplace_back(std::string(p) + "-" + q, v(p) - v(q));
    out.emplace_back("core", payoff_discriminant_core());
    return out;
  }();
  return fs;
}

const MultiPoly& payoff_discriminant_core() {
  static const MultiPoly e = [] {
    const auto& ring = payoff_ring_22();
    auto v = [&](const char* n) { return MultiPoly::variable(ring, n); };
    const char* names[][2] = {{"a11", "a12"}, {"a11", "a21"}, {"a12", "a22"},
                              {"a21", "a22"}, {"b11", "b12"}, {"b11", "b21"},
                              {"b12", "b22"}, {"b21", "b22"}};
    MultiPoly rest = payoff_discriminant();
    for (auto [p, q] : names) {
      MultiPoly lin = v(p) - v(q);
      rest = rest.exact_div(lin).exact_div(lin);
    }
    return rest;
  }();
  return e;
}

const MultiPoly& payoff_aronhold() {
  static const MultiPoly i8 = [] {
    const auto& cs = spohn_cubic_symbolic();
    std::vector<MultiPoly> sub(cs.begin(), cs.end());
    return family_aronhold().compose(sub).primitive_part();
  }();
  return i8;
}

bool sign_condition_22(const Game& g) {
  require_22(g);
  auto [a11, a12, a21, a22] = amat(g);
  auto [b11, b12, b21, b22] = bmat(g);
  int s1 = rat_sign(a11 - a21), s2 = rat_sign(a22 - a12);
  int s3 = rat_sign(b11 - b12), s4 = rat_sign(b22 - b21);
  return s1 != 0 && s1 == s2 && s3 != 0 && s3 == s4;
}

}  // namespace depeq
