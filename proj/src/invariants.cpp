#include "depeq/invariants.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace depeq {

namespace {

const std::array<std::array<int, 3>, 10> kCubicMonos = {{{3, 0, 0},
                                                         {2, 1, 0},
                                                         {2, 0, 1},
                                                         {1, 2, 0},
                                                         {1, 1, 1},
                                                         {1, 0, 2},
                                                         {0, 3, 0},
                                                         {0, 2, 1},
                                                         {0, 1, 2},
                                                         {0, 0, 3}}};

int slot_of(int x, int y, int z) {
  for (int k = 0; k < 10; ++k) {
    const auto& m = kCubicMonos[k];
    if (m[0] == x && m[1] == y && m[2] == z) return k;
  }
  return -1;
}

// a monomial in the ten coefficient variables
using CoefMono = std::array<uint8_t, 10>;

// all degree-d coefficient monomials whose induced (x,y,z)-weight is (d,d,d);
// any invariant of degree d is supported on exactly these
std::vector<CoefMono> balanced_monomials(int d) {
  std::vector<CoefMono> out;
  CoefMono cur{};
  int w[3] = {0, 0, 0};
  auto rec = [&](auto&& self, int slot, int rem) -> void {
    if (slot == 10) {
      if (rem == 0 && w[0] == d && w[1] == d && w[2] == d) out.push_back(cur);
      return;
    }
    for (int e = 0; e <= rem; ++e) {
      cur[slot] = static_cast<uint8_t>(e);
      for (int t = 0; t < 3; ++t) w[t] += e * kCubicMonos[slot][t];
      if (w[0] <= d && w[1] <= d && w[2] <= d) self(self, slot + 1, rem - e);
      for (int t = 0; t < 3; ++t) w[t] -= e * kCubicMonos[slot][t];
    }
    cur[slot] = 0;
  };
  rec(rec, 0, d);
  return out;
}

constexpr int64_t kPrime = 2305843009213693951LL;  // 2^61 - 1

int64_t mulmod(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<__int128>(a) * b % kPrime);
}

int64_t powmod(int64_t a, int64_t e) {
  int64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

// rational reconstruction of x mod kPrime with |num|, |den| < 2^30
bool reconstruct(int64_t x, long& num, long& den) {
  int64_t r0 = kPrime, r1 = x, t0 = 0, t1 = 1;
  const int64_t bound = 1073741824;
  while (r1 >= bound) {
    int64_t q = r0 / r1;
    int64_t r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || (t1 > 0 ? t1 : -t1) >= bound) return false;
  num = static_cast<long>(t1 < 0 ? -r1 : r1);
  den = static_cast<long>(t1 < 0 ? -t1 : t1);
  return true;
}

const std::vector<std::string>& coef_ring() {
  static const std::vector<std::string> ring = {
      "m300", "m210", "m201", "m120", "m111",
      "m102", "m030", "m021", "m012", "m003"};
  return ring;
}

// the derivation induced on coefficient polynomials by x_v d/dx_u; exact
MultiPoly apply_derivation(const MultiPoly& f, int u, int v) {
  MultiPoly img(coef_ring());
  for (const auto& [mono, coeff] : f.terms()) {
    for (int k = 0; k < 10; ++k) {
      if (!mono.e[k]) continue;
      int m[3] = {kCubicMonos[k][0], kCubicMonos[k][1], kCubicMonos[k][2]};
      m[u] += 1;
      m[v] -= 1;
      if (m[v] < 0) continue;
      int k2 = slot_of(m[0], m[1], m[2]);
      if (k2 < 0) continue;
      std::vector<int> e(10);
      for (int t = 0; t < 10; ++t) e[t] = mono.e[t];
      e[k]--;
      e[k2]++;
      img += MultiPoly::mono(coef_ring(), e,
                             coeff * Rat(static_cast<long>(mono.e[k]) *
                                         (kCubicMonos[k][u] + 1)));
    }
  }
  return img;
}

// Solves for the one-dimensional space of degree-d invariants: kernel of the
// six infinitesimal generators over the balanced monomials, computed modulo
// a word-size prime, lifted by rational reconstruction, and then certified
// exactly. The anchor monomial fixes scale (primitive) and sign.
MultiPoly derive_invariant(int d, const CoefMono& anchor) {
  std::vector<CoefMono> basis = balanced_monomials(d);
  std::map<CoefMono, int> index;
  for (size_t i = 0; i < basis.size(); ++i)
    index[basis[i]] = static_cast<int>(i);
  const size_t n = basis.size();

  std::vector<std::vector<int64_t>> rows;
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) {
      if (u == v) continue;
      std::map<CoefMono, std::map<int, int64_t>> image;
      for (size_t bi = 0; bi < n; ++bi) {
        const CoefMono& a = basis[bi];
        for (int k = 0; k < 10; ++k) {
          if (!a[k]) continue;
          int m[3] = {kCubicMonos[k][0], kCubicMonos[k][1], kCubicMonos[k][2]};
          m[u] += 1;
          m[v] -= 1;
          if (m[v] < 0) continue;
          int k2 = slot_of(m[0], m[1], m[2]);
          if (k2 < 0) continue;
          CoefMono img = a;
          img[k]--;
          img[k2]++;
          image[img][static_cast<int>(bi)] +=
              static_cast<int64_t>(a[k]) * (kCubicMonos[k][u] + 1);
        }
      }
      for (auto& [img, entries] : image) {
        std::vector<int64_t> row(n, 0);
        for (auto& [bi, c] : entries) row[bi] = ((c % kPrime) + kPrime) % kPrime;
        rows.push_back(std::move(row));
      }
    }

  std::vector<int> pivot_col;
  size_t rank = 0;
  for (size_t col = 0; col < n && rank < rows.size(); ++col) {
    size_t sel = rows.size();
    for (size_t r = rank; r < rows.size(); ++r)
      if (rows[r][col]) {
        sel = r;
        break;
      }
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    int64_t inv = powmod(rows[rank][col], kPrime - 2);
    for (size_t j = col; j < n; ++j) rows[rank][j] = mulmod(rows[rank][j], inv);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || !rows[r][col]) continue;
      int64_t f = rows[r][col];
      for (size_t j = col; j < n; ++j) {
        rows[r][j] = (rows[r][j] - mulmod(f, rows[rank][j])) % kPrime;
        if (rows[r][j] < 0) rows[r][j] += kPrime;
      }
    }
    pivot_col.push_back(static_cast<int>(col));
    ++rank;
  }
  if (n - rank != 1)
    throw std::logic_error("cubic invariant space is not one-dimensional");

  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  size_t free_col = 0;
  while (is_pivot[free_col]) ++free_col;
  std::vector<int64_t> ker(n, 0);
  ker[free_col] = 1;
  for (size_t r = 0; r < rank; ++r)
    ker[pivot_col[r]] = (kPrime - rows[r][free_col]) % kPrime;

  auto it = index.find(anchor);
  if (it == index.end() || ker[it->second] == 0)
    throw std::logic_error("anchor monomial missing from cubic invariant");
  int64_t scale = powmod(ker[it->second], kPrime - 2);

  MultiPoly out(coef_ring());
  for (size_t i = 0; i < n; ++i) {
    int64_t v = mulmod(ker[i], scale);
    if (!v) continue;
    long num, den;
    if (!reconstruct(v, num, den))
      throw std::logic_error("rational reconstruction failed");
    std::vector<int> e(10);
    for (int k = 0; k < 10; ++k) e[k] = basis[i][k];
    Rat c(num, den);
    c.canonicalize();  // two-argument mpq construction is not reduced
    out += MultiPoly::mono(coef_ring(), e, c);
  }
  out = out.primitive_part();
  std::vector<int> ae(10);
  for (int k = 0; k < 10; ++k) ae[k] = anchor[k];
  if (out.coeff_of(ae) < 0) out = -out;

  // certificate: exact annihilation by every infinitesimal generator
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v)
      if (u != v && !apply_derivation(out, u, v).is_zero())
        throw std::logic_error("cubic invariant failed exact verification");
  return out;
}

const std::vector<std::string>& family_ring() {
  static const std::vector<std::string> ring = {"c1", "c2", "c3", "c4",
                                                "c5", "c6", "c7"};
  return ring;
}

MultiPoly restrict_to_family(const MultiPoly& f) {
  std::vector<MultiPoly> sub(10, MultiPoly(family_ring()));
  auto cv = [](int i) { return MultiPoly::variable(family_ring(), i); };
  sub[1] = cv(0);  // x^2 y
  sub[2] = cv(1);  // x^2 z
  sub[3] = cv(2);  // x y^2
  sub[5] = cv(3);  // x z^2
  sub[7] = cv(4);  // y^2 z
  sub[8] = cv(5);  // y z^2
  sub[4] = cv(6);  // x y z
  return f.compose(sub);
}

}  // namespace

const std::array<std::array<int, 3>, 10>& cubic_monomial_exponents() {
  return kCubicMonos;
}

const MultiPoly& aronhold_invariant() {
  static const MultiPoly s = [] {
    CoefMono anchor{};  // a_{x^3} a_{xyz} a_{y^3} a_{z^3}
    anchor[0] = anchor[4] = anchor[6] = anchor[9] = 1;
    return derive_invariant(4, anchor);
  }();
  return s;
}

const MultiPoly& degree6_invariant() {
  static const MultiPoly t = [] {
    CoefMono anchor{};  // (a_{x^3} a_{y^3} a_{z^3})^2
    anchor[0] = anchor[6] = anchor[9] = 2;
    return derive_invariant(6, anchor);
  }();
  return t;
}

Rat aronhold_at(const std::array<Rat, 10>& coeffs) {
  return aronhold_invariant().eval({coeffs.begin(), coeffs.end()});
}

Rat degree6_at(const std::array<Rat, 10>& coeffs) {
  return degree6_invariant().eval({coeffs.begin(), coeffs.end()});
}

Rat cubic_discriminant(const std::array<Rat, 10>& coeffs) {
  Rat s = aronhold_at(coeffs), t = degree6_at(coeffs);
  return Rat(s * s * s + t * t) / Rat(-1728);
}

bool cubic_j_invariant(const std::array<Rat, 10>& coeffs, Rat& j_out) {
  Rat s = aronhold_at(coeffs), t = degree6_at(coeffs);
  Rat denom = s * s * s + t * t;
  if (denom == 0) return false;
  j_out = Rat(1728) * s * s * s / denom;
  return true;
}

const MultiPoly& family_aronhold() {
  static const MultiPoly s7 = restrict_to_family(aronhold_invariant());
  return s7;
}

const MultiPoly& family_degree6() {
  static const MultiPoly t7 = restrict_to_family(degree6_invariant());
  return t7;
}

const MultiPoly& family_discriminant() {
  static const MultiPoly d7 = [] {
    MultiPoly g = family_aronhold().pow(3) + family_degree6().pow(2);
    return MultiPoly(g * Rat(-1, 1728));
  }();
  return d7;
}

std::array<Rat, 10> family_embed(const std::array<Rat, 7>& c) {
  std::array<Rat, 10> a{};
  a[1] = c[0];
  a[2] = c[1];
  a[3] = c[2];
  a[5] = c[3];
  a[7] = c[4];
  a[8] = c[5];
  a[4] = c[6];
  return a;
}

}  // namespace depeq
