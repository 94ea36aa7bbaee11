#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "depeq/rational.hpp"

namespace depeq {

// Exponent vector with inline storage. Up to 30 variables, per-variable
// exponent and total degree both capped at 255.
struct Mono {
  uint8_t nv = 0;
  uint8_t deg = 0;
  std::array<uint8_t, 30> e{};

  static Mono one(uint8_t nvars) {
    Mono m;
    m.nv = nvars;
    return m;
  }
  bool operator==(const Mono& o) const {
    return std::memcmp(this, &o, sizeof(Mono)) == 0;
  }
  // graded lex: higher total degree first, ties broken by exponent vector.
  bool graded_before(const Mono& o) const {
    if (deg != o.deg) return deg > o.deg;
    return std::memcmp(e.data(), o.e.data(), nv) > 0;
  }
  Mono operator*(const Mono& o) const {
    Mono r = *this;
    int d = deg + o.deg;
    if (d > 255) throw std::overflow_error("Mono: degree overflow");
    r.deg = static_cast<uint8_t>(d);
    for (int i = 0; i < nv; ++i) {
      int x = e[i] + o.e[i];
      if (x > 255) throw std::overflow_error("Mono: exponent overflow");
      r.e[i] = static_cast<uint8_t>(x);
    }
    return r;
  }
  bool divisible_by(const Mono& o) const {
    for (int i = 0; i < nv; ++i)
      if (e[i] < o.e[i]) return false;
    return true;
  }
  Mono operator/(const Mono& o) const {
    Mono r = *this;
    r.deg = static_cast<uint8_t>(deg - o.deg);
    for (int i = 0; i < nv; ++i) r.e[i] = static_cast<uint8_t>(e[i] - o.e[i]);
    return r;
  }
};
static_assert(sizeof(Mono) == 32);

struct MonoHash {
  size_t operator()(const Mono& m) const {
    uint64_t w[4];
    std::memcpy(w, &m, 32);
    uint64_t h = 0x9e3779b97f4a7c15ull;
    for (uint64_t x : w) {
      h ^= x;
      h *= 0xff51afd7ed558ccdull;
      h ^= h >> 33;
    }
    return static_cast<size_t>(h);
  }
};

struct DivisionError : std::runtime_error {
  std::string remainder;
  DivisionError(const std::string& msg, std::string rem)
      : std::runtime_error(msg), remainder(std::move(rem)) {}
};

// Sparse multivariate polynomial with exact rational coefficients over a
// fixed, ordered variable list. Terms are kept sorted in descending graded
// lex order with no zero coefficients, so equal polynomials compare equal.
class MultiPoly {
 public:
  using Term = std::pair<Mono, Rat>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars);

  static MultiPoly constant(std::vector<std::string> vars, const Rat& c);
  static MultiPoly variable(std::vector<std::string> vars, size_t idx);
  static MultiPoly variable(std::vector<std::string> vars,
                            const std::string& name);
  // Single term: coeff * prod vars[i]^exps[i], exps matched by position.
  static MultiPoly mono(std::vector<std::string> vars,
                        const std::vector<int>& exps, const Rat& c);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.deg == 0);
  }
  Rat constant_value() const;  // requires is_constant()
  int total_degree() const;    // -1 for the zero polynomial
  int degree_in(size_t idx) const;
  size_t var_index(const std::string& name) const;

  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(const Rat& c) const;
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  MultiPoly pow(unsigned k) const;

  // Leading term in graded lex order; requires a nonzero polynomial.
  const Term& leading() const;
  Rat coeff_of(const std::vector<int>& exps) const;

  Rat eval(const std::vector<Rat>& point) const;
  double eval_double(const std::vector<double>& point) const;
  // Substitutes values[i] for variable i; all values share one ring.
  MultiPoly compose(const std::vector<MultiPoly>& values) const;
  MultiPoly derivative(size_t idx) const;

  // Exact division; throws DivisionError (with a remainder witness) when o
  // does not divide *this.
  MultiPoly exact_div(const MultiPoly& o) const;
  bool divides_exactly(const MultiPoly& o, MultiPoly* quotient) const;

  // gcd of coefficients carrying the sign of the leading term.
  Rat content() const;
  // *this / content(): integer coprime coefficients, positive leading one.
  MultiPoly primitive_part() const;

  // Coefficients of *this viewed as univariate in vars()[idx]; entry d is
  // the coefficient polynomial of vars()[idx]^d (same ring, idx-degree 0).
  std::vector<MultiPoly> coeffs_in(size_t idx) const;

  // Rebuilds the polynomial over new_vars, which must contain every
  // variable that actually occurs.
  MultiPoly with_vars(const std::vector<std::string>& new_vars) const;

  std::string str() const;

 private:
  std::vector<std::string> vars_;
  std::vector<Term> terms_;

  void sort_and_collect(std::vector<Term>&& raw);
  void check_same_ring(const MultiPoly& o) const;
  friend MultiPoly poly_parse(std::vector<std::string>, const std::string&);
};

// Resultant of p and q with respect to vars()[idx], as the determinant of
// the Sylvester matrix whose top rows carry the coefficients of p.
// Res(x-1, x-2) over x is -1 under this convention.
MultiPoly resultant_univariate(const MultiPoly& p, const MultiPoly& q,
                               size_t idx);

// Determinant of a square matrix of polynomials (fraction-free elimination).
MultiPoly det_poly(std::vector<std::vector<MultiPoly>> m);

// Parses "9*x1^2*x2 - 2*x1*x2^2 + 5/3*x2 - 7". Whitespace is ignored.
MultiPoly poly_parse(std::vector<std::string> vars, const std::string& text);

}  // namespace depeq
