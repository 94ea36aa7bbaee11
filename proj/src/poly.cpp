#include "depeq/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <unordered_map>

namespace depeq {

namespace {
struct MonoDesc {
  bool operator()(const Mono& a, const Mono& b) const {
    return a.graded_before(b);
  }
};
}  // namespace

MultiPoly::MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {
  if (vars_.size() > 30)
    throw std::invalid_argument("MultiPoly: at most 30 variables supported");
}

MultiPoly MultiPoly::constant(std::vector<std::string> vars, const Rat& c) {
  MultiPoly p(std::move(vars));
  if (c != 0) p.terms_.push_back({Mono::one(static_cast<uint8_t>(p.vars_.size())), c});
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, size_t idx) {
  MultiPoly p(std::move(vars));
  if (idx >= p.vars_.size()) throw std::out_of_range("MultiPoly::variable");
  Mono m = Mono::one(static_cast<uint8_t>(p.vars_.size()));
  m.deg = 1;
  m.e[idx] = 1;
  p.terms_.push_back({m, Rat(1)});
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars,
                              const std::string& name) {
  auto it = std::find(vars.begin(), vars.end(), name);
  if (it == vars.end())
    throw std::invalid_argument("MultiPoly::variable: unknown variable " + name);
  size_t idx = static_cast<size_t>(it - vars.begin());
  return variable(std::move(vars), idx);
}

MultiPoly MultiPoly::mono(std::vector<std::string> vars,
                          const std::vector<int>& exps, const Rat& c) {
  MultiPoly p(std::move(vars));
  if (exps.size() != p.vars_.size())
    throw std::invalid_argument("MultiPoly::mono: exponent count mismatch");
  if (c == 0) return p;
  Mono m = Mono::one(static_cast<uint8_t>(p.vars_.size()));
  int deg = 0;
  for (size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] < 0 || exps[i] > 255)
      throw std::invalid_argument("MultiPoly::mono: exponent out of range");
    m.e[i] = static_cast<uint8_t>(exps[i]);
    deg += exps[i];
  }
  if (deg > 255) throw std::overflow_error("MultiPoly::mono: degree overflow");
  m.deg = static_cast<uint8_t>(deg);
  p.terms_.push_back({m, c});
  return p;
}

Rat MultiPoly::constant_value() const {
  if (!is_constant())
    throw std::logic_error("MultiPoly::constant_value on a nonconstant polynomial");
  return terms_.empty() ? Rat(0) : terms_[0].second;
}

int MultiPoly::total_degree() const {
  return terms_.empty() ? -1 : terms_[0].first.deg;
}

int MultiPoly::degree_in(size_t idx) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.e[idx]));
  return d;
}

size_t MultiPoly::var_index(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end())
    throw std::invalid_argument("MultiPoly: unknown variable " + name);
  return static_cast<size_t>(it - vars_.begin());
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  return vars_ == o.vars_ && terms_ == o.terms_;
}

void MultiPoly::check_same_ring(const MultiPoly& o) const {
  if (vars_ != o.vars_)
    throw std::invalid_argument("MultiPoly: variable-set mismatch");
}

void MultiPoly::sort_and_collect(std::vector<Term>&& raw) {
  std::sort(raw.begin(), raw.end(), [](const Term& a, const Term& b) {
    return a.first.graded_before(b.first);
  });
  terms_.clear();
  terms_.reserve(raw.size());
  for (auto& t : raw) {
    if (!terms_.empty() && terms_.back().first == t.first)
      terms_.back().second += t.second;
    else
      terms_.push_back(std::move(t));
    if (!terms_.empty() && terms_.back().second == 0) terms_.pop_back();
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  check_same_ring(o);
  MultiPoly r(vars_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() ||
        (i < terms_.size() && terms_[i].first.graded_before(o.terms_[j].first))) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() ||
               o.terms_[j].first.graded_before(terms_[i].first)) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Rat c = terms_[i].second + o.terms_[j].second;
      if (c != 0) r.terms_.push_back({terms_[i].first, std::move(c)});
      ++i, ++j;
    }
  }
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  check_same_ring(o);
  MultiPoly r(vars_);
  if (terms_.empty() || o.terms_.empty()) return r;
  std::unordered_map<Mono, Rat, MonoHash> acc;
  acc.reserve(terms_.size() * o.terms_.size() / 2 + 8);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) acc[ma * mb] += ca * cb;
  std::vector<Term> raw;
  raw.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) raw.push_back({m, std::move(c)});
  r.sort_and_collect(std::move(raw));
  return r;
}

MultiPoly MultiPoly::operator*(const Rat& c) const {
  MultiPoly r(vars_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly r = constant(vars_, 1);
  MultiPoly base = *this;
  while (k) {
    if (k & 1) r = r * base;
    base = (k >>= 1) ? base * base : base;
  }
  return r;
}

const MultiPoly::Term& MultiPoly::leading() const {
  if (terms_.empty()) throw std::logic_error("MultiPoly::leading on zero");
  return terms_.front();
}

Rat MultiPoly::coeff_of(const std::vector<int>& exps) const {
  if (exps.size() != vars_.size())
    throw std::invalid_argument("MultiPoly::coeff_of: exponent count mismatch");
  Mono m = Mono::one(static_cast<uint8_t>(vars_.size()));
  int deg = 0;
  for (size_t i = 0; i < exps.size(); ++i) {
    m.e[i] = static_cast<uint8_t>(exps[i]);
    deg += exps[i];
  }
  m.deg = static_cast<uint8_t>(deg);
  for (const auto& [mm, c] : terms_)
    if (mm == m) return c;
  return Rat(0);
}

Rat MultiPoly::eval(const std::vector<Rat>& point) const {
  if (point.size() != vars_.size())
    throw std::invalid_argument("MultiPoly::eval: point size mismatch");
  std::vector<std::vector<Rat>> pows(vars_.size());
  for (size_t v = 0; v < vars_.size(); ++v) {
    int d = degree_in(v);
    pows[v].reserve(d + 1);
    pows[v].push_back(Rat(1));
    for (int k = 1; k <= d; ++k) pows[v].push_back(pows[v].back() * point[v]);
  }
  Rat acc(0);
  for (const auto& [m, c] : terms_) {
    Rat t = c;
    for (size_t v = 0; v < vars_.size(); ++v)
      if (m.e[v]) t *= pows[v][m.e[v]];
    acc += t;
  }
  return acc;
}

double MultiPoly::eval_double(const std::vector<double>& point) const {
  if (point.size() != vars_.size())
    throw std::invalid_argument("MultiPoly::eval_double: point size mismatch");
  double acc = 0;
  for (const auto& [m, c] : terms_) {
    double t = c.get_d();
    for (size_t v = 0; v < vars_.size(); ++v)
      for (int k = 0; k < m.e[v]; ++k) t *= point[v];
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::compose(const std::vector<MultiPoly>& values) const {
  if (values.size() != vars_.size())
    throw std::invalid_argument("MultiPoly::compose: value count mismatch");
  for (const auto& v : values) values[0].check_same_ring(v);
  const auto& ring = values.empty() ? vars_ : values[0].vars();
  std::vector<std::vector<MultiPoly>> pows(vars_.size());
  for (size_t v = 0; v < vars_.size(); ++v)
    pows[v].push_back(MultiPoly::constant(ring, Rat(1)));
  MultiPoly acc(ring);
  for (const auto& [m, c] : terms_) {
    MultiPoly t = MultiPoly::constant(ring, c);
    for (size_t v = 0; v < vars_.size(); ++v) {
      while (pows[v].size() <= m.e[v])
        pows[v].push_back(pows[v].back() * values[v]);
      if (m.e[v]) t = t * pows[v][m.e[v]];
    }
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::derivative(size_t idx) const {
  MultiPoly r(vars_);
  std::vector<Term> raw;
  for (const auto& [m, c] : terms_) {
    if (!m.e[idx]) continue;
    Mono d = m;
    d.e[idx] -= 1;
    d.deg -= 1;
    raw.push_back({d, c * m.e[idx]});
  }
  r.sort_and_collect(std::move(raw));
  return r;
}

MultiPoly MultiPoly::exact_div(const MultiPoly& o) const {
  check_same_ring(o);
  if (o.is_zero()) throw std::invalid_argument("MultiPoly: division by zero");
  MultiPoly q(vars_);
  if (is_zero()) return q;
  std::map<Mono, Rat, MonoDesc> rem(terms_.begin(), terms_.end());
  const auto& [lm, lc] = o.leading();
  while (!rem.empty()) {
    const auto& [rm, rc] = *rem.begin();
    if (!rm.divisible_by(lm)) {
      std::string witness;
      for (const auto& [m, c] : rem) {
        MultiPoly w(vars_);
        w.terms_.push_back({m, c});
        witness += (witness.empty() ? "" : " + ") + w.str();
      }
      throw DivisionError("MultiPoly::exact_div: not divisible", witness);
    }
    Mono qm = rm / lm;
    Rat qc = rc / lc;
    q.terms_.push_back({qm, qc});
    for (const auto& [m, c] : o.terms_) {
      Mono key = qm * m;
      auto it = rem.find(key);
      if (it == rem.end()) {
        rem.emplace(key, -qc * c);
      } else {
        it->second -= qc * c;
        if (it->second == 0) rem.erase(it);
      }
    }
  }
  return q;
}

bool MultiPoly::divides_exactly(const MultiPoly& o, MultiPoly* quotient) const {
  try {
    MultiPoly q = exact_div(o);
    if (quotient) *quotient = std::move(q);
    return true;
  } catch (const DivisionError&) {
    return false;
  }
}

Rat MultiPoly::content() const {
  if (terms_.empty()) return Rat(0);
  mpz_class lcm_den(1), gcd_num(0);
  for (const auto& [m, c] : terms_)
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
  for (const auto& [m, c] : terms_) {
    mpz_class n = c.get_num() * (lcm_den / c.get_den());
    mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), n.get_mpz_t());
  }
  Rat content(gcd_num, lcm_den);
  content.canonicalize();
  if (terms_.front().second < 0) content = -content;
  return content;
}

MultiPoly MultiPoly::primitive_part() const {
  if (terms_.empty()) return *this;
  return *this * (Rat(1) / content());
}

std::vector<MultiPoly> MultiPoly::coeffs_in(size_t idx) const {
  int d = degree_in(idx);
  std::vector<MultiPoly> out(static_cast<size_t>(std::max(d, 0)) + 1,
                             MultiPoly(vars_));
  for (const auto& [m, c] : terms_) {
    Mono stripped = m;
    stripped.deg = static_cast<uint8_t>(stripped.deg - stripped.e[idx]);
    stripped.e[idx] = 0;
    out[m.e[idx]].terms_.push_back({stripped, c});
  }
  for (auto& p : out) {
    std::vector<Term> raw = std::move(p.terms_);
    p.sort_and_collect(std::move(raw));
  }
  return out;
}

MultiPoly MultiPoly::with_vars(const std::vector<std::string>& new_vars) const {
  MultiPoly r(new_vars);
  std::vector<int> map(vars_.size(), -1);
  for (size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(new_vars.begin(), new_vars.end(), vars_[i]);
    if (it != new_vars.end()) map[i] = static_cast<int>(it - new_vars.begin());
  }
  std::vector<Term> raw;
  raw.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    Mono t = Mono::one(static_cast<uint8_t>(new_vars.size()));
    t.deg = m.deg;
    for (size_t i = 0; i < vars_.size(); ++i) {
      if (!m.e[i]) continue;
      if (map[i] < 0)
        throw std::invalid_argument("MultiPoly::with_vars drops used variable " +
                                    vars_[i]);
      t.e[map[i]] = m.e[i];
    }
    raw.push_back({t, c});
  }
  r.sort_and_collect(std::move(raw));
  return r;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rat a = abs(c);
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
    }
    std::string factors;
    for (size_t v = 0; v < vars_.size(); ++v) {
      if (!m.e[v]) continue;
      if (!factors.empty()) factors += "*";
      factors += vars_[v];
      if (m.e[v] > 1) factors += "^" + std::to_string(m.e[v]);
    }
    if (factors.empty()) {
      out += rat_str(a);
    } else if (a == 1) {
      out += factors;
    } else {
      out += rat_str(a) + "*" + factors;
    }
  }
  return out;
}

MultiPoly resultant_univariate(const MultiPoly& p, const MultiPoly& q,
                               size_t idx) {
  if (p.vars() != q.vars())
    throw std::invalid_argument("resultant_univariate: variable-set mismatch");
  MultiPoly zero(p.vars());
  if (p.is_zero() || q.is_zero()) return zero;
  int dp = p.degree_in(idx), dq = q.degree_in(idx);
  if (dp == 0 && dq == 0) return MultiPoly::constant(p.vars(), Rat(1));
  if (dp == 0) return p.pow(static_cast<unsigned>(dq));
  if (dq == 0) return q.pow(static_cast<unsigned>(dp));
  auto pc = p.coeffs_in(idx), qc = q.coeffs_in(idx);
  size_t n = static_cast<size_t>(dp + dq);
  std::vector<std::vector<MultiPoly>> syl(n, std::vector<MultiPoly>(n, zero));
  for (int r = 0; r < dq; ++r)
    for (int k = 0; k <= dp; ++k) syl[r][r + dp - k] = pc[k];
  for (int r = 0; r < dp; ++r)
    for (int k = 0; k <= dq; ++k) syl[dq + r][r + dq - k] = qc[k];
  return det_poly(std::move(syl));
}

MultiPoly det_poly(std::vector<std::vector<MultiPoly>> m) {
  size_t n = m.size();
  if (n == 0) throw std::invalid_argument("det_poly: empty matrix");
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("det_poly: not square");
  const auto ring = m[0][0].vars();
  MultiPoly prev = MultiPoly::constant(ring, Rat(1));
  bool negate = false;
  for (size_t k = 0; k + 1 < n; ++k) {
    size_t piv = k;
    while (piv < n && m[piv][k].is_zero()) ++piv;
    if (piv == n) return MultiPoly(ring);
    if (piv != k) {
      std::swap(m[piv], m[k]);
      negate = !negate;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).exact_div(prev);
      m[i][k] = MultiPoly(ring);
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

MultiPoly poly_parse(std::vector<std::string> vars, const std::string& text) {
  MultiPoly p(std::move(vars));
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("poly_parse: empty input");
  std::vector<MultiPoly::Term> raw;
  size_t i = 0;
  while (i < s.size()) {
    Rat sign(1);
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -sign;
      ++i;
    }
    if (i == s.size()) throw std::invalid_argument("poly_parse: dangling sign");
    Rat coeff = sign;
    Mono m = Mono::one(static_cast<uint8_t>(p.vars_.size()));
    bool expect_factor = true;
    while (i < s.size() && (expect_factor || s[i] == '*')) {
      if (s[i] == '*') ++i;
      size_t j = i;
      if (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])))) {
        while (j < s.size() &&
               (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/' ||
                s[j] == '.'))
          ++j;
        coeff *= rat_parse(s.substr(i, j - i));
      } else {
        size_t best = 0;
        size_t best_len = 0;
        bool found = false;
        for (size_t v = 0; v < p.vars_.size(); ++v) {
          const auto& name = p.vars_[v];
          if (name.size() > best_len && s.compare(i, name.size(), name) == 0) {
            best = v;
            best_len = name.size();
            found = true;
          }
        }
        if (!found)
          throw std::invalid_argument("poly_parse: unknown symbol at '" +
                                      s.substr(i, 8) + "'");
        j = i + best_len;
        int exp = 1;
        if (j < s.size() && s[j] == '^') {
          ++j;
          size_t k = j;
          while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k])))
            ++k;
          if (k == j) throw std::invalid_argument("poly_parse: bad exponent");
          exp = std::stoi(s.substr(j, k - j));
          j = k;
        }
        m.e[best] = static_cast<uint8_t>(m.e[best] + exp);
        m.deg = static_cast<uint8_t>(m.deg + exp);
      }
      i = j;
      expect_factor = false;
    }
    if (i < s.size() && s[i] != '+' && s[i] != '-')
      throw std::invalid_argument("poly_parse: expected operator at '" +
                                  s.substr(i, 8) + "'");
    if (coeff != 0) raw.push_back({m, coeff});
  }
  p.sort_and_collect(std::move(raw));
  return p;
}

}  // namespace depeq
