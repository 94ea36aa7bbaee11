#include "depeq/rational.hpp"

#include <stdexcept>

namespace depeq {

Rat rat_parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rat_parse: empty string");
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    if (s.find('/') != std::string::npos)
      throw std::invalid_argument("rat_parse: mixed exponent and fraction: " + s);
    if (epos == 0 || epos + 1 == s.size())
      throw std::invalid_argument("rat_parse: bad exponent: " + s);
    long exp = 0;
    try {
      size_t used = 0;
      exp = std::stol(s.substr(epos + 1), &used);
      if (used != s.size() - epos - 1) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw std::invalid_argument("rat_parse: bad exponent: " + s);
    }
    Rat base = rat_parse(s.substr(0, epos));
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10,
                  static_cast<unsigned long>(exp < 0 ? -exp : exp));
    Rat r = exp >= 0 ? Rat(base * Rat(p10)) : Rat(base / Rat(p10));
    r.canonicalize();
    return r;
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos)
      throw std::invalid_argument("rat_parse: mixed decimal and fraction: " + s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    mpz_class num;
    if (num.set_str(digits, 10) != 0)
      throw std::invalid_argument("rat_parse: bad decimal: " + s);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    Rat r(num, den);
    r.canonicalize();
    return r;
  }
  Rat r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("rat_parse: bad rational: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("rat_parse: zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat rat_random(std::mt19937_64& rng, long bound, long den_bound) {
  std::uniform_int_distribution<long> num(-bound, bound);
  std::uniform_int_distribution<long> den(1, den_bound);
  Rat r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

std::vector<Rat> rat_random_vec(std::mt19937_64& rng, size_t n, long bound,
                                long den_bound) {
  std::vector<Rat> v;
  v.reserve(n);
  for (size_t i = 0; i < n; ++i) v.push_back(rat_random(rng, bound, den_bound));
  return v;
}

}  // namespace depeq
