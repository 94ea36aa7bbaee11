#pragma once

#include <gmpxx.h>

#include <random>
#include <string>
#include <vector>

namespace depeq {

using Rat = mpq_class;

// Accepts "p", "p/q", and decimal literals like "-3.25" (turned into -13/4).
Rat rat_parse(const std::string& s);

// Canonical form: "p" when the denominator is 1, otherwise "p/q".
std::string rat_str(const Rat& r);

inline double rat_double(const Rat& r) { return r.get_d(); }

inline int rat_sign(const Rat& r) { return sgn(r); }

// Small random rationals for property tests; numerators in [-bound, bound],
// denominators in [1, den_bound].
Rat rat_random(std::mt19937_64& rng, long bound = 9, long den_bound = 9);

std::vector<Rat> rat_random_vec(std::mt19937_64& rng, size_t n, long bound = 9,
                                long den_bound = 9);

}  // namespace depeq
