#pragma once

#include <array>

#include "depeq/poly.hpp"
#include "depeq/rational.hpp"

namespace depeq {

// Invariant theory of plane cubic curves. General cubics are handled through
// their ten coefficients, ordered by the monomials
//   x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3.
// The seven-monomial family
//   c1 x^2y + c2 x^2z + c3 xy^2 + c4 xz^2 + c5 y^2z + c6 yz^2 + c7 xyz
// (cubics through the three coordinate points) gets dedicated restrictions.

const std::array<std::array<int, 3>, 10>& cubic_monomial_exponents();

// Degree-4 invariant of ternary cubics (the Aronhold invariant): the unique
// one up to scale. Derived at first use by solving the infinitesimal
// invariance equations over the weight-balanced coefficient monomials and
// certified exactly; primitive integer coefficients (25 terms), sign fixed
// to be positive on a_{x^3} a_{xyz} a_{y^3} a_{z^3}.
const MultiPoly& aronhold_invariant();

// Its degree-6 companion (103 terms), positive on (a_{x^3} a_{y^3} a_{z^3})^2.
const MultiPoly& degree6_invariant();

Rat aronhold_at(const std::array<Rat, 10>& coeffs);
Rat degree6_at(const std::array<Rat, 10>& coeffs);

// Discriminant -(S^3 + T^2)/1728 in the normalizations above: vanishes
// exactly on singular cubics, and scaled so that its restriction to the
// seven-monomial family is integral and primitive (leading coefficient 16).
Rat cubic_discriminant(const std::array<Rat, 10>& coeffs);

// j-invariant 1728 S^3/(S^3 + T^2) of a smooth cubic; false when the
// discriminant vanishes (singular curve, j undefined).
bool cubic_j_invariant(const std::array<Rat, 10>& coeffs, Rat& j_out);

// Restrictions to the seven-monomial family, over the ring c1..c7:
// the Aronhold invariant (12 terms), the degree-6 invariant (30 terms),
// and the discriminant (127 terms of degree 12).
const MultiPoly& family_aronhold();
const MultiPoly& family_degree6();
const MultiPoly& family_discriminant();

// Embeds family coefficients into the ten-coefficient vector.
std::array<Rat, 10> family_embed(const std::array<Rat, 7>& c);

}  // namespace depeq
