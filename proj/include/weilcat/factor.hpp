#pragma once

// Factorization of integer polynomials into irreducibles over Q.
//
// Zassenhaus: factor modulo a good prime (distinct-degree, then equal-degree
// splitting), Hensel-lift the modular factors past a Mignotte-type bound, and
// recombine subsets by trial division.

#include "weilcat/error.hpp"
#include "weilcat/poly.hpp"

#include <vector>

namespace weilcat {

inline constexpr int kDefaultFactorDegreeCap = 16;

struct PolyFactor {
  IntPoly poly;  // primitive, positive leading coefficient, irreducible
  int multiplicity = 1;
};

// Irreducible factors of a nonzero polynomial, sorted by (degree, coefficients).
// The product of poly^multiplicity equals p up to sign and content. The cap
// applies to the degree of the squarefree part.
std::vector<PolyFactor> factor_int_poly(const IntPoly& p, int degree_cap = kDefaultFactorDegreeCap);

bool is_irreducible(const IntPoly& p);

}  // namespace weilcat
