#pragma once

// Dense univariate polynomials over Z, stored low-degree-first.

#include "weilcat/bigint.hpp"
#include "weilcat/linalg.hpp"

#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace weilcat {

class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  // Coefficients low-degree-first: {5, -1, 1} is x^2 - x + 5.
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly constant(const BigInt& c);
  static IntPoly monomial(const BigInt& c, int degree);
  static IntPoly x() { return monomial(BigInt(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1L; }
  const BigInt& leading() const;
  // Coefficient of x^i; zero beyond the degree.
  BigInt coeff(int i) const;
  const std::vector<BigInt>& coeffs() const { return c_; }

  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const IntPoly& o);
  IntPoly& operator*=(const BigInt& s);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const BigInt& s) { return a *= s; }
  friend IntPoly operator*(const BigInt& s, IntPoly a) { return a *= s; }
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
  // Degree first, then coefficients from the top: a total order for canonical sorting.
  friend bool operator<(const IntPoly& a, const IntPoly& b);

  BigInt eval(const BigInt& x) const;
  Rational eval(const Rational& x) const;
  // Sign of P(x), computed without leaving Z.
  int sign_at(const Rational& x) const;
  IntPoly derivative() const;
  BigInt content() const;
  // P / content(P), normalized to a positive leading coefficient.
  IntPoly primitive_part() const;
  IntPoly pow(unsigned n) const;
  // P(x) -> P(s x) for an integer s.
  IntPoly scale_argument(const BigInt& s) const;

  std::string str(char var = 'x') const;

 private:
  void trim();
  std::vector<BigInt> c_;
};

struct PolyDivRem {
  IntPoly quot;
  IntPoly rem;
  unsigned long exponent = 0;  // lc(b)^exponent * a = quot * b + rem
};

PolyDivRem pseudo_divrem(const IntPoly& a, const IntPoly& b);
// a / b in Z[x] when b divides a exactly, nullopt otherwise.
std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b);
bool poly_divides(const IntPoly& d, const IntPoly& a);
// Primitive gcd with positive leading coefficient.
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);
// Primitive product of the distinct irreducible factors of P.
IntPoly squarefree_part(const IntPoly& p);
bool is_squarefree(const IntPoly& p);

class EndpointIsRoot : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Sturm sequence with primitive-part normalization at each step.
std::vector<IntPoly> sturm_chain(const IntPoly& p);
// Number of distinct real roots of a squarefree P in (lo, hi].
int sturm_count(const IntPoly& p, const Rational& lo, const Rational& hi);
// Number of real roots of a squarefree P in (lo, +inf).
int sturm_count_above(const IntPoly& p, const Rational& lo);
int count_all_real_roots(const IntPoly& p);

// Companion matrix acting on column vectors in the power basis 1, x, ..., x^{n-1}.
IntMatrix companion_matrix(const IntPoly& monic);
IntMatrix eval_at_matrix(const IntPoly& p, const IntMatrix& m);
// Characteristic polynomial det(x I - M) by the Faddeev-LeVerrier recurrence.
IntPoly characteristic_polynomial(const IntMatrix& m);

}  // namespace weilcat
