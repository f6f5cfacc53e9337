#pragma once

// Weil q-numbers, represented by their monic minimal polynomials.

#include "weilcat/error.hpp"
#include "weilcat/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace weilcat {

struct PrimePower {
  BigInt p;
  unsigned e = 1;
  BigInt q;

  // Throws ValidationError unless q = p^e with p prime and e >= 1.
  static PrimePower from(const BigInt& q);
  static PrimePower from(long q) { return from(BigInt(q)); }

  bool is_square() const { return e % 2 == 0; }
  // sqrt(q) when q is a square.
  BigInt root() const;
  friend bool operator==(const PrimePower& a, const PrimePower& b) { return a.q == b.q; }
};

struct WeilClass {
  PrimePower q;
  IntPoly minpoly;
  int two_d = 0;  // degree of minpoly
  bool is_real = false;
  bool is_rational = false;
  bool is_ordinary = false;
  bool half_degree_convention = false;  // minpoly linear, d = 1/2

  // +1 or -1 for the rational classes x -+ sqrt(q), 0 otherwise.
  int rational_sign() const;
  friend bool operator==(const WeilClass& a, const WeilClass& b) {
    return a.q == b.q && a.minpoly == b.minpoly;
  }
};

class WeilSet {
 public:
  explicit WeilSet(PrimePower q) : q_(std::move(q)) {}
  // Classes are sorted into canonical order; duplicates or mixed q are rejected.
  WeilSet(PrimePower q, std::vector<WeilClass> classes);

  const PrimePower& q() const { return q_; }
  const std::vector<WeilClass>& classes() const { return classes_; }
  std::size_t size() const { return classes_.size(); }
  bool empty() const { return classes_.empty(); }
  bool contains(const IntPoly& minpoly) const;
  int rational_count() const;
  // Contains both rational classes or neither.
  bool even_degree() const { return rational_count() != 1; }
  int total_degree() const;
  // The classes other than the rational ones.
  WeilSet without_rational() const;
  bool is_subset_of(const WeilSet& other) const;

 private:
  PrimePower q_;
  std::vector<WeilClass> classes_;
};

// a_{d-r} = q^r a_{d+r} for 0 <= r <= d. Throws ValidationError on odd degree.
bool check_functional_equation(const IntPoly& p, const PrimePower& q);

// Monic Q of degree d with x^d Q(x + q/x) = P(x). Throws ValidationError when
// the functional equation fails.
IntPoly real_counterpart(const IntPoly& p, const PrimePower& q);

// x^n P(q/x) normalized to be monic, when that is integral.
std::optional<IntPoly> mirror_polynomial(const IntPoly& p, const PrimePower& q);

// Every complex root of P has absolute value sqrt(q). Exact.
bool is_weil_poly(const IntPoly& p, const PrimePower& q);

// Throws ValidationError for reducible, non-monic or non-Weil input.
WeilClass classify(const IntPoly& p, const PrimePower& q);

// p does not divide h(0,0). Throws ValidationError when a real class is present.
bool is_ordinary(const WeilClass& c);
bool is_ordinary(const WeilSet& w);

inline constexpr int kDefaultEnumerationDegreeCap = 12;
// WEILCAT_DEGREE_CAP overrides the default.
int enumeration_degree_cap();

// |a_{2d-1}| bound; shards split [-B, B].
BigInt leading_free_bound(const PrimePower& q, int two_d);

struct EnumerationOptions {
  // Restrict a_{2d-1} to [lo, hi] when set (shards).
  std::optional<BigInt> lead_lo, lead_hi;
  unsigned threads = 1;
};

// All monic degree-2d Weil q-polynomials satisfying the functional equation,
// lexicographic in (a_{2d-1}, ..., a_d). Throws CapExceeded above the cap.
std::vector<IntPoly> enumerate_weil_polys(const PrimePower& q, int two_d, const EnumerationOptions& opts = {});

}  // namespace weilcat
