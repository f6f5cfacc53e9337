#pragma once

// Exact integer and rational scalars.
//
// Thin value types over GMP's mpz_t / mpq_t without expression templates, so
// they can serve as Eigen scalar types (see the NumTraits specializations at
// the bottom of this header).

#include <gmp.h>

#include <Eigen/Core>

#include <climits>
#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace weilcat {

class BigInt {
 public:
  BigInt() { mpz_init(v_); }
  BigInt(int x) { mpz_init_set_si(v_, x); }
  BigInt(long x) { mpz_init_set_si(v_, x); }
  BigInt(long long x);
  BigInt(unsigned long x) { mpz_init_set_ui(v_, x); }
  BigInt(unsigned int x) { mpz_init_set_ui(v_, x); }
  explicit BigInt(std::string_view text, int base = 10);
  explicit BigInt(mpz_srcptr z) { mpz_init_set(v_, z); }

  BigInt(const BigInt& o) { mpz_init_set(v_, o.v_); }
  BigInt(BigInt&& o) noexcept {
    mpz_init(v_);
    mpz_swap(v_, o.v_);
  }
  BigInt& operator=(const BigInt& o) {
    if (this != &o) mpz_set(v_, o.v_);
    return *this;
  }
  BigInt& operator=(BigInt&& o) noexcept {
    mpz_swap(v_, o.v_);
    return *this;
  }
  ~BigInt() { mpz_clear(v_); }

  mpz_srcptr get() const { return v_; }
  mpz_ptr get() { return v_; }

  int sign() const { return mpz_sgn(v_); }
  bool is_zero() const { return mpz_sgn(v_) == 0; }
  bool is_one() const { return mpz_cmp_ui(v_, 1) == 0; }
  bool fits_long() const { return mpz_fits_slong_p(v_) != 0; }
  long to_long() const;
  double to_double() const { return mpz_get_d(v_); }
  std::size_t bit_length() const { return is_zero() ? 0 : mpz_sizeinbase(v_, 2); }
  std::string str(int base = 10) const;

  BigInt operator-() const {
    BigInt r;
    mpz_neg(r.v_, v_);
    return r;
  }
  BigInt& operator+=(const BigInt& o) {
    mpz_add(v_, v_, o.v_);
    return *this;
  }
  BigInt& operator-=(const BigInt& o) {
    mpz_sub(v_, v_, o.v_);
    return *this;
  }
  BigInt& operator*=(const BigInt& o) {
    mpz_mul(v_, v_, o.v_);
    return *this;
  }
  // Truncating division, matching built-in integer semantics.
  BigInt& operator/=(const BigInt& o);
  BigInt& operator%=(const BigInt& o);

  friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
  friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
  friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }
  friend BigInt operator/(BigInt a, const BigInt& b) { return a /= b; }
  friend BigInt operator%(BigInt a, const BigInt& b) { return a %= b; }

  friend bool operator==(const BigInt& a, const BigInt& b) { return mpz_cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
    int c = mpz_cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend bool operator==(const BigInt& a, long b) { return mpz_cmp_si(a.v_, b) == 0; }
  friend std::strong_ordering operator<=>(const BigInt& a, long b) {
    int c = mpz_cmp_si(a.v_, b);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const BigInt& a);

 private:
  mpz_t v_;
};

BigInt abs(const BigInt& a);
BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);
// Returns g = gcd(a, b) >= 0 together with s, t such that s*a + t*b = g.
BigInt xgcd(const BigInt& a, const BigInt& b, BigInt& s, BigInt& t);
BigInt pow(const BigInt& base, unsigned long exponent);
BigInt floor_div(const BigInt& a, const BigInt& b);
// Remainder in [0, |b|).
BigInt floor_mod(const BigInt& a, const BigInt& b);
// Remainder in (-|b|/2, |b|/2].
BigInt symmetric_mod(const BigInt& a, const BigInt& m);
// a / b where b is known to divide a.
BigInt divexact(const BigInt& a, const BigInt& b);
bool divides(const BigInt& d, const BigInt& a);
BigInt isqrt(const BigInt& a);
bool is_perfect_square(const BigInt& a);
bool is_probable_prime(const BigInt& a);
// Distinct prime divisors of |a|, ascending; trial division then Pollard rho.
std::vector<BigInt> prime_divisors(const BigInt& a);
BigInt binomial(unsigned long n, unsigned long k);

class Rational {
 public:
  Rational() { mpq_init(v_); }
  Rational(int x) : Rational(BigInt(x)) {}
  Rational(long x) : Rational(BigInt(x)) {}
  Rational(const BigInt& n);
  Rational(const BigInt& n, const BigInt& d);

  Rational(const Rational& o) {
    mpq_init(v_);
    mpq_set(v_, o.v_);
  }
  Rational(Rational&& o) noexcept {
    mpq_init(v_);
    mpq_swap(v_, o.v_);
  }
  Rational& operator=(const Rational& o) {
    if (this != &o) mpq_set(v_, o.v_);
    return *this;
  }
  Rational& operator=(Rational&& o) noexcept {
    mpq_swap(v_, o.v_);
    return *this;
  }
  ~Rational() { mpq_clear(v_); }

  BigInt num() const { return BigInt(mpq_numref(v_)); }
  BigInt den() const { return BigInt(mpq_denref(v_)); }
  int sign() const { return mpq_sgn(v_); }
  bool is_zero() const { return mpq_sgn(v_) == 0; }
  bool is_integer() const { return mpz_cmp_ui(mpq_denref(v_), 1) == 0; }
  std::string str() const;

  Rational operator-() const {
    Rational r;
    mpq_neg(r.v_, v_);
    return r;
  }
  Rational& operator+=(const Rational& o) {
    mpq_add(v_, v_, o.v_);
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    mpq_sub(v_, v_, o.v_);
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    mpq_mul(v_, v_, o.v_);
    return *this;
  }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.v_, b.v_) != 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = mpq_cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& a);

 private:
  mpq_t v_;
};

Rational abs(const Rational& a);

}  // namespace weilcat

template <>
struct std::hash<weilcat::BigInt> {
  std::size_t operator()(const weilcat::BigInt& a) const noexcept;
};

namespace Eigen {

template <>
struct NumTraits<weilcat::BigInt> : GenericNumTraits<weilcat::BigInt> {
  using Real = weilcat::BigInt;
  using NonInteger = weilcat::Rational;
  using Literal = weilcat::BigInt;
  using Nested = weilcat::BigInt;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 16
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<weilcat::Rational> : GenericNumTraits<weilcat::Rational> {
  using Real = weilcat::Rational;
  using NonInteger = weilcat::Rational;
  using Literal = weilcat::Rational;
  using Nested = weilcat::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
