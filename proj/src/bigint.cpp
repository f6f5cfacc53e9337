#include "weilcat/bigint.hpp"

#include <algorithm>

#include <ostream>
#include <stdexcept>
#include <vector>

namespace weilcat {

BigInt::BigInt(long long x) {
  if (x >= LONG_MIN && x <= LONG_MAX) {
    mpz_init_set_si(v_, static_cast<long>(x));
  } else {
    mpz_init_set_str(v_, std::to_string(x).c_str(), 10);
  }
}

BigInt::BigInt(std::string_view text, int base) {
  mpz_init(v_);
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  if (s.empty() || mpz_set_str(v_, s.c_str(), base) != 0) {
    mpz_clear(v_);
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
}

long BigInt::to_long() const {
  if (!fits_long()) throw std::overflow_error("integer does not fit in a machine word: " + str());
  return mpz_get_si(v_);
}

std::string BigInt::str(int base) const {
  std::vector<char> buf(mpz_sizeinbase(v_, base) + 2);
  mpz_get_str(buf.data(), base, v_);
  return std::string(buf.data());
}

BigInt& BigInt::operator/=(const BigInt& o) {
  if (o.is_zero()) throw std::domain_error("integer division by zero");
  mpz_tdiv_q(v_, v_, o.v_);
  return *this;
}

BigInt& BigInt::operator%=(const BigInt& o) {
  if (o.is_zero()) throw std::domain_error("integer division by zero");
  mpz_tdiv_r(v_, v_, o.v_);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const BigInt& a) { return os << a.str(); }

BigInt abs(const BigInt& a) {
  BigInt r;
  mpz_abs(r.get(), a.get());
  return r;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get(), a.get(), b.get());
  return r;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get(), a.get(), b.get());
  return r;
}

BigInt xgcd(const BigInt& a, const BigInt& b, BigInt& s, BigInt& t) {
  BigInt g;
  mpz_gcdext(g.get(), s.get(), t.get(), a.get(), b.get());
  return g;
}

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get(), base.get(), exponent);
  return r;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw std::domain_error("integer division by zero");
  BigInt r;
  mpz_fdiv_q(r.get(), a.get(), b.get());
  return r;
}

BigInt floor_mod(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw std::domain_error("integer division by zero");
  BigInt r;
  mpz_mod(r.get(), a.get(), b.get());
  return r;
}

BigInt symmetric_mod(const BigInt& a, const BigInt& m) {
  BigInt r = floor_mod(a, m);
  BigInt twice = r + r;
  if (twice > abs(m)) r -= abs(m);
  return r;
}

BigInt divexact(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_divexact(r.get(), a.get(), b.get());
  return r;
}

bool divides(const BigInt& d, const BigInt& a) {
  if (d.is_zero()) return a.is_zero();
  return mpz_divisible_p(a.get(), d.get()) != 0;
}

BigInt isqrt(const BigInt& a) {
  if (a.sign() < 0) throw std::domain_error("square root of a negative integer");
  BigInt r;
  mpz_sqrt(r.get(), a.get());
  return r;
}

bool is_perfect_square(const BigInt& a) { return a.sign() >= 0 && mpz_perfect_square_p(a.get()) != 0; }

bool is_probable_prime(const BigInt& a) { return a > 1L && mpz_probab_prime_p(a.get(), 30) > 0; }

namespace {

// A nontrivial divisor of a composite n, by Pollard rho with Floyd cycle detection.
BigInt rho_divisor(const BigInt& n) {
  for (long c = 1;; ++c) {
    BigInt x(2), y(2), d(1);
    auto step = [&](const BigInt& v) { return floor_mod(v * v + BigInt(c), n); };
    while (d.is_one()) {
      x = step(x);
      y = step(step(y));
      d = gcd(abs(x - y), n);
    }
    if (d != n) return d;
  }
}

void split_into(const BigInt& n, std::vector<BigInt>& out) {
  if (n.is_one()) return;
  if (is_probable_prime(n)) {
    out.push_back(n);
    return;
  }
  const BigInt d = rho_divisor(n);
  split_into(d, out);
  split_into(divexact(n, d), out);
}

}  // namespace

std::vector<BigInt> prime_divisors(const BigInt& a) {
  std::vector<BigInt> out;
  BigInt n = abs(a);
  if (n.is_zero()) throw std::domain_error("prime divisors of zero");
  for (long p = 2; p < 65536 && !n.is_one(); ++p) {
    if (!divides(BigInt(p), n)) continue;
    out.emplace_back(p);
    while (divides(BigInt(p), n)) n = divexact(n, BigInt(p));
  }
  split_into(n, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get(), n, k);
  return r;
}

Rational::Rational(const BigInt& n) {
  mpq_init(v_);
  mpq_set_z(v_, n.get());
}

Rational::Rational(const BigInt& n, const BigInt& d) {
  if (d.is_zero()) throw std::domain_error("rational with zero denominator");
  mpq_init(v_);
  mpz_set(mpq_numref(v_), n.get());
  mpz_set(mpq_denref(v_), d.get());
  mpq_canonicalize(v_);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  mpq_div(v_, v_, o.v_);
  return *this;
}

std::string Rational::str() const {
  if (is_integer()) return num().str();
  return num().str() + "/" + den().str();
}

std::ostream& operator<<(std::ostream& os, const Rational& a) { return os << a.str(); }

Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

}  // namespace weilcat

std::size_t std::hash<weilcat::BigInt>::operator()(const weilcat::BigInt& a) const noexcept {
  return std::hash<std::string>{}(a.str(16));
}
