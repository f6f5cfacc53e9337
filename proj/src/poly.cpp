#include "weilcat/poly.hpp"

#include <algorithm>
#include <sstream>

namespace weilcat {

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  for (long c : coeffs) c_.emplace_back(c);
  trim();
}

IntPoly IntPoly::constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }

IntPoly IntPoly::monomial(const BigInt& c, int degree) {
  std::vector<BigInt> v(static_cast<std::size_t>(degree) + 1, BigInt(0));
  v.back() = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const BigInt& IntPoly::leading() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
  return c_.back();
}

BigInt IntPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return BigInt(0);
  return c_[static_cast<std::size_t>(i)];
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), BigInt(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), BigInt(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<BigInt> r(a.c_.size() + b.c_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return IntPoly(std::move(r));
}

IntPoly& IntPoly::operator*=(const IntPoly& o) { return *this = *this * o; }

IntPoly& IntPoly::operator*=(const BigInt& s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

bool operator<(const IntPoly& a, const IntPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    auto ai = a.coeff(i), bi = b.coeff(i);
    if (ai != bi) return ai < bi;
  }
  return false;
}

BigInt IntPoly::eval(const BigInt& x) const {
  BigInt r(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

Rational IntPoly::eval(const Rational& x) const {
  Rational r(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + Rational(*it);
  return r;
}

int IntPoly::sign_at(const Rational& x) const {
  // den^n * P(num/den) has the sign of P(x) since den > 0
  const BigInt num = x.num(), den = x.den();
  BigInt acc(0), den_pow(1);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * num + *it * den_pow;
    den_pow *= den;
  }
  return acc.sign();
}

IntPoly IntPoly::derivative() const {
  if (c_.size() <= 1) return IntPoly();
  std::vector<BigInt> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * BigInt(static_cast<long>(i));
  return IntPoly(std::move(r));
}

BigInt IntPoly::content() const {
  BigInt g(0);
  for (const auto& c : c_) g = gcd(g, c);
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return IntPoly();
  BigInt g = content();
  if (leading().sign() < 0) g = -g;
  IntPoly r = *this;
  for (auto& c : r.c_) c = divexact(c, g);
  return r;
}

IntPoly IntPoly::pow(unsigned n) const {
  IntPoly r = constant(BigInt(1)), base = *this;
  while (n) {
    if (n & 1U) r = r * base;
    n >>= 1U;
    if (n) base = base * base;
  }
  return r;
}

IntPoly IntPoly::scale_argument(const BigInt& s) const {
  IntPoly r = *this;
  BigInt f(1);
  for (auto& c : r.c_) {
    c *= f;
    f *= s;
  }
  r.trim();
  return r;
}

std::string IntPoly::str(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = c_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    BigInt mag = abs(c);
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    if (i == 0 || !mag.is_one()) os << mag;
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

PolyDivRem pseudo_divrem(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  PolyDivRem out;
  if (a.degree() < b.degree()) {
    out.rem = a;
    return out;
  }
  const int db = b.degree();
  const BigInt& lc = b.leading();
  std::vector<BigInt> rem = a.coeffs();
  std::vector<BigInt> quot(static_cast<std::size_t>(a.degree() - db + 1), BigInt(0));
  for (int k = a.degree() - db; k >= 0; --k) {
    // multiply everything so far by lc, then eliminate the top term
    for (auto& q : quot) q *= lc;
    BigInt top = rem[static_cast<std::size_t>(k + db)];
    for (auto& r : rem) r *= lc;
    quot[static_cast<std::size_t>(k)] += top;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= top * b.coeff(j);
  }
  out.exponent = static_cast<unsigned long>(a.degree() - db + 1);
  out.quot = IntPoly(std::move(quot));
  out.rem = IntPoly(std::move(rem));
  return out;
}

std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.is_zero()) return IntPoly();
  if (a.degree() < b.degree()) return std::nullopt;
  const int db = b.degree();
  const BigInt& lc = b.leading();
  std::vector<BigInt> rem = a.coeffs();
  std::vector<BigInt> quot(static_cast<std::size_t>(a.degree() - db + 1), BigInt(0));
  for (int k = a.degree() - db; k >= 0; --k) {
    const BigInt& top = rem[static_cast<std::size_t>(k + db)];
    if (!divides(lc, top)) return std::nullopt;
    BigInt q = divexact(top, lc);
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= q * b.coeff(j);
    quot[static_cast<std::size_t>(k)] = std::move(q);
  }
  for (const auto& r : rem)
    if (!r.is_zero()) return std::nullopt;
  return IntPoly(std::move(quot));
}

bool poly_divides(const IntPoly& d, const IntPoly& a) { return divide_exact(a, d).has_value(); }

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd of two zero polynomials");
  IntPoly u = a.primitive_part(), v = b.primitive_part();
  if (u.degree() < v.degree()) std::swap(u, v);
  while (!v.is_zero()) {
    IntPoly r = pseudo_divrem(u, v).rem;
    u = std::move(v);
    v = r.primitive_part();
  }
  return u.primitive_part();
}

IntPoly squarefree_part(const IntPoly& p) {
  if (p.degree() <= 0) return p.primitive_part();
  IntPoly g = poly_gcd(p, p.derivative());
  return divide_exact(p.primitive_part(), g).value().primitive_part();
}

bool is_squarefree(const IntPoly& p) {
  if (p.degree() <= 0) return true;
  return poly_gcd(p, p.derivative()).degree() == 0;
}

std::vector<IntPoly> sturm_chain(const IntPoly& p) {
  std::vector<IntPoly> chain;
  if (p.is_zero()) return chain;
  chain.push_back(p);
  IntPoly d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d);
  for (;;) {
    const IntPoly& a = chain[chain.size() - 2];
    const IntPoly& b = chain.back();
    PolyDivRem dr = pseudo_divrem(a, b);
    if (dr.rem.is_zero()) break;
    IntPoly r = dr.rem;
    // keep the sign of the true remainder: lc(b)^k may be negative
    if (b.leading().sign() < 0 && (dr.exponent % 2 == 1)) r = -r;
    BigInt c = r.content();
    IntPoly next;
    {
      std::vector<BigInt> v = r.coeffs();
      for (auto& x : v) x = -divexact(x, c);
      next = IntPoly(std::move(v));
    }
    chain.push_back(std::move(next));
  }
  return chain;
}

namespace {

int variations(const std::vector<int>& signs) {
  int count = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int variations_at(const std::vector<IntPoly>& chain, const Rational& x) {
  std::vector<int> s;
  s.reserve(chain.size());
  for (const auto& q : chain) s.push_back(q.sign_at(x));
  return variations(s);
}

int variations_at_infinity(const std::vector<IntPoly>& chain, bool positive) {
  std::vector<int> s;
  for (const auto& q : chain) {
    int sg = q.leading().sign();
    if (!positive && q.degree() % 2 == 1) sg = -sg;
    s.push_back(sg);
  }
  return variations(s);
}

}  // namespace

int sturm_count(const IntPoly& p, const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw std::invalid_argument("sturm_count needs lo < hi");
  if (p.sign_at(lo) == 0) throw EndpointIsRoot("lower endpoint " + lo.str() + " is a root");
  if (p.sign_at(hi) == 0) throw EndpointIsRoot("upper endpoint " + hi.str() + " is a root");
  auto chain = sturm_chain(p);
  return variations_at(chain, lo) - variations_at(chain, hi);
}

int sturm_count_above(const IntPoly& p, const Rational& lo) {
  if (p.sign_at(lo) == 0) throw EndpointIsRoot("lower endpoint " + lo.str() + " is a root");
  auto chain = sturm_chain(p);
  return variations_at(chain, lo) - variations_at_infinity(chain, true);
}

int count_all_real_roots(const IntPoly& p) {
  if (p.degree() <= 0) return 0;
  auto chain = sturm_chain(p);
  return variations_at_infinity(chain, false) - variations_at_infinity(chain, true);
}

IntMatrix companion_matrix(const IntPoly& monic) {
  if (!monic.is_monic()) throw std::invalid_argument("companion matrix needs a monic polynomial");
  const Index n = monic.degree();
  IntMatrix c = zero_matrix(n, n);
  for (Index i = 1; i < n; ++i) c(i, i - 1) = 1;
  for (Index i = 0; i < n; ++i) c(i, n - 1) = -monic.coeff(static_cast<int>(i));
  return c;
}

IntMatrix eval_at_matrix(const IntPoly& p, const IntMatrix& m) {
  const Index n = m.rows();
  IntMatrix r = zero_matrix(n, n);
  for (int i = p.degree(); i >= 0; --i) {
    r = (r * m).eval();
    for (Index k = 0; k < n; ++k) r(k, k) += p.coeff(i);
  }
  return r;
}

IntPoly characteristic_polynomial(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("characteristic polynomial of a non-square matrix");
  const Index n = a.rows();
  std::vector<BigInt> c(static_cast<std::size_t>(n) + 1, BigInt(0));
  c[static_cast<std::size_t>(n)] = 1;
  IntMatrix m = zero_matrix(n, n);
  for (Index k = 1; k <= n; ++k) {
    m = (a * m).eval();
    for (Index i = 0; i < n; ++i) m(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    IntMatrix am = a * m;
    BigInt tr(0);
    for (Index i = 0; i < n; ++i) tr += am(i, i);
    c[static_cast<std::size_t>(n - k)] = -divexact(tr, BigInt(static_cast<long>(k)));
  }
  return IntPoly(std::move(c));
}

}  // namespace weilcat
