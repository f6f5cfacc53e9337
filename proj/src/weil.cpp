#include "weilcat/weil.hpp"

#include "weilcat/error.hpp"
#include "weilcat/factor.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace weilcat {

PrimePower PrimePower::from(const BigInt& q) {
  if (q < 2L) throw ValidationError("q = " + q.str() + " is not a prime power");
  for (unsigned long e = q.bit_length(); e >= 1; --e) {
    BigInt r;
    if (mpz_root(const_cast<mpz_ptr>(r.get()), q.get(), e) == 0) continue;
    if (is_probable_prime(r)) return PrimePower{r, static_cast<unsigned>(e), q};
  }
  throw ValidationError("q = " + q.str() + " is not a prime power");
}

BigInt PrimePower::root() const {
  if (!is_square()) throw ValidationError("q = " + q.str() + " is not a square");
  return pow(p, e / 2);
}

int WeilClass::rational_sign() const {
  if (!is_rational) return 0;
  // x - s has constant term -s
  return minpoly.coeff(0).sign() < 0 ? 1 : -1;
}

WeilSet::WeilSet(PrimePower q, std::vector<WeilClass> classes) : q_(std::move(q)), classes_(std::move(classes)) {
  for (const auto& c : classes_)
    if (!(c.q == q_)) throw ValidationError("Weil classes over different q in one set");
  std::sort(classes_.begin(), classes_.end(),
            [](const WeilClass& a, const WeilClass& b) { return a.minpoly < b.minpoly; });
  for (std::size_t i = 1; i < classes_.size(); ++i)
    if (classes_[i].minpoly == classes_[i - 1].minpoly)
      throw ValidationError("duplicate Weil class " + classes_[i].minpoly.str());
}

bool WeilSet::contains(const IntPoly& minpoly) const {
  return std::any_of(classes_.begin(), classes_.end(), [&](const WeilClass& c) { return c.minpoly == minpoly; });
}

int WeilSet::rational_count() const {
  return static_cast<int>(std::count_if(classes_.begin(), classes_.end(), [](const WeilClass& c) { return c.is_rational; }));
}

int WeilSet::total_degree() const {
  int n = 0;
  for (const auto& c : classes_) n += c.two_d;
  return n;
}

WeilSet WeilSet::without_rational() const {
  std::vector<WeilClass> v;
  for (const auto& c : classes_)
    if (!c.is_rational) v.push_back(c);
  return WeilSet(q_, std::move(v));
}

bool WeilSet::is_subset_of(const WeilSet& other) const {
  if (!(q_ == other.q_)) return false;
  return std::all_of(classes_.begin(), classes_.end(), [&](const WeilClass& c) { return other.contains(c.minpoly); });
}

bool check_functional_equation(const IntPoly& p, const PrimePower& q) {
  if (p.degree() < 0 || p.degree() % 2 != 0)
    throw ValidationError("functional equation needs even degree, got " + std::to_string(p.degree()));
  const int d = p.degree() / 2;
  BigInt qr(1);
  for (int r = 0; r <= d; ++r) {
    if (p.coeff(d - r) != qr * p.coeff(d + r)) return false;
    qr *= q.q;
  }
  return true;
}

IntPoly real_counterpart(const IntPoly& p, const PrimePower& q) {
  if (!p.is_monic() || !check_functional_equation(p, q))
    throw ValidationError(p.str() + " does not satisfy the functional equation for q = " + q.q.str());
  const int d = p.degree() / 2;
  // x^r + (q/x)^r = T_r(x + q/x), T_0 = 2, T_1 = y, T_{r+1} = y T_r - q T_{r-1}
  const IntPoly y = IntPoly::x();
  const IntPoly qc = IntPoly::constant(q.q);
  IntPoly prev = IntPoly::constant(BigInt(2)), cur = y;
  IntPoly out = IntPoly::constant(p.coeff(d));
  for (int r = 1; r <= d; ++r) {
    out += p.coeff(d + r) * cur;
    IntPoly next = y * cur - qc * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  // x^d Q(x + q/x) = sum_k b_k (x^2 + q)^k x^{d-k}
  IntPoly back;
  const IntPoly x2q = IntPoly{0, 0, 1} + qc;
  IntPoly power = IntPoly::constant(BigInt(1));
  for (int k = 0; k <= d; ++k) {
    back += out.coeff(k) * power * IntPoly::monomial(BigInt(1), d - k);
    power = power * x2q;
  }
  if (back != p) throw std::logic_error("real counterpart failed re-expansion for " + p.str());
  return out;
}

std::optional<IntPoly> mirror_polynomial(const IntPoly& p, const PrimePower& q) {
  const int n = p.degree();
  if (n < 0 || p.coeff(0).is_zero()) return std::nullopt;
  std::vector<BigInt> c(static_cast<std::size_t>(n) + 1);
  BigInt qj(1);
  const BigInt a0 = p.coeff(0);
  for (int j = 0; j <= n; ++j) {
    // coefficient of x^{n-j} is a_j q^j
    BigInt v = p.coeff(j) * qj;
    if (!divides(a0, v)) return std::nullopt;
    c[static_cast<std::size_t>(n - j)] = divexact(v, a0);
    qj *= q.q;
  }
  return IntPoly(std::move(c));
}

namespace {

// Strips x -+ sqrt(q) (q square) or x^2 - q (otherwise) as often as they divide.
IntPoly strip_real_factors(IntPoly p, const PrimePower& q) {
  std::vector<IntPoly> real;
  if (q.is_square()) {
    const BigInt s = q.root();
    real.push_back(IntPoly::x() - IntPoly::constant(s));
    real.push_back(IntPoly::x() + IntPoly::constant(s));
  } else {
    real.push_back(IntPoly::monomial(BigInt(1), 2) - IntPoly::constant(q.q));
  }
  for (const auto& f : real)
    while (p.degree() >= f.degree()) {
      auto quot = divide_exact(p, f);
      if (!quot) break;
      p = std::move(*quot);
    }
  return p;
}

}  // namespace

bool is_weil_poly(const IntPoly& p, const PrimePower& q) {
  if (p.degree() < 1 || !p.is_monic()) return false;
  IntPoly rest = strip_real_factors(p, q);
  if (rest.degree() == 0) return true;
  if (rest.degree() % 2 != 0) return false;
  if (!check_functional_equation(rest, q)) return false;
  IntPoly qs = squarefree_part(real_counterpart(rest, q));
  if (count_all_real_roots(qs) != qs.degree()) return false;
  // all roots y satisfy y^2 <= 4q: pass to the polynomial whose roots are the y^2
  std::vector<BigInt> even, odd;
  for (int i = 0; i <= qs.degree(); ++i) (i % 2 == 0 ? even : odd).push_back(qs.coeff(i));
  const IntPoly a(even), b(odd);
  IntPoly r = a * a - IntPoly::x() * b * b;
  r = squarefree_part(r);
  const IntPoly edge = IntPoly::x() - IntPoly::constant(BigInt(4) * q.q);
  if (auto quot = divide_exact(r, edge)) r = std::move(*quot);
  return sturm_count_above(r, Rational(BigInt(4) * q.q)) == 0;
}

WeilClass classify(const IntPoly& p, const PrimePower& q) {
  if (!p.is_monic()) throw ValidationError(p.str() + " is not monic");
  if (!is_weil_poly(p, q)) throw ValidationError(p.str() + " is not a Weil " + q.q.str() + "-polynomial");
  if (!is_irreducible(p)) throw ValidationError(p.str() + " is reducible");
  WeilClass c;
  c.q = q;
  c.minpoly = p;
  c.two_d = p.degree();
  c.half_degree_convention = p.degree() == 1;
  c.is_rational = p.degree() == 1;
  c.is_real = c.is_rational || (p.degree() == 2 && p.coeff(1).is_zero() && p.coeff(0) == -q.q);
  c.is_ordinary = !c.is_real && !divides(q.p, p.coeff(p.degree() / 2));
  return c;
}

bool is_ordinary(const WeilClass& c) {
  if (c.is_real) throw ValidationError("ordinariness is defined here for non-real classes only");
  return !divides(c.q.p, c.minpoly.coeff(c.two_d / 2));
}

bool is_ordinary(const WeilSet& w) {
  // h_w(0,0) is the product of the a_d up to multiples of q
  BigInt h(1);
  for (const auto& c : w.classes()) {
    if (c.is_real) throw ValidationError("ordinariness is defined here for non-real classes only");
    h *= c.minpoly.coeff(c.two_d / 2);
  }
  return !divides(w.q().p, h);
}

int enumeration_degree_cap() {
  if (const char* env = std::getenv("WEILCAT_DEGREE_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 1000) return static_cast<int>(v);
  }
  return kDefaultEnumerationDegreeCap;
}

namespace {

// floor(C(2d, d+r) q^{(d-r)/2})
BigInt free_bound(const PrimePower& q, int d, int r) {
  const BigInt c = binomial(static_cast<unsigned long>(2 * d), static_cast<unsigned long>(d + r));
  return isqrt(c * c * pow(q.q, static_cast<unsigned long>(d - r)));
}

std::vector<IntPoly> enumerate_with_lead(const PrimePower& q, int d, const BigInt& lead,
                                         const std::vector<BigInt>& bounds) {
  std::vector<IntPoly> out;
  std::vector<BigInt> c(static_cast<std::size_t>(2 * d) + 1, BigInt(0));
  c[static_cast<std::size_t>(2 * d)] = 1;
  c[0] = pow(q.q, static_cast<unsigned long>(d));
  c[static_cast<std::size_t>(2 * d - 1)] = lead;
  c[1] = lead * pow(q.q, static_cast<unsigned long>(d - 1));
  // odometer over a_{2d-2}, ..., a_d, last one fastest
  std::vector<BigInt> free(static_cast<std::size_t>(d - 1));
  for (int r = d - 2; r >= 0; --r) free[static_cast<std::size_t>(d - 2 - r)] = -bounds[static_cast<std::size_t>(r)];
  auto place = [&] {
    for (int r = d - 2; r >= 0; --r) {
      const BigInt& v = free[static_cast<std::size_t>(d - 2 - r)];
      c[static_cast<std::size_t>(d + r)] = v;
      c[static_cast<std::size_t>(d - r)] = v * pow(q.q, static_cast<unsigned long>(r));
    }
  };
  // Candidates here have all real roots of even multiplicity when Weil, so
  // P(t) >= 0 on the reals; a cheap exact filter before the full test.
  std::vector<BigInt> probes;
  const long reach = isqrt(q.q).to_long() + 2;
  for (long t = 1; t <= reach; ++t) {
    probes.emplace_back(t);
    probes.emplace_back(-t);
  }
  for (;;) {
    place();
    IntPoly p(c);
    bool maybe = true;
    for (const auto& t : probes)
      if (p.eval(t).sign() < 0) {
        maybe = false;
        break;
      }
    if (maybe && is_weil_poly(p, q)) out.push_back(std::move(p));
    int k = d - 2;
    for (; k >= 0; --k) {
      auto& v = free[static_cast<std::size_t>(k)];
      const BigInt& b = bounds[static_cast<std::size_t>(d - 2 - k)];
      if (v < b) {
        v += BigInt(1);
        break;
      }
      v = -b;
    }
    if (k < 0) break;
  }
  return out;
}

}  // namespace

BigInt leading_free_bound(const PrimePower& q, int two_d) { return free_bound(q, two_d / 2, two_d / 2 - 1); }

std::vector<IntPoly> enumerate_weil_polys(const PrimePower& q, int two_d, const EnumerationOptions& opts) {
  if (two_d < 2 || two_d % 2 != 0) throw ValidationError("enumeration degree must be even and positive");
  const int cap = enumeration_degree_cap();
  if (two_d > cap)
    throw CapExceeded("degree " + std::to_string(two_d) + " exceeds enumeration cap " + std::to_string(cap));
  const int d = two_d / 2;
  std::vector<BigInt> bounds;  // bounds[r] for a_{d+r}
  for (int r = 0; r < d; ++r) bounds.push_back(free_bound(q, d, r));
  BigInt lo = -bounds.back(), hi = bounds.back();
  if (opts.lead_lo && *opts.lead_lo > lo) lo = *opts.lead_lo;
  if (opts.lead_hi && *opts.lead_hi < hi) hi = *opts.lead_hi;
  if (lo > hi) return {};

  if (d == 1) {
    // a_1 is the only free coefficient
    std::vector<IntPoly> out;
    for (BigInt a = lo; a <= hi; a += BigInt(1)) {
      IntPoly p(std::vector<BigInt>{q.q, a, BigInt(1)});
      if (is_weil_poly(p, q)) out.push_back(std::move(p));
    }
    return out;
  }

  std::vector<BigInt> leads;
  for (BigInt a = lo; a <= hi; a += BigInt(1)) leads.push_back(a);
  std::vector<std::vector<IntPoly>> parts(leads.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < leads.size();) parts[i] = enumerate_with_lead(q, d, leads[i], bounds);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(leads.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<IntPoly> out;
  for (auto& part : parts)
    for (auto& p : part) out.push_back(std::move(p));
  return out;
}

}  // namespace weilcat
