#include "weilcat/factor.hpp"

#include "weilcat/error.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

namespace weilcat {

namespace {

// Polynomials over Z/p, low-degree-first, no trailing zeros.
using ModPoly = std::vector<std::int64_t>;

struct ModArith {
  std::int64_t p;

  void trim(ModPoly& a) const {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  std::int64_t norm(std::int64_t x) const {
    x %= p;
    return x < 0 ? x + p : x;
  }
  std::int64_t inv(std::int64_t a) const {
    std::int64_t r = 1, b = norm(a), e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  }
  ModPoly from(const IntPoly& f) const {
    ModPoly r;
    for (const auto& c : f.coeffs()) r.push_back(floor_mod(c, BigInt(p)).to_long());
    trim(r);
    return r;
  }
  ModPoly sub(const ModPoly& a, const ModPoly& b) const {
    ModPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = norm(r[i] - b[i]);
    trim(r);
    return r;
  }
  ModPoly mul(const ModPoly& a, const ModPoly& b) const {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    trim(r);
    return r;
  }
  // (quotient, remainder) of a by nonzero b.
  std::pair<ModPoly, ModPoly> divrem(ModPoly a, const ModPoly& b) const {
    if (a.size() < b.size()) return {ModPoly{}, a};
    std::int64_t li = inv(b.back());
    ModPoly q(a.size() - b.size() + 1, 0);
    for (std::size_t k = q.size(); k-- > 0;) {
      std::int64_t c = a[k + b.size() - 1] * li % p;
      q[k] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) a[k + j] = norm(a[k + j] - c * b[j]);
    }
    trim(a);
    trim(q);
    return {q, a};
  }
  ModPoly rem(const ModPoly& a, const ModPoly& b) const { return divrem(a, b).second; }
  ModPoly monic(ModPoly a) const {
    if (a.empty()) return a;
    std::int64_t li = inv(a.back());
    for (auto& c : a) c = c * li % p;
    return a;
  }
  ModPoly gcd(ModPoly a, ModPoly b) const {
    while (!b.empty()) {
      ModPoly r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  // g = gcd(a, b) monic, with s a + t b = g.
  ModPoly xgcd(ModPoly a, ModPoly b, ModPoly& s, ModPoly& t) const {
    ModPoly s0{1}, s1{}, t0{}, t1{1};
    while (!b.empty()) {
      auto [q, r] = divrem(a, b);
      ModPoly s2 = sub(s0, mul(q, s1)), t2 = sub(t0, mul(q, t1));
      a = std::move(b);
      b = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    std::int64_t li = inv(a.back());
    for (auto& c : s0) c = c * li % p;
    for (auto& c : t0) c = c * li % p;
    s = s0;
    t = t0;
    return monic(a);
  }
  ModPoly derivative(const ModPoly& a) const {
    ModPoly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<std::int64_t>(i % p) % p);
    trim(r);
    return r;
  }
  ModPoly powmod(ModPoly base, const BigInt& e, const ModPoly& m) const {
    ModPoly r{1};
    base = rem(base, m);
    for (std::size_t bit = e.bit_length(); bit-- > 0;) {
      r = rem(mul(r, r), m);
      if (mpz_tstbit(e.get(), bit)) r = rem(mul(r, base), m);
    }
    return r;
  }
};

void equal_degree_split(const ModArith& ar, const ModPoly& g, int d, std::mt19937_64& rng,
                        std::vector<ModPoly>& out) {
  const int n = static_cast<int>(g.size()) - 1;
  if (n == d) {
    out.push_back(g);
    return;
  }
  BigInt e = (pow(BigInt(static_cast<long>(ar.p)), static_cast<unsigned long>(d)) - BigInt(1)) / BigInt(2);
  std::uniform_int_distribution<std::int64_t> dist(0, ar.p - 1);
  for (;;) {
    ModPoly a(static_cast<std::size_t>(n), 0);
    for (auto& c : a) c = dist(rng);
    ar.trim(a);
    if (a.size() <= 1) continue;
    ModPoly b = ar.sub(ar.powmod(a, e, g), ModPoly{1});
    ModPoly u = ar.gcd(g, b);
    int du = static_cast<int>(u.size()) - 1;
    if (du > 0 && du < n) {
      equal_degree_split(ar, u, d, rng, out);
      equal_degree_split(ar, ar.monic(ar.divrem(g, u).first), d, rng, out);
      return;
    }
  }
}

// Monic irreducible factors of a squarefree monic polynomial over Z/p, p odd.
std::vector<ModPoly> factor_mod_p(const ModArith& ar, ModPoly f) {
  std::vector<ModPoly> out;
  std::mt19937_64 rng(0x5eed + static_cast<std::uint64_t>(ar.p));
  ModPoly h{0, 1};
  const ModPoly x{0, 1};
  BigInt p(static_cast<long>(ar.p));
  for (int d = 1; 2 * d <= static_cast<int>(f.size()) - 1; ++d) {
    h = ar.powmod(h, p, f);
    ModPoly g = ar.gcd(f, ar.sub(h, x));
    if (g.size() > 1) {
      equal_degree_split(ar, g, d, rng, out);
      f = ar.monic(ar.divrem(f, g).first);
      h = ar.rem(h, f);
    }
  }
  if (f.size() > 1) out.push_back(f);
  return out;
}

IntPoly to_int_poly(const ModPoly& a) {
  std::vector<BigInt> c;
  for (auto v : a) c.emplace_back(static_cast<long>(v));
  return IntPoly(std::move(c));
}

IntPoly reduce_coeffs(const IntPoly& f, const BigInt& m) {
  std::vector<BigInt> c;
  for (const auto& v : f.coeffs()) c.push_back(symmetric_mod(v, m));
  return IntPoly(std::move(c));
}

IntPoly scalar_mod(const IntPoly& f, const BigInt& s, const BigInt& m) { return reduce_coeffs(f * s, m); }

// One Hensel pair lift: f = g h mod p with g monic and lc(h) = lc(f); lifted to mod p^k.
void hensel_pair(const IntPoly& f, IntPoly& g, IntPoly& h, const ModArith& ar, int k) {
  ModPoly s, t;
  ar.xgcd(ar.from(g), ar.from(h), s, t);
  const BigInt p(static_cast<long>(ar.p));
  BigInt pj = p;
  for (int j = 1; j < k; ++j) {
    IntPoly err = f - g * h;
    std::vector<BigInt> ec;
    for (const auto& c : err.coeffs()) ec.push_back(divexact(c, pj));
    ModPoly e = ar.from(IntPoly(std::move(ec)));
    ModPoly te = ar.mul(t, e);
    auto [q, dg] = ar.divrem(te, ar.from(g));
    ModPoly dh = ar.sub(ar.mul(s, e), ModPoly{});
    {
      ModPoly qh = ar.mul(q, ar.from(h));
      ModPoly sum(std::max(dh.size(), qh.size()), 0);
      for (std::size_t i = 0; i < dh.size(); ++i) sum[i] = dh[i];
      for (std::size_t i = 0; i < qh.size(); ++i) sum[i] = (sum[i] + qh[i]) % ar.p;
      ar.trim(sum);
      dh = std::move(sum);
    }
    g += to_int_poly(dg) * pj;
    h += to_int_poly(dh) * pj;
    pj *= p;
    g = reduce_coeffs(g, pj);
    h = reduce_coeffs(h, pj);
    // keep the exact leading coefficients: g monic, lc(h) = lc(f)
    g = g + IntPoly::monomial(BigInt(1) - g.leading(), g.degree());
    h = h + IntPoly::monomial(f.leading() - h.leading(), h.degree());
  }
}

// Monic lifts G_i with f = lc(f) prod G_i mod p^k.
std::vector<IntPoly> hensel_lift(const IntPoly& f, const std::vector<ModPoly>& factors, const ModArith& ar,
                                 int k, const BigInt& pk) {
  std::vector<IntPoly> out;
  IntPoly rest = f;
  const BigInt lc = f.leading();
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    IntPoly g = to_int_poly(factors[i]);
    ModPoly hm = ar.from(IntPoly::constant(lc));
    for (std::size_t j = i + 1; j < factors.size(); ++j) hm = ar.mul(hm, factors[j]);
    IntPoly h = to_int_poly(hm);
    h = h + IntPoly::monomial(lc - h.leading(), h.degree());
    hensel_pair(rest, g, h, ar, k);
    out.push_back(g);
    rest = h;
  }
  // the last factor: rest / lc mod p^k
  BigInt inv;
  mpz_invert(inv.get(), lc.get(), pk.get());
  out.push_back(scalar_mod(rest, inv, pk));
  return out;
}

std::vector<IntPoly> zassenhaus(const IntPoly& f) {
  if (f.degree() <= 1) return {f};
  // choose a good prime with few modular factors
  std::vector<ModPoly> best;
  std::int64_t best_p = 0;
  int tried = 0;
  for (std::int64_t p = 3; tried < 6 && p < 100000; p += 2) {
    if (!is_probable_prime(BigInt(static_cast<long>(p)))) continue;
    if (divides(BigInt(static_cast<long>(p)), f.leading())) continue;
    ModArith ar{p};
    ModPoly fm = ar.from(f);
    if (ar.gcd(fm, ar.derivative(fm)).size() != 1) continue;
    auto facs = factor_mod_p(ar, ar.monic(fm));
    ++tried;
    if (best_p == 0 || facs.size() < best.size()) {
      best = std::move(facs);
      best_p = p;
    }
    if (best.size() == 1) break;
  }
  if (best.size() <= 1) return {f};
  ModArith ar{best_p};
  const int n = f.degree();
  BigInt maxc(0);
  for (const auto& c : f.coeffs()) maxc = std::max(maxc, abs(c));
  BigInt bound = pow(BigInt(2), static_cast<unsigned long>(n)) * BigInt(n + 1) * maxc * abs(f.leading());
  const BigInt p(static_cast<long>(best_p));
  BigInt pk = p;
  int k = 1;
  while (pk <= bound * BigInt(2)) {
    pk *= p;
    ++k;
  }
  std::vector<IntPoly> lifted = hensel_lift(f, best, ar, k, pk);

  std::vector<IntPoly> found;
  IntPoly rest = f;
  std::vector<std::size_t> live(lifted.size());
  for (std::size_t i = 0; i < live.size(); ++i) live[i] = i;
  std::size_t s = 1;
  while (2 * s <= live.size()) {
    bool hit = false;
    std::vector<std::size_t> pick(s);
    for (std::size_t i = 0; i < s; ++i) pick[i] = i;
    for (;;) {
      IntPoly cand = IntPoly::constant(rest.leading());
      for (auto i : pick) cand = reduce_coeffs(cand * lifted[live[i]], pk);
      IntPoly g = cand.primitive_part();
      if (auto q = divide_exact(rest, g)) {
        found.push_back(g);
        rest = *q;
        std::vector<std::size_t> next;
        for (std::size_t i = 0; i < live.size(); ++i)
          if (std::find(pick.begin(), pick.end(), i) == pick.end()) next.push_back(live[i]);
        live = std::move(next);
        hit = true;
        break;
      }
      // next combination
      std::size_t i = s;
      while (i > 0 && pick[i - 1] == live.size() - s + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < s; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (!hit) ++s;
  }
  found.push_back(rest.primitive_part());
  return found;
}

}  // namespace

std::vector<PolyFactor> factor_int_poly(const IntPoly& p, int degree_cap) {
  if (p.is_zero()) throw std::domain_error("cannot factor the zero polynomial");
  std::vector<PolyFactor> out;
  if (p.degree() == 0) return out;
  IntPoly sf = squarefree_part(p);
  if (sf.degree() > degree_cap)
    throw CapExceeded("squarefree part of degree " + std::to_string(sf.degree()) + " exceeds factoring cap " +
                      std::to_string(degree_cap));
  std::vector<IntPoly> irreducibles;
  // pull out x separately so the modular step never sees a zero constant term
  if (sf.coeff(0).is_zero()) {
    irreducibles.push_back(IntPoly::x());
    sf = divide_exact(sf, IntPoly::x()).value();
  }
  if (sf.degree() >= 1) {
    for (auto& g : zassenhaus(sf)) irreducibles.push_back(g.primitive_part());
  }
  IntPoly rest = p.primitive_part();
  for (auto& g : irreducibles) {
    int m = 0;
    while (auto q = divide_exact(rest, g)) {
      rest = *q;
      ++m;
    }
    out.push_back({g, m});
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) { return a.poly < b.poly; });
  return out;
}

bool is_irreducible(const IntPoly& p) {
  if (p.degree() <= 0) return false;
  if (p.content() != 1L && p.content() != -1L) return false;
  auto f = factor_int_poly(p);
  return f.size() == 1 && f[0].multiplicity == 1;
}

}  // namespace weilcat
