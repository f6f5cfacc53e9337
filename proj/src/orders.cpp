#include "weilcat/orders.hpp"

#include "weilcat/error.hpp"

#include <sstream>

namespace weilcat {

SymPoly SymPoly::monomial(int exponent, const BigInt& c) {
  SymPoly s;
  s.add_term(exponent, c);
  return s;
}

void SymPoly::add_term(int exponent, const BigInt& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

BigInt SymPoly::coeff(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? BigInt(0) : it->second;
}

int SymPoly::f_degree() const { return terms_.empty() ? 0 : std::max(0, max_exponent()); }
int SymPoly::g_degree() const { return terms_.empty() ? 0 : std::max(0, -min_exponent()); }

std::vector<BigInt> SymPoly::f_coeffs() const {
  std::vector<BigInt> out;
  for (int e = 1; e <= f_degree(); ++e) out.push_back(coeff(e));
  return out;
}

std::vector<BigInt> SymPoly::g_coeffs() const {
  std::vector<BigInt> out;
  for (int e = 1; e <= g_degree(); ++e) out.push_back(coeff(-e));
  return out;
}

SymPoly& SymPoly::operator+=(const SymPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

SymPoly operator*(SymPoly a, const BigInt& s) {
  if (s.is_zero()) return SymPoly();
  for (auto& [e, c] : a.terms_) c *= s;
  return a;
}

std::string SymPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    BigInt mag = abs(c);
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << mag;
      continue;
    }
    if (!mag.is_one()) os << mag;
    os << (e > 0 ? "F" : "V");
    if (std::abs(e) > 1) os << "^" << std::abs(e);
  }
  return os.str();
}

SymPoly multiply(const SymPoly& a, const SymPoly& b, const BigInt& q) {
  SymPoly out;
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      BigInt c = ca * cb;
      if ((ea > 0 && eb < 0) || (ea < 0 && eb > 0))
        c *= pow(q, static_cast<unsigned long>(std::min(std::abs(ea), std::abs(eb))));
      out += SymPoly::monomial(ea + eb, c);
    }
  return out;
}

SymPoly sym_poly(const WeilClass& c) {
  if (c.is_rational)
    throw ValidationError("the rational class " + c.minpoly.str() + " has no integral symmetric polynomial on its own");
  if (c.is_real) return SymPoly::F() - SymPoly::V();
  const int d = c.two_d / 2;
  SymPoly h = SymPoly::constant(c.minpoly.coeff(d));
  for (int r = 1; r <= d; ++r) {
    h += SymPoly::monomial(r, c.minpoly.coeff(d + r));
    h += SymPoly::monomial(-r, c.minpoly.coeff(d + r));
  }
  return h;
}

SymPoly sym_poly_product(const WeilSet& w) {
  if (!w.even_degree()) throw ValidationError("h_w needs w of even degree (both rational classes or neither)");
  SymPoly h = SymPoly::constant(BigInt(1));
  for (const auto& c : w.classes())
    if (!c.is_rational) h = multiply(h, sym_poly(c), w.q().q);
  if (w.rational_count() == 2) h = multiply(h, SymPoly::F() - SymPoly::V(), w.q().q);
  return h;
}

ResidueRing::ResidueRing(IntPoly minpoly, const BigInt& q) : p_(std::move(minpoly)) {
  if (!p_.is_monic() || p_.degree() < 1) throw ValidationError("residue ring needs a monic nonconstant modulus");
  if (p_.coeff(0).is_zero()) throw ValidationError("x is not invertible modulo " + p_.str());
  c_ = to_rational(companion_matrix(p_));
  x_ = c_ * one();
  // P = x S + a0, so q/x = -q S / a0
  const Index n = dim();
  xdual_ = RatVector(n);
  Rational scale = Rational(-q) / Rational(p_.coeff(0));
  for (Index i = 0; i < n; ++i) xdual_(i) = scale * Rational(p_.coeff(static_cast<int>(i) + 1));
}

RatVector ResidueRing::one() const {
  RatVector v = RatVector::Constant(dim(), Rational(0));
  v(0) = Rational(1);
  return v;
}

RatVector ResidueRing::mul(const RatVector& a, const RatVector& b) const {
  // a(C) b by Horner
  const Index n = dim();
  RatVector r = b * a(n - 1);
  for (Index i = n - 2; i >= 0; --i) r = c_ * r + b * a(i);
  return r;
}

RatVector ResidueRing::pow(const RatVector& a, unsigned n) const {
  RatVector r = one(), base = a;
  while (n) {
    if (n & 1) r = mul(r, base);
    base = mul(base, base);
    n >>= 1;
  }
  return r;
}

RatVector ResidueRing::evaluate(const SymPoly& h) const {
  RatVector out = RatVector::Constant(dim(), Rational(0));
  for (const auto& [e, c] : h.terms()) {
    RatVector m = e >= 0 ? pow(x_, static_cast<unsigned>(e)) : pow(xdual_, static_cast<unsigned>(-e));
    out += m * Rational(c);
  }
  return out;
}

std::string MinimalCentralOrder::basis_label(Index i) const {
  const int e = exponents_.at(static_cast<std::size_t>(i));
  if (e == 0) return "1";
  std::string s = e > 0 ? "F" : "V";
  if (std::abs(e) > 1) s += "^" + std::to_string(std::abs(e));
  return s;
}

IntVector MinimalCentralOrder::reduce(const SymPoly& input) const {
  const BigInt& q = w_.q().q;
  SymPoly s = input;
  const SymPoly& up = relations_[0];
  const SymPoly& down = relations_[1];
  const BigInt down_lc = down.coeff(-(bottom_ + 1));
  while (!s.is_zero() && s.max_exponent() > top_) {
    const int e = s.max_exponent();
    s -= weilcat::multiply(SymPoly::F(e - top_ - 1), up, q) * s.coeff(e);
  }
  while (!s.is_zero() && s.min_exponent() < -bottom_) {
    const int k = -s.min_exponent();
    // down_lc is a unit
    s -= weilcat::multiply(SymPoly::V(k - bottom_ - 1), down, q) * (s.coeff(-k) * down_lc);
  }
  if (!s.is_zero() && s.max_exponent() > top_) throw std::logic_error("order rewriting did not terminate in range");
  IntVector v(rank());
  for (Index i = 0; i < rank(); ++i) v(i) = s.coeff(exponents_[static_cast<std::size_t>(i)]);
  return v;
}

IntVector MinimalCentralOrder::multiply(const IntVector& a, const IntVector& b) const {
  IntVector out = IntVector::Constant(rank(), BigInt(0));
  for (Index i = 0; i < rank(); ++i) {
    if (a(i).is_zero()) continue;
    for (Index j = 0; j < rank(); ++j) {
      if (b(j).is_zero()) continue;
      out += table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * (a(i) * b(j));
    }
  }
  return out;
}

IntMatrix MinimalCentralOrder::multiplication_matrix(const IntVector& a) const {
  IntMatrix m = zero_matrix(rank(), rank());
  for (Index i = 0; i < rank(); ++i) {
    if (a(i).is_zero()) continue;
    for (Index j = 0; j < rank(); ++j) m.col(j) += table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * a(i);
  }
  return m;
}

std::vector<RatVector> MinimalCentralOrder::embed(const IntVector& a) const {
  RatVector all = embedding_ * to_rational(a);
  std::vector<RatVector> out;
  Index off = 0;
  for (const auto& r : rings_) {
    out.push_back(all.segment(off, r.dim()));
    off += r.dim();
  }
  return out;
}

struct OrderBuilder {
  static OrderPtr build(WeilSet w, SymPoly h, int rational_sign, SymPoly up, SymPoly down, int top, int bottom,
                        int d) {
    auto order = std::shared_ptr<MinimalCentralOrder>(new MinimalCentralOrder(std::move(w)));
    MinimalCentralOrder& o = *order;
    o.d_ = d;
    o.rational_sign_ = rational_sign;
    o.top_ = top;
    o.bottom_ = bottom;
    o.h_ = std::move(h);
    if (up.is_zero() || up.max_exponent() != top + 1 || !up.coeff(top + 1).is_one() || up.min_exponent() < -bottom)
      throw std::logic_error("top relation has the wrong shape: " + up.str());
    if (down.is_zero() || down.min_exponent() != -(bottom + 1) || !abs(down.coeff(-(bottom + 1))).is_one() ||
        down.max_exponent() > top)
      throw std::logic_error("bottom relation has the wrong shape: " + down.str());
    o.relations_ = {std::move(up), std::move(down)};
    for (int e = top; e >= -bottom; --e) o.exponents_.push_back(e);

    const BigInt& q = o.q().q;
    const std::size_t n = o.exponents_.size();
    o.table_.assign(n, std::vector<IntVector>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        o.table_[i][j] = o.reduce(
            multiply(SymPoly::monomial(o.exponents_[i], BigInt(1)), SymPoly::monomial(o.exponents_[j], BigInt(1)), q));
        o.table_[j][i] = o.table_[i][j];
      }

    for (const auto& c : o.w_.classes()) o.rings_.emplace_back(c.minpoly, q);
    Index total = 0;
    for (const auto& r : o.rings_) total += r.dim();
    if (total != static_cast<Index>(n)) throw std::logic_error("rank differs from the sum of class degrees");
    o.embedding_ = RatMatrix(total, static_cast<Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
      Index off = 0;
      for (const auto& r : o.rings_) {
        o.embedding_.col(static_cast<Index>(j)).segment(off, r.dim()) =
            r.evaluate(SymPoly::monomial(o.exponents_[j], BigInt(1)));
        off += r.dim();
      }
    }
    RationalField f;
    o.power_index_ = abs(field_determinant(o.embedding_, f));
    if (o.power_index_.is_zero()) throw std::logic_error("embedding of R_w is not injective");

    // frame: the product of the single-class orders (Z for a rational class)
    Rational frame(1);
    std::vector<const WeilClass*> others;
    for (const auto& c : o.w_.classes())
      if (!c.is_rational) others.push_back(&c);
    for (const auto* c : others) {
      if (o.w_.size() == 1) {
        frame *= o.power_index_;
      } else {
        frame *= build_order(WeilSet(o.q(), {*c}))->power_basis_index();
      }
    }
    Rational idx = o.power_index_ / frame;
    if (!idx.is_integer()) throw std::logic_error("R_w is not contained in the product of its factors");
    o.index_ = idx.num();
    return order;
  }
};

OrderPtr build_order(const WeilSet& w) {
  if (w.empty()) throw ValidationError("R_w needs a nonempty Weil set");
  if (!w.even_degree())
    throw ValidationError("w has odd degree: a single rational class needs build_order_with_rational");
  const int d = w.total_degree() / 2;
  SymPoly h = sym_poly_product(w);
  SymPoly up = multiply(SymPoly::F(), h, w.q().q);
  return OrderBuilder::build(w, h, 0, std::move(up), h, d, d - 1, d);
}

OrderPtr build_order_with_rational(const WeilSet& v, int sign) {
  const PrimePower& q = v.q();
  if (!q.is_square()) throw ValidationError("q = " + q.q.str() + " is not a square; there is no rational Weil number");
  if (sign != 1 && sign != -1) throw ValidationError("sign must be +1 or -1");
  if (v.rational_count() != 0) throw ValidationError("v must not contain rational classes");
  const BigInt s = q.root() * BigInt(sign);
  const int d = v.total_degree() / 2;
  SymPoly hv = sym_poly_product(v);
  SymPoly up = multiply(hv, SymPoly::F() - SymPoly::constant(s), q.q);
  SymPoly down = multiply(hv, SymPoly::V() - SymPoly::constant(s), q.q);
  std::vector<WeilClass> classes = v.classes();
  classes.push_back(classify(IntPoly::x() - IntPoly::constant(s), q));
  return OrderBuilder::build(WeilSet(q, std::move(classes)), hv, sign, std::move(up), std::move(down), d, d, d);
}

OrderPtr order_for(const WeilSet& w) {
  if (w.rational_count() == 1) {
    for (const auto& c : w.classes())
      if (c.is_rational) return build_order_with_rational(w.without_rational(), c.rational_sign());
  }
  return build_order(w);
}

OrderElement OrderElement::from(OrderPtr order, const SymPoly& s) {
  IntVector v = order->reduce(s);
  return OrderElement{std::move(order), std::move(v)};
}

OrderElement mult(const OrderElement& a, const OrderElement& b) {
  if (a.parent != b.parent) throw ValidationError("elements of different orders");
  return OrderElement{a.parent, a.parent->multiply(a.coeffs, b.coeffs)};
}

OrderElement operator*(const OrderElement& a, const OrderElement& b) { return mult(a, b); }

OrderElement operator+(const OrderElement& a, const OrderElement& b) {
  if (a.parent != b.parent) throw ValidationError("elements of different orders");
  return OrderElement{a.parent, a.coeffs + b.coeffs};
}

bool operator==(const OrderElement& a, const OrderElement& b) { return a.parent == b.parent && a.coeffs == b.coeffs; }

std::vector<RatVector> embed(const OrderElement& a) { return a.parent->embed(a.coeffs); }

BigInt conductor_index(const MinimalCentralOrder& order) { return order.index(); }

IntMatrix project(const MinimalCentralOrder& w, const MinimalCentralOrder& v) {
  if (!v.w().is_subset_of(w.w())) throw ValidationError("v is not a subset of w");
  IntMatrix m(v.rank(), w.rank());
  for (Index j = 0; j < w.rank(); ++j)
    m.col(j) = v.reduce(SymPoly::monomial(w.exponents()[static_cast<std::size_t>(j)], BigInt(1)));
  return m;
}

namespace {

using ModMat = Mat<std::int64_t>;
using ModVec = Vec<std::int64_t>;

ModMat mul_mod(const ModMat& a, const ModMat& b, const PrimeField& f) {
  ModMat c = ModMat::Zero(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (Index j = 0; j < b.cols(); ++j) c(i, j) = f.add(c(i, j), f.mul(a(i, k), b(k, j)));
    }
  return c;
}

// R/pR with structure constants reduced mod p.
struct ResidueAlgebra {
  PrimeField f;
  Index n;
  std::vector<std::vector<ModVec>> table;

  ModVec mul(const ModVec& a, const ModVec& b) const {
    ModVec out = ModVec::Zero(n);
    for (Index i = 0; i < n; ++i) {
      if (a(i) == 0) continue;
      for (Index j = 0; j < n; ++j) {
        if (b(j) == 0) continue;
        const auto c = f.mul(a(i), b(j));
        const auto& t = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        for (Index k = 0; k < n; ++k) out(k) = f.add(out(k), f.mul(c, t(k)));
      }
    }
    return out;
  }
  ModVec pow(ModVec a, std::uint64_t e, const ModVec& one) const {
    ModVec r = one;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  // columns: a e_j
  ModMat left(const ModVec& a) const {
    ModMat m(n, n);
    for (Index j = 0; j < n; ++j) {
      ModVec ej = ModVec::Zero(n);
      ej(j) = 1;
      m.col(j) = mul(a, ej);
    }
    return m;
  }
};

ModMat stack_left(const ResidueAlgebra& alg, const ModMat& elements) {
  ModMat m(alg.n * elements.cols(), alg.n);
  for (Index c = 0; c < elements.cols(); ++c) m.middleRows(c * alg.n, alg.n) = alg.left(elements.col(c));
  return m;
}

// Minimal polynomial of a, low-degree-first, monic.
std::vector<std::int64_t> minimal_polynomial(const ResidueAlgebra& alg, const ModVec& a, const ModVec& one) {
  const PrimeField& f = alg.f;
  std::vector<ModVec> powers{one};
  for (;;) {
    ModVec next = alg.mul(powers.back(), a);
    ModMat m(alg.n, static_cast<Index>(powers.size()));
    for (std::size_t i = 0; i < powers.size(); ++i) m.col(static_cast<Index>(i)) = powers[i];
    ModVec rhs = next;
    auto sol = solve(m, rhs, f);
    if (sol) {
      std::vector<std::int64_t> poly;
      for (Index i = 0; i < sol->size(); ++i) poly.push_back(f.sub(0, (*sol)(i)));
      poly.push_back(1);
      return poly;
    }
    powers.push_back(next);
  }
}

}  // namespace

SocleReport socle_report(const MinimalCentralOrder& order) {
  const BigInt& pb = order.q().p;
  if (!pb.fits_long() || pb.to_long() >= (1L << 31)) throw CapExceeded("p = " + pb.str() + " is too large for the socle kernel");
  SocleReport rep;
  rep.p = pb.to_long();
  PrimeField f(rep.p);
  const Index n = order.rank();
  ResidueAlgebra alg{f, n, {}};
  alg.table.assign(static_cast<std::size_t>(n), std::vector<ModVec>(static_cast<std::size_t>(n)));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const auto& t = order.mult_table()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      ModVec v(n);
      for (Index k = 0; k < n; ++k) v(k) = f.reduce(t(k));
      alg.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
    }
  auto reduce_vec = [&](const IntVector& v) {
    ModVec r(n);
    for (Index k = 0; k < n; ++k) r(k) = f.reduce(v(k));
    return r;
  };
  const ModVec one = reduce_vec(order.unit());
  const std::uint64_t p = static_cast<std::uint64_t>(rep.p);

  {
    ModMat fv(2 * n, n);
    fv.topRows(n) = alg.left(reduce_vec(order.frobenius()));
    fv.bottomRows(n) = alg.left(reduce_vec(order.verschiebung()));
    rep.local_socle_at_fv = static_cast<int>(nullspace(fv, f).cols());
  }

  // a -> a^p is F_p-linear; its powers kill exactly the radical
  ModMat frob(n, n);
  for (Index j = 0; j < n; ++j) {
    ModVec ej = ModVec::Zero(n);
    ej(j) = 1;
    frob.col(j) = alg.pow(ej, p, one);
  }
  ModMat frob_k = frob;
  for (std::uint64_t reach = p; reach < static_cast<std::uint64_t>(n); reach *= p) frob_k = mul_mod(frob_k, frob, f);
  const ModMat radical = nullspace(frob_k, f);
  const ModMat socle = radical.cols() == 0 ? ModMat(ModMat::Identity(n, n)) : ModMat(nullspace(stack_left(alg, radical), f));

  // Berlekamp subalgebra {a : a^p = a} splits R/pR into local factors
  ModMat fixed = frob;
  for (Index i = 0; i < n; ++i) fixed(i, i) = f.sub(fixed(i, i), 1);
  const ModMat berlekamp = nullspace(fixed, f);
  std::vector<ModVec> idempotents{one};
  for (Index c = 0; c < berlekamp.cols() && static_cast<Index>(idempotents.size()) < berlekamp.cols(); ++c) {
    const ModVec b = berlekamp.col(c);
    const auto mp = minimal_polynomial(alg, b, one);
    std::vector<ModVec> refined;
    for (std::int64_t lambda = 0; lambda < rep.p; ++lambda) {
      std::int64_t val = 0;
      for (std::size_t i = mp.size(); i-- > 0;) val = f.add(f.mul(val, lambda), mp[i]);
      if (val != 0) continue;
      // 1 - (b - lambda)^{p-1} is the idempotent where b = lambda
      ModVec shifted = b - one * lambda;
      for (Index k = 0; k < n; ++k) shifted(k) = f.reduce(shifted(k));
      ModVec e = one - alg.pow(shifted, p - 1, one);
      for (Index k = 0; k < n; ++k) e(k) = f.reduce(e(k));
      for (const auto& old : idempotents) {
        ModVec piece = alg.mul(old, e);
        if (!piece.isZero()) refined.push_back(piece);
      }
    }
    idempotents = std::move(refined);
  }
  if (static_cast<Index>(idempotents.size()) != berlekamp.cols())
    throw std::logic_error("idempotent splitting of R/pR is incomplete");
  rep.local_factors = static_cast<int>(idempotents.size());

  for (const auto& e : idempotents) {
    const ModMat le = alg.left(e);
    const Index dim_local = rank(le, f);
    const Index dim_rad = radical.cols() ? rank(ModMat(mul_mod(le, radical, f)), f) : 0;
    const Index dim_soc = rank(ModMat(mul_mod(le, socle, f)), f);
    const Index residue_degree = dim_local - dim_rad;
    if (residue_degree <= 0 || dim_soc % residue_degree != 0) throw std::logic_error("inconsistent local factor of R/pR");
    const int type = static_cast<int>(dim_soc / residue_degree);
    rep.types.push_back(type);
    rep.socle_dim = std::max(rep.socle_dim, type);
  }
  return rep;
}

int socle_dim_at_p(const MinimalCentralOrder& order) { return socle_report(order).socle_dim; }

bool is_gorenstein(const MinimalCentralOrder& order) { return socle_dim_at_p(order) == 1; }

}  // namespace weilcat
