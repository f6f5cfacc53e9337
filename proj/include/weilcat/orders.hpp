#pragma once

// The minimal central orders R_w = Z[F,V]/(FV - q, h_w(F,V)) as explicit
// finite free Z-algebras.

#include "weilcat/weil.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace weilcat {

// Laurent-style polynomial in F and V modulo FV = q. Exponent e > 0 stands
// for F^e, e < 0 for V^{-e}, 0 for the constant term.
class SymPoly {
 public:
  SymPoly() = default;
  static SymPoly constant(const BigInt& c) { return monomial(0, c); }
  static SymPoly monomial(int exponent, const BigInt& c);
  static SymPoly F(int power = 1) { return monomial(power, BigInt(1)); }
  static SymPoly V(int power = 1) { return monomial(-power, BigInt(1)); }

  const std::map<int, BigInt>& terms() const { return terms_; }
  BigInt coeff(int exponent) const;
  BigInt constant_term() const { return coeff(0); }
  // f_coeffs()[i] is the coefficient of F^{i+1}; likewise g for V.
  std::vector<BigInt> f_coeffs() const;
  std::vector<BigInt> g_coeffs() const;
  int f_degree() const;
  int g_degree() const;
  bool is_zero() const { return terms_.empty(); }
  int max_exponent() const { return terms_.rbegin()->first; }
  int min_exponent() const { return terms_.begin()->first; }

  SymPoly& operator+=(const SymPoly& o);
  SymPoly& operator-=(const SymPoly& o);
  friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
  friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
  friend SymPoly operator*(SymPoly a, const BigInt& s);
  friend bool operator==(const SymPoly& a, const SymPoly& b) { return a.terms_ == b.terms_; }

  std::string str() const;

 private:
  void add_term(int exponent, const BigInt& c);
  std::map<int, BigInt> terms_;
};

// Product with F^a V^b reduced by FV = q.
SymPoly multiply(const SymPoly& a, const SymPoly& b, const BigInt& q);

// h_pi for a non-real or real non-rational class. A lone rational class has
// no integral h and is rejected.
SymPoly sym_poly(const WeilClass& c);
// h_w for w of even degree; the two rational classes contribute F - V together.
SymPoly sym_poly_product(const WeilSet& w);

// Q[x]/(P) for monic P, power basis 1, x, ..., x^{n-1}.
class ResidueRing {
 public:
  explicit ResidueRing(IntPoly minpoly, const BigInt& q);
  const IntPoly& modulus() const { return p_; }
  Index dim() const { return static_cast<Index>(p_.degree()); }
  RatVector one() const;
  const RatVector& x() const { return x_; }
  // q / x
  const RatVector& x_dual() const { return xdual_; }
  RatVector mul(const RatVector& a, const RatVector& b) const;
  RatVector pow(const RatVector& a, unsigned n) const;
  // Value of h at (x, q/x).
  RatVector evaluate(const SymPoly& h) const;

 private:
  IntPoly p_;
  RatMatrix c_;  // multiplication by x
  RatVector x_, xdual_;
};

class MinimalCentralOrder {
 public:
  const WeilSet& w() const { return w_; }
  const PrimePower& q() const { return w_.q(); }
  int half_rank() const { return d_; }
  // w contains exactly one rational class.
  bool rational_case() const { return rational_sign_ != 0; }
  int rational_sign() const { return rational_sign_; }
  Index rank() const { return static_cast<Index>(exponents_.size()); }
  // Basis element i is F^e (e > 0), 1 (e = 0) or V^{-e} (e < 0).
  const std::vector<int>& exponents() const { return exponents_; }
  std::string basis_label(Index i) const;
  // h_w in the even-degree case, h_v in the rational case.
  const SymPoly& h() const { return h_; }
  // The defining relations used for rewriting.
  const std::vector<SymPoly>& relations() const { return relations_; }

  IntVector reduce(const SymPoly& s) const;
  IntVector unit() const { return reduce(SymPoly::constant(BigInt(1))); }
  IntVector frobenius() const { return reduce(SymPoly::F()); }
  IntVector verschiebung() const { return reduce(SymPoly::V()); }
  IntVector multiply(const IntVector& a, const IntVector& b) const;
  // Matrix of b -> a b in the order basis.
  IntMatrix multiplication_matrix(const IntVector& a) const;
  // table[i][j] = e_i e_j
  const std::vector<std::vector<IntVector>>& mult_table() const { return table_; }

  const std::vector<ResidueRing>& residue_rings() const { return rings_; }
  std::vector<RatVector> embed(const IntVector& a) const;
  // Columns are the basis elements, rows the stacked power-basis coordinates.
  const RatMatrix& embedding() const { return embedding_; }
  // [prod R_pi : R_w], the product of the single-class orders.
  const BigInt& index() const { return index_; }
  // |det| of the embedding, i.e. the index relative to prod Z[x]/(P_pi).
  const Rational& power_basis_index() const { return power_index_; }

 private:
  friend struct OrderBuilder;
  explicit MinimalCentralOrder(WeilSet w) : w_(std::move(w)) {}

  WeilSet w_;
  int d_ = 0;
  int rational_sign_ = 0;
  int top_ = 0, bottom_ = 0;  // exponent range [-bottom_, top_]
  SymPoly h_;
  std::vector<SymPoly> relations_;  // top relation (lc 1 at F^{top+1}), bottom relation (lc +-1 at V^{bottom+1})
  std::vector<int> exponents_;
  std::vector<std::vector<IntVector>> table_;
  std::vector<ResidueRing> rings_;
  RatMatrix embedding_;
  BigInt index_;
  Rational power_index_;
};

using OrderPtr = std::shared_ptr<const MinimalCentralOrder>;

// Even-degree w (both rational classes or neither), w nonempty.
OrderPtr build_order(const WeilSet& w);
// w = v + {sign sqrt(q)}; v without rational classes, q a square.
OrderPtr build_order_with_rational(const WeilSet& v, int sign);
// Dispatches on the number of rational classes in w.
OrderPtr order_for(const WeilSet& w);

struct OrderElement {
  OrderPtr parent;
  IntVector coeffs;

  static OrderElement from(OrderPtr order, const SymPoly& s);
  friend OrderElement operator+(const OrderElement& a, const OrderElement& b);
  friend OrderElement operator*(const OrderElement& a, const OrderElement& b);
  friend bool operator==(const OrderElement& a, const OrderElement& b);
};

// Throws ValidationError for elements of different orders.
OrderElement mult(const OrderElement& a, const OrderElement& b);
std::vector<RatVector> embed(const OrderElement& a);
BigInt conductor_index(const MinimalCentralOrder& order);

// The surjection R_w -> R_v for v a subset of w, as a rank(v) x rank(w) matrix.
IntMatrix project(const MinimalCentralOrder& w, const MinimalCentralOrder& v);

struct SocleReport {
  long p = 0;
  // dim of {a : F a = V a = 0} in R/pR
  int local_socle_at_fv = 0;
  int local_factors = 0;
  // Cohen-Macaulay type of each local factor of R/pR
  std::vector<int> types;
  int socle_dim = 0;  // max of types
};

// Throws CapExceeded when p does not fit the prime-field kernel.
SocleReport socle_report(const MinimalCentralOrder& order);
int socle_dim_at_p(const MinimalCentralOrder& order);
bool is_gorenstein(const MinimalCentralOrder& order);

}  // namespace weilcat
