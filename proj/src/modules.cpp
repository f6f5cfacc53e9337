#include "weilcat/modules.hpp"

namespace weilcat {

namespace {

std::optional<IntMatrix> rational_inverse_times(const IntMatrix& m, const BigInt& scale) {
  const Index n = m.rows();
  RatMatrix aug(n, 2 * n);
  aug.leftCols(n) = to_rational(m);
  aug.rightCols(n) = to_rational(identity_matrix(n)) * Rational(scale);
  RationalField f;
  auto ech = reduced_row_echelon(std::move(aug), f);
  if (static_cast<Index>(ech.pivots.size()) < n || ech.pivots[static_cast<std::size_t>(n - 1)] != n - 1)
    return std::nullopt;
  return to_integer(ech.matrix.rightCols(n));
}

IntMatrix power(const IntMatrix& m, int e) {
  IntMatrix r = identity_matrix(m.rows());
  for (int i = 0; i < e; ++i) r = r * m;
  return r;
}

IntMatrix evaluate(const SymPoly& h, const IntMatrix& F, const IntMatrix& V) {
  IntMatrix out = zero_matrix(F.rows(), F.cols());
  for (const auto& [e, c] : h.terms()) out += (e >= 0 ? power(F, e) : power(V, -e)) * c;
  return out;
}

// Column-vector basis matrix; coordinates of each column of `vectors`.
IntMatrix coordinates_in(const IntMatrix& basis, const IntMatrix& vectors) {
  IntMatrix out(basis.cols(), vectors.cols());
  for (Index j = 0; j < vectors.cols(); ++j) {
    auto c = lattice_coordinates(basis, vectors.col(j));
    if (!c) throw std::logic_error("vector outside the lattice");
    out.col(j) = *c;
  }
  return out;
}

IntMatrix columns_of_flattened(const std::vector<IntMatrix>& maps, Index rows, Index cols) {
  IntMatrix out(rows * cols, static_cast<Index>(maps.size()));
  for (std::size_t i = 0; i < maps.size(); ++i) out.col(static_cast<Index>(i)) = flatten(maps[i]);
  return out;
}

DelignePair pair_from_restriction(const DelignePair& m, const IntMatrix& basis_cols) {
  IntMatrix f = coordinates_in(basis_cols, m.F * basis_cols);
  return validate_pair(f, m.q, m.p_restricted);
}

BigInt lattice_index(const IntMatrix& big_basis_cols, const IntMatrix& small_generators_cols, bool& finite) {
  IntMatrix coords = coordinates_in(big_basis_cols, small_generators_cols);
  auto snf = smith_normal_form(coords);
  finite = static_cast<Index>(snf.invariants.size()) == big_basis_cols.cols();
  BigInt idx(1);
  for (const auto& d : snf.invariants) idx *= d;
  return idx;
}

}  // namespace

IntMatrix verschiebung(const IntMatrix& F, const BigInt& q) {
  if (F.rows() != F.cols()) throw PairInvalid("shape", "Frobenius matrix is not square");
  if (determinant(F).is_zero()) throw PairInvalid("integral-verschiebung", "F is singular, so V = q F^-1 does not exist");
  auto v = rational_inverse_times(F, q);
  if (!v) throw PairInvalid("integral-verschiebung", "V = q F^-1 is not integral");
  return *v;
}

DelignePair validate_pair(const IntMatrix& F, const PrimePower& q, bool p_restricted) {
  if (F.rows() == 0 || F.rows() != F.cols()) throw PairInvalid("shape", "Frobenius matrix must be square and nonempty");
  DelignePair m;
  m.q = q;
  m.F = F;
  m.p_restricted = p_restricted;
  m.charpoly = characteristic_polynomial(F);
  m.factors = factor_int_poly(m.charpoly);
  IntPoly rad = IntPoly::constant(BigInt(1));
  for (const auto& f : m.factors) rad = rad * f.poly;
  if (!is_zero(eval_at_matrix(rad, F)))
    throw PairInvalid("semisimple", "F is not semisimple: its minimal polynomial is not squarefree");
  m.minpoly = rad;
  std::vector<WeilClass> classes;
  for (const auto& f : m.factors) {
    if (!is_weil_poly(f.poly, q)) {
      if (f.poly.degree() == 1)
        throw PairInvalid("weil", "eigenvalue " + (-f.poly.coeff(0)).str() + " is not a Weil " + q.q.str() + "-number");
      throw PairInvalid("weil", "roots of " + f.poly.str() + " are not Weil " + q.q.str() + "-numbers");
    }
    classes.push_back(classify(f.poly, q));
  }
  if (p_restricted) {
    if (q.e != 1) throw PairInvalid("prime-field", "q = " + q.q.str() + " is not prime");
    for (const auto& c : classes)
      if (c.is_real) throw PairInvalid("non-real", "real Weil class " + c.minpoly.str() + " is excluded over the prime field");
  }
  m.support = WeilSet(q, std::move(classes));
  m.V = verschiebung(F, q.q);
  return m;
}

ModuleMap ModuleMap::make(DelignePair source, DelignePair target, IntMatrix matrix) {
  if (matrix.rows() != target.rank() || matrix.cols() != source.rank())
    throw ValidationError("map matrix has the wrong shape");
  if (!(source.q == target.q)) throw ValidationError("maps between pairs over different q");
  if (matrix * source.F != target.F * matrix) throw ValidationError("matrix does not intertwine the Frobenius maps");
  return ModuleMap{std::move(source), std::move(target), std::move(matrix)};
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (g.source.F != f.target.F) throw ValidationError("maps are not composable");
  return ModuleMap{f.source, g.target, g.matrix * f.matrix};
}

ModuleMap identity_map(const DelignePair& m) { return ModuleMap{m, m, identity_matrix(m.rank())}; }

ModuleMap scalar_map(const DelignePair& m, const BigInt& c) { return ModuleMap{m, m, identity_matrix(m.rank()) * c}; }

std::vector<IntMatrix> hom_basis(const DelignePair& src, const DelignePair& dst) {
  const Index ns = src.rank(), nd = dst.rank();
  // X (nd x ns) row-major; equations X F_s - F_d X = 0
  IntMatrix a = zero_matrix(nd * ns, nd * ns);
  for (Index i = 0; i < nd; ++i)
    for (Index j = 0; j < ns; ++j) {
      const Index row = i * ns + j;
      for (Index k = 0; k < ns; ++k) a(row, i * ns + k) += src.F(k, j);
      for (Index k = 0; k < nd; ++k) a(row, k * ns + j) -= dst.F(i, k);
    }
  IntMatrix ker = integer_kernel(a);
  std::vector<IntMatrix> out;
  for (Index c = 0; c < ker.cols(); ++c) out.push_back(unflatten(ker.col(c), nd, ns));
  return out;
}

std::vector<ModuleMap> hom_lattice(const DelignePair& src, const DelignePair& dst) {
  if (!(src.q == dst.q)) throw ValidationError("pairs over different q");
  std::vector<ModuleMap> out;
  for (auto& m : hom_basis(src, dst)) out.push_back(ModuleMap{src, dst, std::move(m)});
  return out;
}

DelignePair direct_sum(const DelignePair& a, const DelignePair& b) {
  if (!(a.q == b.q)) throw ValidationError("pairs over different q");
  const Index n = a.rank(), m = b.rank();
  IntMatrix f = zero_matrix(n + m, n + m);
  f.topLeftCorner(n, n) = a.F;
  f.bottomRightCorner(m, m) = b.F;
  return validate_pair(f, a.q, a.p_restricted && b.p_restricted);
}

DelignePair change_basis(const DelignePair& m, const IntMatrix& u) {
  if (!abs(determinant(u)).is_one()) throw ValidationError("change of basis is not unimodular");
  IntMatrix uinv = *rational_inverse_times(u, BigInt(1));
  return validate_pair(u * m.F * uinv, m.q, m.p_restricted);
}

DelignePair regular_pair(const MinimalCentralOrder& order) {
  return validate_pair(order.multiplication_matrix(order.frobenius()), order.q());
}

DelignePair submodule_pair(const DelignePair& m, const MinimalCentralOrder& order, const IntMatrix& generators) {
  const Index n = m.rank();
  std::vector<IntMatrix> action;
  for (int e : order.exponents()) action.push_back(e >= 0 ? power(m.F, e) : power(m.V, -e));
  IntMatrix rows(static_cast<Index>(action.size()) * generators.cols(), n);
  Index r = 0;
  for (Index g = 0; g < generators.cols(); ++g)
    for (const auto& a : action) rows.row(r++) = (a * generators.col(g)).transpose();
  IntMatrix basis = row_lattice_basis(rows).transpose();
  return pair_from_restriction(m, basis);
}

OrderModuleView module_view(const DelignePair& pair, OrderPtr order) {
  if (!pair.support.is_subset_of(order->w()))
    throw ValidationError("the support of the pair is not contained in w");
  for (const auto& rel : order->relations())
    if (!is_zero(evaluate(rel, pair.F, pair.V)))
      throw ValidationError("a defining relation of R_w does not vanish on the pair");
  OrderModuleView view{pair, order, {}};
  for (int e : order->exponents()) view.action.push_back(e >= 0 ? power(pair.F, e) : power(pair.V, -e));
  return view;
}

bool end_ring_is_minimal(const DelignePair& pair, OrderPtr order) {
  if (!pair.support.is_subset_of(order->w()) || !order->w().is_subset_of(pair.support))
    throw ValidationError("the support of the pair differs from w");
  const auto view = module_view(pair, order);
  const auto ends = hom_basis(pair, pair);
  if (static_cast<Index>(ends.size()) != order->rank()) return false;
  const Index n = pair.rank();
  IntMatrix e = columns_of_flattened(ends, n, n).transpose();
  IntMatrix a = columns_of_flattened(view.action, n, n).transpose();
  return same_row_lattice(e, a);
}

DelignePair tau_dual(const DelignePair& pair) {
  DelignePair d = validate_pair(pair.V, pair.q, pair.p_restricted);
  if (d.V != pair.F) throw std::logic_error("tau is not an involution on this pair");
  return d;
}

ModuleMap tau_dual(const ModuleMap& f) { return ModuleMap::make(tau_dual(f.source), tau_dual(f.target), f.matrix); }

std::optional<BigInt> coker_order(const ModuleMap& f) {
  auto snf = smith_normal_form(f.matrix);
  if (static_cast<Index>(snf.invariants.size()) < f.matrix.rows()) return std::nullopt;
  BigInt order(1);
  for (const auto& d : snf.invariants) order *= d;
  return order;
}

bool is_isogeny(const ModuleMap& f) {
  return f.matrix.rows() == f.matrix.cols() && !determinant(f.matrix).is_zero();
}

bool is_surjective(const ModuleMap& f) {
  auto snf = smith_normal_form(f.matrix);
  if (static_cast<Index>(snf.invariants.size()) != f.matrix.rows()) return false;
  return std::all_of(snf.invariants.begin(), snf.invariants.end(), [](const BigInt& d) { return d.is_one(); });
}

DualityReport double_dual_report(const DelignePair& pair, OrderPtr order) {
  module_view(pair, order);
  const DelignePair s = regular_pair(*order);
  const Index n = pair.rank(), r = s.rank();
  DualityReport rep;

  // M* = Hom_R(M, R); F acts by post-composition
  const auto phi = hom_basis(pair, s);
  const Index k = static_cast<Index>(phi.size());
  rep.dual_rank = k;
  if (k == 0) return rep;
  const IntMatrix phi_cols = columns_of_flattened(phi, r, n);
  std::vector<IntMatrix> f_phi;
  for (const auto& p : phi) f_phi.push_back(s.F * p);
  const DelignePair dual = validate_pair(coordinates_in(phi_cols, columns_of_flattened(f_phi, r, n)), pair.q);

  const auto psi = hom_basis(dual, s);
  const IntMatrix psi_cols = columns_of_flattened(psi, r, k);
  // m -> (phi -> phi(m))
  std::vector<IntMatrix> evals;
  for (Index t = 0; t < n; ++t) {
    IntMatrix ev(r, k);
    for (Index i = 0; i < k; ++i) ev.col(i) = phi[static_cast<std::size_t>(i)].col(t);
    evals.push_back(ev);
  }
  IntMatrix ev = coordinates_in(psi_cols, columns_of_flattened(evals, r, k));
  if (ev.rows() == ev.cols()) {
    rep.evaluation_det = abs(determinant(ev));
    rep.passed = rep.evaluation_det.is_one();
  } else {
    rep.evaluation_det = 0;
  }
  return rep;
}

bool double_dual_check(const DelignePair& pair, OrderPtr order) { return double_dual_report(pair, order).passed; }

ExtReport ext1_report(const DelignePair& pair, OrderPtr order) {
  const auto view = module_view(pair, order);
  const DelignePair s = regular_pair(*order);
  const auto sview = module_view(s, order);
  const Index n = pair.rank(), r = order->rank();
  ExtReport rep;

  // R-generators of M, added greedily until they span the lattice
  std::vector<IntVector> gens;
  IntMatrix span(n, 0);
  for (Index t = 0; t < n; ++t) {
    IntVector et = IntVector::Constant(n, BigInt(0));
    et(t) = 1;
    if (span.cols() > 0 && lattice_coordinates(span, et)) continue;
    gens.push_back(et);
    IntMatrix rows(static_cast<Index>(gens.size() * view.action.size()), n);
    Index row = 0;
    for (const auto& g : gens)
      for (const auto& a : view.action) rows.row(row++) = (a * g).transpose();
    span = row_lattice_basis(rows).transpose();
  }
  const Index k = static_cast<Index>(gens.size());
  rep.generators = k;

  // R^k -> M, and its kernel K with the induced Frobenius
  IntMatrix pi(n, k * r);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < r; ++j) pi.col(i * r + j) = view.action[static_cast<std::size_t>(j)] * gens[static_cast<std::size_t>(i)];
  const IntMatrix kernel = integer_kernel(pi);
  const Index m = kernel.cols();
  if (m == 0) {
    rep.obstruction = 1;
    rep.passed = true;
    return rep;
  }
  IntMatrix f_free = zero_matrix(k * r, k * r);
  for (Index i = 0; i < k; ++i) f_free.block(i * r, i * r, r, r) = s.F;
  const DelignePair kpair = validate_pair(coordinates_in(kernel, f_free * kernel), pair.q);

  const auto hom_k = hom_basis(kpair, s);
  const IntMatrix hom_cols = columns_of_flattened(hom_k, r, m);
  // restrictions of Hom_R(R^k, R), which is spanned by the maps (0, .., L_j, .., 0)
  std::vector<IntMatrix> restricted;
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < r; ++j) {
      IntMatrix phi = zero_matrix(r, k * r);
      phi.block(0, i * r, r, r) = sview.action[static_cast<std::size_t>(j)];
      restricted.push_back(phi * kernel);
    }
  bool finite = false;
  BigInt idx = lattice_index(hom_cols, columns_of_flattened(restricted, r, m), finite);
  rep.obstruction = finite ? idx : BigInt(0);
  rep.passed = finite && idx.is_one();
  return rep;
}

bool ext1_vanishing_check(const DelignePair& pair, OrderPtr order) { return ext1_report(pair, order).passed; }

}  // namespace weilcat
