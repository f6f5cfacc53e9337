#include "weilcat/linalg.hpp"

#include <algorithm>

namespace weilcat {

IntMatrix identity_matrix(Index n) {
  IntMatrix m = zero_matrix(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix zero_matrix(Index rows, Index cols) {
  IntMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = 0;
  return m;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

RatVector to_rational(const IntVector& v) {
  RatVector r(v.size());
  for (Index i = 0; i < v.size(); ++i) r(i) = Rational(v(i));
  return r;
}

std::optional<IntMatrix> to_integer(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_integer()) return std::nullopt;
      r(i, j) = m(i, j).num();
    }
  return r;
}

Mat<std::int64_t> reduce_mod(const IntMatrix& m, const PrimeField& f) {
  Mat<std::int64_t> r(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) r(i, j) = f.reduce(m(i, j));
  return r;
}

bool is_zero(const IntMatrix& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

BigInt determinant(const IntMatrix& input) {
  if (input.rows() != input.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const Index n = input.rows();
  if (n == 0) return BigInt(1);
  IntMatrix a = input;
  BigInt prev(1);
  int sign = 1;
  for (Index k = 0; k < n - 1; ++k) {
    if (a(k, k).is_zero()) {
      Index swap = -1;
      for (Index i = k + 1; i < n; ++i)
        if (!a(i, k).is_zero()) {
          swap = i;
          break;
        }
      if (swap < 0) return BigInt(0);
      a.row(k).swap(a.row(swap));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j) {
        a(i, j) = divexact(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev);
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

namespace {

// Row operations on two rows i, j of one matrix: (ri, rj) <- (a ri + b rj, c ri + d rj).
void combine_rows(IntMatrix& m, Index i, Index j, const BigInt& a, const BigInt& b, const BigInt& c,
                  const BigInt& d) {
  for (Index k = 0; k < m.cols(); ++k) {
    BigInt x = a * m(i, k) + b * m(j, k);
    BigInt y = c * m(i, k) + d * m(j, k);
    m(i, k) = std::move(x);
    m(j, k) = std::move(y);
  }
}

void add_row_multiple(IntMatrix& m, Index target, Index source, const BigInt& factor) {
  if (factor.is_zero()) return;
  for (Index k = 0; k < m.cols(); ++k) m(target, k) += factor * m(source, k);
}

void add_col_multiple(IntMatrix& m, Index target, Index source, const BigInt& factor) {
  if (factor.is_zero()) return;
  for (Index k = 0; k < m.rows(); ++k) m(k, target) += factor * m(k, source);
}

// Hermite reduction of h restricted to its first `ncols` columns; every row
// operation is mirrored on u when it is non-null. Returns the rank.
Index hermite_in_place(IntMatrix& h, IntMatrix* u, Index ncols) {
  const Index m = h.rows();
  Index r = 0;
  for (Index c = 0; c < ncols && r < m; ++c) {
    for (Index i = r + 1; i < m; ++i) {
      if (h(i, c).is_zero()) continue;
      BigInt a = h(r, c), b = h(i, c), s, t;
      BigInt g = xgcd(a, b, s, t);
      BigInt ca = -divexact(b, g), cb = divexact(a, g);
      combine_rows(h, r, i, s, t, ca, cb);
      if (u) combine_rows(*u, r, i, s, t, ca, cb);
    }
    if (h(r, c).is_zero()) continue;
    if (h(r, c).sign() < 0) {
      h.row(r) = -h.row(r);
      if (u) u->row(r) = -u->row(r);
    }
    for (Index k = 0; k < r; ++k) {
      BigInt f = -floor_div(h(k, c), h(r, c));
      add_row_multiple(h, k, r, f);
      if (u) add_row_multiple(*u, k, r, f);
    }
    ++r;
  }
  return r;
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& m) {
  HermiteForm out;
  out.form = m;
  out.transform = identity_matrix(m.rows());
  out.rank = hermite_in_place(out.form, &out.transform, m.cols());
  return out;
}

Index integer_rank(const IntMatrix& m) {
  IntMatrix h = m;
  return hermite_in_place(h, nullptr, m.cols());
}

SmithForm smith_normal_form(const IntMatrix& input) {
  const Index m = input.rows(), n = input.cols();
  IntMatrix d = input;
  IntMatrix left = identity_matrix(m);
  IntMatrix right = identity_matrix(n);
  const Index steps = std::min(m, n);
  for (Index t = 0; t < steps; ++t) {
    bool found_any = true;
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      Index pi = -1, pj = -1;
      for (Index i = t; i < m; ++i)
        for (Index j = t; j < n; ++j)
          if (!d(i, j).is_zero() && (pi < 0 || abs(d(i, j)) < abs(d(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) {
        found_any = false;
        break;
      }
      if (pi != t) {
        d.row(pi).swap(d.row(t));
        left.row(pi).swap(left.row(t));
      }
      if (pj != t) {
        d.col(pj).swap(d.col(t));
        right.col(pj).swap(right.col(t));
      }
      bool clean = true;
      for (Index i = t + 1; i < m; ++i) {
        if (d(i, t).is_zero()) continue;
        BigInt q = -(d(i, t) / d(t, t));
        add_row_multiple(d, i, t, q);
        add_row_multiple(left, i, t, q);
        if (!d(i, t).is_zero()) clean = false;
      }
      for (Index j = t + 1; j < n; ++j) {
        if (d(t, j).is_zero()) continue;
        BigInt q = -(d(t, j) / d(t, t));
        add_col_multiple(d, j, t, q);
        add_col_multiple(right, j, t, q);
        if (!d(t, j).is_zero()) clean = false;
      }
      if (!clean) continue;
      Index bad = -1;
      for (Index i = t + 1; i < m && bad < 0; ++i)
        for (Index j = t + 1; j < n; ++j)
          if (!divides(d(t, t), d(i, j))) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      add_row_multiple(d, t, bad, BigInt(1));
      add_row_multiple(left, t, bad, BigInt(1));
    }
    if (!found_any) break;
    if (d(t, t).sign() < 0) {
      d.row(t) = -d.row(t);
      left.row(t) = -left.row(t);
    }
  }
  SmithForm out;
  for (Index t = 0; t < steps; ++t)
    if (!d(t, t).is_zero()) out.invariants.push_back(d(t, t));
  out.diagonal = std::move(d);
  out.left = std::move(left);
  out.right = std::move(right);
  return out;
}

IntMatrix row_lattice_basis(const IntMatrix& generators) {
  IntMatrix h = generators;
  Index r = hermite_in_place(h, nullptr, h.cols());
  return h.topRows(r);
}

bool same_row_lattice(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) return false;
  IntMatrix ha = row_lattice_basis(a), hb = row_lattice_basis(b);
  return ha.rows() == hb.rows() && ha == hb;
}

namespace {

// Replace the column lattice of k (full column rank) by its saturation, given
// a multiple of the index. p-saturation: while some combination t of the
// columns vanishes mod p, swap a column for (k t) / p.
void saturate_columns(IntMatrix& k, const BigInt& index_multiple) {
  for (const BigInt& p : prime_divisors(index_multiple)) {
    if (p >= BigInt(std::int64_t{1} << 31)) throw std::domain_error("saturation prime out of range");
    const PrimeField f(p.to_long());
    for (;;) {
      const auto null = nullspace(reduce_mod(k, f), f);
      if (null.cols() == 0) break;
      Index j = 0;
      while (null(j, 0) == 0) ++j;
      const std::int64_t s = f.inv(null(j, 0));
      IntVector t(k.cols());
      for (Index i = 0; i < t.size(); ++i) t(i) = BigInt(static_cast<long>(f.mul(null(i, 0), s)));
      IntVector v = k * t;
      for (Index i = 0; i < v.size(); ++i) v(i) = divexact(v(i), p);
      k.col(j) = v;
    }
  }
}

}  // namespace

IntMatrix integer_kernel(const IntMatrix& m) {
  const Index n = m.cols();
  if (m.rows() == 0) return identity_matrix(n);
  // Rational kernel in reduced echelon shape: column j has a single nonzero
  // entry among the free coordinates, so the product of those entries bounds
  // the index of the integer span in its saturation.
  const RatMatrix basis = nullspace(to_rational(m), RationalField{});
  IntMatrix k(n, basis.cols());
  BigInt index(1);
  for (Index j = 0; j < basis.cols(); ++j) {
    BigInt den(1);
    for (Index i = 0; i < n; ++i) den = lcm(den, basis(i, j).den());
    BigInt content(0);
    for (Index i = 0; i < n; ++i) {
      k(i, j) = basis(i, j).num() * divexact(den, basis(i, j).den());
      content = gcd(content, k(i, j));
    }
    for (Index i = 0; i < n; ++i) k(i, j) = divexact(k(i, j), content);
    index *= divexact(den, content);
  }
  saturate_columns(k, index);
  return row_lattice_basis(IntMatrix(k.transpose())).transpose();
}

IntMatrix saturate_rows(const IntMatrix& generators) {
  if (generators.rows() == 0) return IntMatrix(0, generators.cols());
  // The kernel of the kernel is the saturation.
  IntMatrix perp = integer_kernel(generators);  // columns v with g v = 0
  if (perp.cols() == 0) return identity_matrix(generators.cols());
  return integer_kernel(perp.transpose()).transpose();
}

std::optional<IntVector> lattice_coordinates(const IntMatrix& basis, const IntVector& v) {
  RationalField f;
  auto sol = solve(to_rational(basis), to_rational(v), f);
  if (!sol) return std::nullopt;
  // verify exactly: columns may be dependent only if the caller passed a non-basis
  IntVector out(sol->size());
  for (Index i = 0; i < sol->size(); ++i) {
    if (!(*sol)(i).is_integer()) return std::nullopt;
    out(i) = (*sol)(i).num();
  }
  if (basis * out != v) return std::nullopt;
  return out;
}

IntVector flatten(const IntMatrix& m) {
  IntVector v(m.size());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

IntMatrix unflatten(const IntVector& v, Index rows, Index cols) {
  IntMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
  return m;
}

}  // namespace weilcat
