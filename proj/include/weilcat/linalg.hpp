#pragma once

// Dense exact linear algebra.
//
// Matrices are plain Eigen dense types over an exact scalar. Elimination over a
// field is written once, templated on a small field policy (rationals or a
// prime field); lattice algorithms (Hermite/Smith forms, integer kernels) work
// on BigInt matrices directly.

#include "weilcat/bigint.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace weilcat {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Mat<BigInt>;
using IntVector = Vec<BigInt>;
using RatMatrix = Mat<Rational>;
using RatVector = Vec<Rational>;
using Index = Eigen::Index;

struct RationalField {
  using Scalar = Rational;
  Scalar zero() const { return Rational(0); }
  Scalar one() const { return Rational(1); }
  bool is_zero(const Scalar& a) const { return a.is_zero(); }
  Scalar add(const Scalar& a, const Scalar& b) const { return a + b; }
  Scalar sub(const Scalar& a, const Scalar& b) const { return a - b; }
  Scalar mul(const Scalar& a, const Scalar& b) const { return a * b; }
  Scalar inv(const Scalar& a) const { return Rational(1) / a; }
};

// Z/pZ with p < 2^31, elements kept in [0, p).
struct PrimeField {
  using Scalar = std::int64_t;
  std::int64_t p;

  explicit PrimeField(std::int64_t modulus) : p(modulus) {
    if (modulus < 2 || modulus >= (std::int64_t{1} << 31))
      throw std::invalid_argument("prime field modulus out of range");
  }
  Scalar reduce(std::int64_t a) const {
    a %= p;
    return a < 0 ? a + p : a;
  }
  Scalar reduce(const BigInt& a) const { return floor_mod(a, BigInt(p)).to_long(); }
  Scalar zero() const { return 0; }
  Scalar one() const { return 1; }
  bool is_zero(Scalar a) const { return a == 0; }
  Scalar add(Scalar a, Scalar b) const { return (a + b) % p; }
  Scalar sub(Scalar a, Scalar b) const { return (a - b + p) % p; }
  Scalar mul(Scalar a, Scalar b) const { return (a * b) % p; }
  Scalar pow(Scalar a, std::uint64_t e) const {
    Scalar r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Scalar inv(Scalar a) const {
    if (a == 0) throw std::domain_error("inverse of zero in prime field");
    return pow(a, static_cast<std::uint64_t>(p - 2));
  }
};

template <class Field>
struct RowEchelon {
  Mat<typename Field::Scalar> matrix;
  std::vector<Index> pivots;
};

// Reduced row echelon form; pivots are the pivot column indices.
template <class Field>
RowEchelon<Field> reduced_row_echelon(Mat<typename Field::Scalar> m, const Field& f) {
  RowEchelon<Field> out;
  Index r = 0;
  for (Index c = 0; c < m.cols() && r < m.rows(); ++c) {
    Index piv = -1;
    for (Index i = r; i < m.rows(); ++i) {
      if (!f.is_zero(m(i, c))) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r) m.row(piv).swap(m.row(r));
    auto scale = f.inv(m(r, c));
    for (Index j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), scale);
    for (Index i = 0; i < m.rows(); ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      auto factor = m(i, c);
      for (Index j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.matrix = std::move(m);
  return out;
}

template <class Field>
Index rank(const Mat<typename Field::Scalar>& m, const Field& f) {
  return static_cast<Index>(reduced_row_echelon(m, f).pivots.size());
}

// Basis of {x : m x = 0}, one vector per column.
template <class Field>
Mat<typename Field::Scalar> nullspace(const Mat<typename Field::Scalar>& m, const Field& f) {
  auto ech = reduced_row_echelon(m, f);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (Index c : ech.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  Index nfree = m.cols() - static_cast<Index>(ech.pivots.size());
  Mat<typename Field::Scalar> basis(m.cols(), nfree);
  for (Index i = 0; i < basis.rows(); ++i)
    for (Index j = 0; j < basis.cols(); ++j) basis(i, j) = f.zero();
  Index k = 0;
  for (Index j = 0; j < m.cols(); ++j) {
    if (is_pivot[static_cast<std::size_t>(j)]) continue;
    basis(j, k) = f.one();
    for (std::size_t r = 0; r < ech.pivots.size(); ++r)
      basis(ech.pivots[r], k) = f.sub(f.zero(), ech.matrix(static_cast<Index>(r), j));
    ++k;
  }
  return basis;
}

// Some solution of a x = b, or nullopt when inconsistent.
template <class Field>
std::optional<Vec<typename Field::Scalar>> solve(const Mat<typename Field::Scalar>& a,
                                                 const Vec<typename Field::Scalar>& b,
                                                 const Field& f) {
  Mat<typename Field::Scalar> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  auto ech = reduced_row_echelon(std::move(aug), f);
  if (!ech.pivots.empty() && ech.pivots.back() == a.cols()) return std::nullopt;
  Vec<typename Field::Scalar> x(a.cols());
  for (Index i = 0; i < x.size(); ++i) x(i) = f.zero();
  for (std::size_t r = 0; r < ech.pivots.size(); ++r)
    x(ech.pivots[r]) = ech.matrix(static_cast<Index>(r), a.cols());
  return x;
}

// Determinant over a field by elimination.
template <class Field>
typename Field::Scalar field_determinant(Mat<typename Field::Scalar> m, const Field& f) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  auto det = f.one();
  for (Index c = 0; c < m.cols(); ++c) {
    Index piv = -1;
    for (Index i = c; i < m.rows(); ++i)
      if (!f.is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv < 0) return f.zero();
    if (piv != c) {
      m.row(piv).swap(m.row(c));
      det = f.sub(f.zero(), det);
    }
    det = f.mul(det, m(c, c));
    auto inv = f.inv(m(c, c));
    for (Index i = c + 1; i < m.rows(); ++i) {
      if (f.is_zero(m(i, c))) continue;
      auto factor = f.mul(m(i, c), inv);
      for (Index j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(c, j)));
    }
  }
  return det;
}

IntMatrix identity_matrix(Index n);
IntMatrix zero_matrix(Index rows, Index cols);
RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(const IntVector& v);
// Entrywise conversion; nullopt if some entry is not an integer.
std::optional<IntMatrix> to_integer(const RatMatrix& m);
Mat<std::int64_t> reduce_mod(const IntMatrix& m, const PrimeField& f);
bool is_zero(const IntMatrix& m);

// Fraction-free (Bareiss) determinant.
BigInt determinant(const IntMatrix& m);
Index integer_rank(const IntMatrix& m);

struct HermiteForm {
  IntMatrix form;       // upper echelon, positive pivots, entries above pivots in [0, pivot)
  IntMatrix transform;  // unimodular, transform * input == form
  Index rank = 0;
};
HermiteForm hermite_normal_form(const IntMatrix& m);

struct SmithForm {
  IntMatrix diagonal;  // left * input * right
  IntMatrix left;
  IntMatrix right;
  std::vector<BigInt> invariants;  // nonzero diagonal entries, d1 | d2 | ...
};
SmithForm smith_normal_form(const IntMatrix& m);

// Saturated basis of {v in Z^n : m v = 0}, one vector per column, in Hermite form.
IntMatrix integer_kernel(const IntMatrix& m);

// Hermite basis (rows) of the lattice spanned by the rows of generators.
IntMatrix row_lattice_basis(const IntMatrix& generators);
bool same_row_lattice(const IntMatrix& a, const IntMatrix& b);
// Saturation (L tensor Q) intersected with Z^n of the row lattice, as Hermite rows.
IntMatrix saturate_rows(const IntMatrix& generators);

// Coordinates of v in the Z-basis given by the columns of basis; nullopt when v
// is outside the lattice.
std::optional<IntVector> lattice_coordinates(const IntMatrix& basis, const IntVector& v);

// Row-major flattening helpers used by the homomorphism solvers.
IntVector flatten(const IntMatrix& m);
IntMatrix unflatten(const IntVector& v, Index rows, Index cols);

}  // namespace weilcat
