#include "weilcat/factor.hpp"
#include "weilcat/weil.hpp"

#include <gtest/gtest.h>

#include <complex>
#include <set>

#include <Eigen/Eigenvalues>

using namespace weilcat;

namespace {

const PrimePower q5 = PrimePower::from(5);

// Floating oracle: every root of the squarefree part has modulus sqrt(q).
bool roots_on_circle(const IntPoly& p, long q) {
  const IntPoly s = squarefree_part(p);
  const int n = s.degree();
  if (n < 1) return false;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -s.coeff(i).to_double() / s.leading().to_double();
  Eigen::EigenSolver<Eigen::MatrixXd> es(c, false);
  for (const auto& z : es.eigenvalues())
    if (std::abs(std::abs(z) - std::sqrt(double(q))) > 1e-6) return false;
  return true;
}

}  // namespace

TEST(PrimePower, Parsing) {
  const auto q = PrimePower::from(25);
  EXPECT_EQ(q.p, BigInt(5));
  EXPECT_EQ(q.e, 2u);
  EXPECT_TRUE(q.is_square());
  EXPECT_EQ(q.root(), BigInt(5));
  EXPECT_THROW(PrimePower::from(6), ValidationError);
  EXPECT_THROW(PrimePower::from(1), ValidationError);
}

TEST(Weil, FunctionalEquation) {
  EXPECT_TRUE(check_functional_equation(IntPoly{5, -1, 1}, q5));
  EXPECT_TRUE(check_functional_equation(IntPoly{25, 5, 2, 1, 1}, q5));
  EXPECT_FALSE(check_functional_equation(IntPoly{7, -1, 1}, q5));
  EXPECT_THROW(check_functional_equation(IntPoly{1, 1, 1, 1}, q5), ValidationError);
}

TEST(Weil, RealCounterpart) {
  EXPECT_EQ(real_counterpart(IntPoly{5, -3, 1}, q5), (IntPoly{-3, 1}));
  EXPECT_EQ(real_counterpart(IntPoly{5, 0, 1}, q5), (IntPoly{0, 1}));
  // a3 = 1, a2 = 2: y^2 + y + (2 - 10)
  EXPECT_EQ(real_counterpart(IntPoly{25, 5, 2, 1, 1}, q5), (IntPoly{-8, 1, 1}));
}

TEST(Weil, IsWeilExamples) {
  EXPECT_TRUE(is_weil_poly(IntPoly{5, -1, 1}, q5));
  EXPECT_FALSE(is_weil_poly(IntPoly{5, -5, 1}, q5));
  EXPECT_FALSE(is_weil_poly(IntPoly{-1, 1}, q5));
  EXPECT_TRUE(is_weil_poly(IntPoly{-5, 0, 1}, q5));
  EXPECT_TRUE(is_weil_poly(IntPoly{-5, 1}, PrimePower::from(25)));
  EXPECT_FALSE(is_weil_poly(IntPoly{-5, 1}, q5));
  EXPECT_FALSE(is_weil_poly(IntPoly{1, 1, 1, 1}, q5));
  // Boundary: x^2 - 2 sqrt(q) x + q has a double root of modulus sqrt(q).
  EXPECT_TRUE(is_weil_poly(IntPoly{4, -4, 1}, PrimePower::from(4)));
  EXPECT_FALSE(is_weil_poly(IntPoly{5, -5, 1}, q5));
}

TEST(Weil, IsWeilMatchesFloatingOracle) {
  // Scan a box of quartic candidates satisfying the functional equation.
  for (long q : {2L, 3L, 4L}) {
    const auto pq = PrimePower::from(q);
    for (long a3 = -7; a3 <= 7; ++a3)
      for (long a2 = -12; a2 <= 14; ++a2) {
        const IntPoly p{q * q, q * a3, a2, a3, 1};
        EXPECT_EQ(is_weil_poly(p, pq), roots_on_circle(p, q)) << p.str() << " q=" << q;
      }
  }
}

TEST(Weil, Classify) {
  const auto a = classify(IntPoly{5, 0, 1}, q5);
  EXPECT_FALSE(a.is_real);
  EXPECT_FALSE(a.is_ordinary);
  const auto b = classify(IntPoly{5, -1, 1}, q5);
  EXPECT_FALSE(b.is_real);
  EXPECT_TRUE(b.is_ordinary);
  EXPECT_THROW(classify(IntPoly{-25, 0, 1}, PrimePower::from(25)), ValidationError);
  const auto c = classify(IntPoly{-5, 0, 1}, q5);
  EXPECT_TRUE(c.is_real);
  EXPECT_FALSE(c.is_rational);
  const auto d = classify(IntPoly{-5, 1}, PrimePower::from(25));
  EXPECT_TRUE(d.is_rational);
  EXPECT_TRUE(d.half_degree_convention);
  EXPECT_EQ(d.rational_sign(), 1);
}

TEST(Weil, Ordinary) {
  EXPECT_TRUE(is_ordinary(WeilSet(q5, {classify(IntPoly{5, -1, 1}, q5)})));
  EXPECT_FALSE(is_ordinary(WeilSet(q5, {classify(IntPoly{5, 0, 1}, q5)})));
  const auto q25 = PrimePower::from(25);
  EXPECT_FALSE(is_ordinary(WeilSet(q25, {classify(IntPoly{25, 5, 1}, q25)})));
  EXPECT_THROW(is_ordinary(classify(IntPoly{-5, 0, 1}, q5)), ValidationError);
}

TEST(Weil, WeilSetCanonical) {
  const auto a = classify(IntPoly{5, -1, 1}, q5), b = classify(IntPoly{5, 0, 1}, q5);
  const WeilSet x(q5, {a, b}), y(q5, {b, a});
  ASSERT_EQ(x.size(), 2u);
  EXPECT_EQ(x.classes()[0], y.classes()[0]);
  EXPECT_THROW(WeilSet(q5, {a, a}), ValidationError);
  EXPECT_EQ(x.total_degree(), 4);
  EXPECT_TRUE(WeilSet(q5, {a}).is_subset_of(x));
}

TEST(Enumerate, EllipticCounts) {
  const long qs[] = {2, 3, 4, 5, 7, 25};
  const std::size_t expect[] = {5, 7, 9, 9, 11, 21};
  for (int i = 0; i < 6; ++i) {
    const auto pq = PrimePower::from(qs[i]);
    const auto polys = enumerate_weil_polys(pq, 2);
    EXPECT_EQ(polys.size(), expect[i]) << "q=" << qs[i];
    // beta-loop oracle
    std::set<std::vector<BigInt>> oracle;
    for (long b = -10; b <= 10; ++b)
      if (b * b <= 4 * qs[i]) oracle.insert(IntPoly{qs[i], -b, 1}.coeffs());
    std::set<std::vector<BigInt>> got;
    for (const auto& p : polys) got.insert(p.coeffs());
    EXPECT_EQ(got, oracle);
  }
}

TEST(Enumerate, OrderIsLexicographic) {
  const auto polys = enumerate_weil_polys(PrimePower::from(3), 4);
  for (std::size_t i = 1; i < polys.size(); ++i) {
    const auto key = [](const IntPoly& p) { return std::make_pair(p.coeff(3), p.coeff(2)); };
    EXPECT_LT(key(polys[i - 1]), key(polys[i]));
  }
}

TEST(Enumerate, ThreadsAgree) {
  const auto pq = PrimePower::from(5);
  EnumerationOptions opts;
  opts.threads = 4;
  EXPECT_EQ(enumerate_weil_polys(pq, 4), enumerate_weil_polys(pq, 4, opts));
}

TEST(Enumerate, DegreeCap) {
  EXPECT_THROW(enumerate_weil_polys(PrimePower::from(2), 14), CapExceeded);
}
