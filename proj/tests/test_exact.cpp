#include "weilcat/factor.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace weilcat;

namespace {

IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (long v : r) m(i, j++) = BigInt(v);
    ++i;
  }
  return m;
}

IntPoly random_poly(std::mt19937_64& rng, int degree, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  std::vector<BigInt> c;
  for (int i = 0; i < degree; ++i) c.emplace_back(d(rng));
  c.emplace_back(1);
  return IntPoly(std::move(c));
}

IntPoly product_of(const std::vector<PolyFactor>& fs) {
  IntPoly r{1};
  for (const auto& f : fs) r *= f.poly.pow(static_cast<unsigned>(f.multiplicity));
  return r;
}

}  // namespace

TEST(BigInt, Arithmetic) {
  EXPECT_EQ(floor_div(BigInt(-7), BigInt(2)), BigInt(-4));
  EXPECT_EQ(floor_mod(BigInt(-7), BigInt(5)), BigInt(3));
  EXPECT_EQ(symmetric_mod(BigInt(4), BigInt(5)), BigInt(-1));
  EXPECT_EQ(isqrt(BigInt(20)), BigInt(4));
  EXPECT_EQ(binomial(8, 4), BigInt(70));
  EXPECT_EQ(pow(BigInt(3), 40).str(), "12157665459056928801");
  BigInt s, t;
  EXPECT_EQ(xgcd(BigInt(12), BigInt(18), s, t), BigInt(6));
  EXPECT_EQ(s * BigInt(12) + t * BigInt(18), BigInt(6));
  EXPECT_EQ(Rational(BigInt(2), BigInt(4)), Rational(BigInt(1), BigInt(2)));
}

TEST(Poly, ProductAndDivision) {
  EXPECT_EQ((IntPoly{1, 1} * IntPoly{-1, 1}), (IntPoly{-1, 0, 1}));
  const auto dr = pseudo_divrem(IntPoly{-1, 0, 1}, IntPoly{-1, 1});
  EXPECT_EQ(dr.quot, (IntPoly{1, 1}));
  EXPECT_TRUE(dr.rem.is_zero());
  EXPECT_EQ((IntPoly{5, 0, 1} * IntPoly{5, 1, 1}), (IntPoly{25, 5, 10, 1, 1}));
  EXPECT_EQ((IntPoly{25, 5, 10, 1, 1}).str(), "x^4 + x^3 + 10x^2 + 5x + 25");
}

TEST(Poly, Gcd) {
  EXPECT_EQ(poly_gcd(IntPoly{-1, 0, 1}, IntPoly{-1, 1}), (IntPoly{-1, 1}));
  EXPECT_EQ(poly_gcd(IntPoly{5, 0, 1}, IntPoly{5, 1, 1}), (IntPoly{1}));
  const IntPoly p{6, 4, 2};
  EXPECT_EQ(poly_gcd(p, p), p.primitive_part());
}

TEST(Poly, SturmCounts) {
  EXPECT_EQ(sturm_count(IntPoly{-2, 0, 1}, Rational(0), Rational(2)), 1);
  EXPECT_EQ(sturm_count(IntPoly{1, 0, 1}, Rational(-10), Rational(10)), 0);
  EXPECT_EQ(sturm_count(IntPoly{-8, 1, 1}, Rational(-5), Rational(5)), 2);
  EXPECT_EQ(count_all_real_roots(IntPoly{1, 0, 1}), 0);
  EXPECT_EQ(count_all_real_roots(IntPoly{-2, 0, 1}), 2);
  EXPECT_EQ(count_all_real_roots(IntPoly{-8, 1, 1}), 2);
}

TEST(Poly, SturmMatchesRootConstruction) {
  // Products of distinct linear factors have exactly as many real roots as factors.
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    std::vector<long> roots;
    std::uniform_int_distribution<long> d(-20, 20);
    while (roots.size() < 4) {
      long r = d(rng);
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    IntPoly p{1};
    for (long r : roots) p *= IntPoly{-r, 1};
    p *= IntPoly{1, 0, 1};
    EXPECT_EQ(count_all_real_roots(p), 4);
    EXPECT_EQ(sturm_count(p, Rational(BigInt(1), BigInt(2)), Rational(BigInt(43), BigInt(2))),
              std::count_if(roots.begin(), roots.end(), [](long r) { return r > 0; }));
  }
}

TEST(Factor, Examples) {
  const auto a = factor_int_poly(IntPoly{-1, 0, 1});
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0].poly, (IntPoly{-1, 1}));
  EXPECT_EQ(a[1].poly, (IntPoly{1, 1}));
  const auto b = factor_int_poly(IntPoly{5, 0, 1}.pow(2));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].poly, (IntPoly{5, 0, 1}));
  EXPECT_EQ(b[0].multiplicity, 2);
  const auto c = factor_int_poly(IntPoly{25, 5, 10, 1, 1});
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(product_of(c), (IntPoly{25, 5, 10, 1, 1}));
  EXPECT_TRUE(is_irreducible(IntPoly{5, -1, 1}));
  EXPECT_FALSE(is_irreducible(IntPoly{-4, 0, 1}));
}

TEST(Factor, SwinnertonDyerStyleRecombination) {
  // x^4 - 10x^2 + 1 splits modulo every prime but is irreducible over Q.
  EXPECT_TRUE(is_irreducible(IntPoly{1, 0, -10, 0, 1}));
}

TEST(Factor, RandomProductsRemultiply) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const IntPoly a = random_poly(rng, 1 + t % 4, 9), b = random_poly(rng, 1 + (t / 4) % 3, 9);
    const IntPoly p = t % 5 == 0 ? a * a * b : a * b;
    const auto fs = factor_int_poly(p);
    EXPECT_EQ(product_of(fs), p);
    for (const auto& f : fs) EXPECT_EQ(factor_int_poly(f.poly).size(), 1u);
  }
}

TEST(Factor, DegreeCap) {
  IntPoly p{1};
  for (long r = 1; r <= 17; ++r) p *= IntPoly{-r, 1};
  EXPECT_THROW(factor_int_poly(p), CapExceeded);
}

TEST(Linalg, Smith) {
  EXPECT_EQ(smith_normal_form(identity_matrix(3)).invariants, (std::vector<BigInt>{1, 1, 1}));
  EXPECT_EQ(smith_normal_form(mat({{2, 0}, {0, 4}})).invariants, (std::vector<BigInt>{2, 4}));
  const IntMatrix m = mat({{2, 1}, {0, 3}});
  const auto s = smith_normal_form(m);
  EXPECT_EQ(s.invariants, (std::vector<BigInt>{1, 6}));
  EXPECT_EQ(IntMatrix(s.left * m * s.right), s.diagonal);
}

TEST(Linalg, HermiteIsCanonical) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> d(-6, 6);
  for (int t = 0; t < 30; ++t) {
    IntMatrix m(3, 4);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 4; ++j) m(i, j) = BigInt(d(rng));
    const auto h = hermite_normal_form(m);
    EXPECT_EQ(IntMatrix(h.transform * m), h.form);
    EXPECT_EQ(abs(determinant(h.transform)), BigInt(1));
    // Row operations do not change the form.
    IntMatrix m2 = m;
    m2.row(0) += BigInt(3) * m.row(2);
    m2.row(1).swap(m2.row(2));
    EXPECT_EQ(hermite_normal_form(m2).form, h.form);
  }
}

TEST(Linalg, Kernel) {
  EXPECT_EQ(integer_kernel(zero_matrix(2, 2)).cols(), 2);
  const IntMatrix k1 = integer_kernel(mat({{1, 1}}));
  ASSERT_EQ(k1.cols(), 1);
  EXPECT_EQ(abs(k1(0, 0)), BigInt(1));
  EXPECT_EQ(k1(0, 0), -k1(1, 0));
  const IntMatrix k2 = integer_kernel(mat({{2, 4}}));
  ASSERT_EQ(k2.cols(), 1);
  EXPECT_EQ(abs(k2(0, 0)), BigInt(2));
  EXPECT_EQ(abs(k2(1, 0)), BigInt(1));
}

TEST(Linalg, DeterminantAgainstRationalElimination) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> d(-9, 9);
  for (int t = 0; t < 30; ++t) {
    IntMatrix m(5, 5);
    for (Index i = 0; i < 5; ++i)
      for (Index j = 0; j < 5; ++j) m(i, j) = BigInt(d(rng));
    EXPECT_EQ(Rational(determinant(m)), field_determinant(to_rational(m), RationalField{}));
  }
}

TEST(Linalg, CharpolyCayleyHamilton) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> d(-5, 5);
  for (int t = 0; t < 20; ++t) {
    IntMatrix m(4, 4);
    for (Index i = 0; i < 4; ++i)
      for (Index j = 0; j < 4; ++j) m(i, j) = BigInt(d(rng));
    const IntPoly c = characteristic_polynomial(m);
    EXPECT_TRUE(is_zero(eval_at_matrix(c, m)));
    EXPECT_EQ(c.coeff(0), determinant(m));  // even size
  }
}
