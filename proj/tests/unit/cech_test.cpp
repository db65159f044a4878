#include "dq/cech.hpp"
#include "dq/errors.hpp"
#include "dq/families.hpp"

#include <gtest/gtest.h>

using namespace dq;

namespace {

AlgebraCover circle_cover() {
  AlgebraCover c;
  c.n = 2;
  FiniteAlgebra q = FiniteAlgebra::rationals();
  FiniteAlgebra qq = FiniteAlgebra::product(q, q);
  c.values[{0}] = q;
  c.values[{1}] = q;
  c.values[{0, 1}] = qq;
  c.restrictions[{{0}, {0, 1}}] = {qq.unit};
  c.restrictions[{{1}, {0, 1}}] = {qq.unit};
  return c;
}

std::vector<std::size_t> dims(const CochainComplex& c, int hi) {
  std::vector<std::size_t> out;
  for (int p = 0; p <= hi; ++p) out.push_back(cohomology(c, p).dimension);
  return out;
}

}  // namespace

TEST(FiniteAlgebra, TruncatedPolynomial) {
  FiniteAlgebra a = FiniteAlgebra::truncated_polynomial(3);
  EXPECT_NO_THROW(check_algebra(a));
  SparseVec x{{1, Rational(1)}};
  EXPECT_EQ(a.multiply(x, x), (SparseVec{{2, Rational(1)}}));
  EXPECT_TRUE(a.multiply(x, a.multiply(x, x)).empty());
  EXPECT_NO_THROW(check_algebra(FiniteAlgebra::product(a, FiniteAlgebra::rationals())));
}

TEST(FiniteAlgebra, BrokenUnitIsRejected) {
  FiniteAlgebra a = FiniteAlgebra::truncated_polynomial(2);
  a.mult[{0, 1}] = SparseVec{{0, Rational(1)}};
  EXPECT_THROW(check_algebra(a), StructuralError);
}

TEST(Subsets, CountsAndLabels) {
  EXPECT_EQ(nonempty_subsets(3).size(), 7u);
  EXPECT_EQ(subset_label({0, 2}), "13");
}

TEST(Cech, ConstantCoverIsAcyclic) {
  for (unsigned n = 1; n <= 3; ++n) {
    CosimplicialComplex a = ordered_cech(abelian_cover(constant_cover(n, FiniteAlgebra::rationals())), 3);
    NormalizedCochains norm = normalized_cochain(a);
    EXPECT_EQ(dims(norm.complex, 2), (std::vector<std::size_t>{1, 0, 0})) << "n=" << n;
    EXPECT_TRUE(is_quasi_iso(norm.inclusion, norm.complex, unnormalized_cochain(a), 0, 2).verdict);
  }
}

TEST(Cech, DisconnectedIntersectionGivesACircle) {
  AlgebraCover c = circle_cover();
  EXPECT_NO_THROW(check_cover(c));
  CosimplicialComplex a = ordered_cech(abelian_cover(c), 3);
  EXPECT_EQ(dims(normalized_cochain(a).complex, 2), (std::vector<std::size_t>{1, 1, 0}));
  EXPECT_EQ(dims(unnormalized_cochain(a), 2), (std::vector<std::size_t>{1, 1, 0}));
}

TEST(Cech, NonMultiplicativeRestrictionIsRejected) {
  AlgebraCover c = circle_cover();
  c.restrictions[{{0}, {0, 1}}] = {SparseVec{{0, Rational(1)}, {1, Rational(2)}}};
  EXPECT_THROW(check_cover(c), StructuralError);
}

TEST(Cech, LieTensorCoverIsADglaPerLevel) {
  auto g = std::make_shared<DGLieAlgebra>(lie_algebra(lie_heisenberg()));
  CosimplicialComplex a = ordered_cech(lie_tensor_cover(g, circle_cover()), 2);
  ASSERT_EQ(a.lie.size(), 3u);
  for (const auto& l : a.lie) EXPECT_TRUE(check_dgla_axioms(*l).ok());
}

TEST(ThomSullivan, CircleCoverComparison) {
  CosimplicialComplex a = ordered_cech(abelian_cover(circle_cover()), 3);
  ThomSullivan ts = thom_sullivan(a, 2);
  TsComparison cmp = ts_comparison(ts, a, normalized_cochain(a), 0, 2);
  EXPECT_TRUE(cmp.verdict.verdict);
  EXPECT_EQ(dims(ts.complex, 2), (std::vector<std::size_t>{1, 1, 0}));
}

TEST(ThomSullivan, BracketBeyondTheCapOverflows) {
  auto g = std::make_shared<DGLieAlgebra>(lie_algebra(lie_sl2()));
  CosimplicialComplex a = ordered_cech(lie_tensor_cover(g, constant_cover(2, FiniteAlgebra::rationals())), 2);
  try {
    thom_sullivan(a, 1);
    FAIL() << "expected overflow";
  } catch (const OverflowError& e) {
    EXPECT_FALSE(e.cap().empty());
  }
}

TEST(CategoryHochschild, OneObjectRationals) {
  CochainComplex c = category_hochschild(one_object_category(FiniteAlgebra::rationals()), 4);
  EXPECT_EQ(dims(c, 3), (std::vector<std::size_t>{1, 0, 0, 0}));
}

TEST(CategoryHochschild, DualNumbersHaveHigherClasses) {
  // HH^p(Q[x]/x², Q[x]/x²) is one-dimensional in each positive degree over Q.
  CochainComplex c = category_hochschild(one_object_category(FiniteAlgebra::truncated_polynomial(2)), 4);
  EXPECT_EQ(dims(c, 3), (std::vector<std::size_t>{2, 1, 1, 1}));
}

TEST(CategoryHochschild, PathCategoryIsRigid) {
  CochainComplex c = category_hochschild(path_category_a2(), 4);
  EXPECT_EQ(dims(c, 3), (std::vector<std::size_t>{1, 0, 0, 0}));
}

TEST(DoubleComplex, RowsAreExact) {
  for (unsigned n = 1; n <= 3; ++n) {
    DoubleComplexReport r = double_complex_check(constant_cover(n, FiniteAlgebra::rationals()), 3);
    EXPECT_TRUE(r.ok()) << "n=" << n;
    EXPECT_TRUE(r.vertical_commutes);
    for (const auto& row : r.rows) EXPECT_EQ(row.dims.size(), n + 1);
  }
  EXPECT_TRUE(double_complex_check(constant_cover(2, FiniteAlgebra::truncated_polynomial(2)), 2).ok());
}
