#include "dq/errors.hpp"
#include "dq/families.hpp"
#include "dq/linalg.hpp"
#include "dq/matrix.hpp"

#include <gtest/gtest.h>

using namespace dq;

namespace {

// Q -> Q^2 -> Q with d(a) = b1 + b2, d(b1) = c, d(b2) = -c.
CochainComplex small_complex() {
  SpacePtr s = make_space({{0, {"a"}}, {1, {"b1", "b2"}}, {2, {"c"}}});
  GradedLinearMap d(s, s, 1);
  d.add(0, 1, 1);
  d.add(0, 2, 1);
  d.add(1, 3, 1);
  d.add(2, 3, -1);
  return CochainComplex(s, d);
}

}  // namespace

TEST(Rational, CanonicalText) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(Rational(-3)), "-3/1");
  EXPECT_EQ(parse_rational("-10/4"), Rational(-5, 2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("x"), ParseError);
  EXPECT_EQ(factorial(5), Rational(120));
  EXPECT_EQ(binomial(6, 2), Rational(15));
}

TEST(SparseVec, AxpyDropsZeros) {
  SparseVec y{{0, Rational(1)}, {2, Rational(3)}};
  axpy(y, Rational(-1), SparseVec{{0, Rational(1)}});
  EXPECT_EQ(y.size(), 1u);
  EXPECT_EQ(y.at(2), Rational(3));
}

TEST(GradedSpace, IndexingAndRanges) {
  GradedSpace s({{-1, {"u"}}, {0, {"a", "b"}}, {3, {"z"}}});
  EXPECT_EQ(s.size(), 4u);
  EXPECT_EQ(s.index(0, "b"), 2u);
  EXPECT_EQ(s.range(0), std::make_pair(std::size_t(1), std::size_t(3)));
  EXPECT_EQ(s.dim(2), 0u);
  EXPECT_FALSE(s.find(1, "a").has_value());
  EXPECT_EQ(s.degrees(), (std::vector<int>{-1, 0, 3}));
}

TEST(Matrix, RowReduceAndKernel) {
  Matrix m(2, 3);
  m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
  m(1, 0) = 2; m(1, 1) = 4; m(1, 2) = 7;
  RowReduction r = row_reduce(m);
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 2}));
  auto ker = kernel_from_rref(r, 3);
  ASSERT_EQ(ker.size(), 1u);
  EXPECT_EQ(ker[0][0], Rational(-2));
  EXPECT_EQ(ker[0][1], Rational(1));
  EXPECT_EQ(ker[0][2], Rational(0));
}

TEST(Matrix, SparseSolve) {
  std::vector<SparseVec> cols{{{0, Rational(1)}, {1, Rational(1)}}, {{1, Rational(2)}}};
  auto x = sparse_solve(cols, {{0, Rational(3)}, {1, Rational(7)}});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(x->at(0), Rational(3));
  EXPECT_EQ(x->at(1), Rational(2));
  EXPECT_FALSE(sparse_solve({{{0, Rational(1)}}}, {{1, Rational(1)}}).has_value());
  EXPECT_EQ(sparse_rank(cols), 2u);
}

TEST(CochainComplex, RejectsNonSquareZero) {
  SpacePtr s = make_space({{0, {"a"}}, {1, {"b"}}, {2, {"c"}}});
  GradedLinearMap d(s, s, 1);
  d.add(0, 1, 1);
  d.add(1, 2, 1);
  EXPECT_THROW(CochainComplex(s, d), StructuralError);
}

TEST(Cohomology, HandComputed) {
  CochainComplex c = small_complex();
  EXPECT_EQ(cohomology(c, 0).dimension, 0u);
  EXPECT_EQ(cohomology(c, 1).dimension, 0u);
  EXPECT_EQ(cohomology(c, 2).dimension, 0u);
  EXPECT_EQ(cohomology(c, 5).dimension, 0u);
  // Drop the top: H^1 = ker/im has dimension 1.
  SpacePtr s = make_space({{0, {"a"}}, {1, {"b1", "b2"}}});
  GradedLinearMap d(s, s, 1);
  d.add(0, 1, 1);
  d.add(0, 2, 1);
  CohomologyReport r = cohomology(CochainComplex(s, d), 1);
  EXPECT_EQ(r.dimension, 1u);
  ASSERT_EQ(r.representatives.size(), 1u);
  EXPECT_EQ(r.representatives[0].homogeneous_degree(), 1);
}

TEST(Cohomology, InvariantUnderBasisChange) {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    DGLieAlgebra g = random_abelian(rng, -1, 2, 3);
    DGLieAlgebra h = random_basis_change(g, rng);
    for (int p = -1; p <= 2; ++p)
      EXPECT_EQ(cohomology(g.complex(), p).dimension, cohomology(h.complex(), p).dimension) << "degree " << p;
  }
}

TEST(QuasiIso, IdentityAndZero) {
  CochainComplex c = small_complex();
  SpacePtr s = make_space({{0, {"a"}}, {1, {"b"}}});
  GradedLinearMap d = GradedLinearMap::zero(s, s, 1);
  CochainComplex flat(s, d);
  QuasiIsoReport id = is_quasi_iso(GradedLinearMap::identity(s), flat, flat, 0, 1);
  EXPECT_TRUE(id.verdict);
  QuasiIsoReport zero = is_quasi_iso(GradedLinearMap::zero(s, s, 0), flat, flat, 0, 1);
  EXPECT_FALSE(zero.verdict);
  EXPECT_TRUE(is_quasi_iso(GradedLinearMap::identity(c.space()), c, c, 0, 2).verdict);
}

TEST(ChainMap, NamesOffendingVector) {
  CochainComplex c = small_complex();
  GradedLinearMap f(c.space(), c.space(), 0);
  f.add(0, 0, 1);
  EXPECT_THROW(require_chain_map(f, c, c), ChainMapError);
}

TEST(GradedVector, UnknownLabelIsDomainError) {
  SpacePtr s = make_space({{0, {"a"}}});
  EXPECT_THROW(GradedVector::from_labels(s, {{0, {{"nope", Rational(1)}}}}), DomainError);
}
