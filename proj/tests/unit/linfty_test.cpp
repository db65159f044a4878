#include "dq/families.hpp"
#include "dq/linfty.hpp"
#include "dq/polywindows.hpp"

#include <gtest/gtest.h>

using namespace dq;

namespace {

// Odd/even space in V = g[1]: degree-1 elements of g are even in V.
SpacePtr mixed_space() { return make_space({{0, {"a", "b"}}, {1, {"x", "y"}}}); }

}  // namespace

TEST(Koszul, HandSigns) {
  // Two odd letters swap with a sign, an even letter commutes.
  EXPECT_EQ(koszul_sign({1, 1}, {{2}, {1}}), -1);
  EXPECT_EQ(koszul_sign({1, 0}, {{2}, {1}}), 1);
  EXPECT_EQ(koszul_sign({1, 1, 1}, {{3}, {1, 2}}), 1);
  EXPECT_EQ(koszul_sign({1, 1, 1}, {{2}, {1, 3}}), -1);
  EXPECT_THROW(koszul_sign({1, 1}, {{1}, {1}}), DomainError);
}

TEST(Words, CanonicalizeKillsRepeatedOddLetters) {
  SpacePtr s = mixed_space();
  // a, b have V-degree −1 (odd); x, y have V-degree 0 (even).
  Word w{1, 0};
  EXPECT_EQ(canonicalize(*s, w), -1);
  EXPECT_EQ(w, (Word{0, 1}));
  Word rep{0, 0};
  EXPECT_EQ(canonicalize(*s, rep), 0);
  Word even{3, 2, 3};
  EXPECT_EQ(canonicalize(*s, even), 1);
  EXPECT_EQ(even, (Word{2, 3, 3}));
}

TEST(Words, SymmetricProductIsGradedCommutative) {
  SpacePtr s = mixed_space();
  SymElement a{{Word{0}, Rational(1)}}, b{{Word{1}, Rational(1)}}, x{{Word{2}, Rational(1)}};
  SymElement ab = sym_multiply(*s, a, b), ba = sym_multiply(*s, b, a);
  EXPECT_EQ(ab.at(Word{0, 1}), -ba.at(Word{0, 1}));
  EXPECT_EQ(sym_multiply(*s, a, x), sym_multiply(*s, x, a));
  EXPECT_TRUE(sym_multiply(*s, a, a).empty());
}

TEST(Words, BasisWordCounts) {
  SpacePtr s = mixed_space();
  // Two odd and two even letters: length-2 words are 1 + 4 + 3.
  EXPECT_EQ(basis_words(*s, 2).size(), 8u);
  EXPECT_EQ(basis_words(*s, 3).size(), 2u + 2 * 3 + 4);
}

TEST(FromDgla, ComponentsFollowTheBracket) {
  auto g = std::make_shared<DGLieAlgebra>(lie_algebra(lie_sl2()));
  TowerPtr q = from_dgla(g, 4);
  // ∂²Q(h e) = (−1)^{|h|}[h,e] = 2e.
  EXPECT_EQ(q->component({0, 1}), (SparseVec{{1, Rational(2)}}));
  EXPECT_TRUE(q->component({0, 1, 2}).empty());
  EXPECT_EQ(q->eval({1, 0}), (SparseVec{{1, Rational(-2)}}));
}

TEST(LinftyDefect, ZeroForDglasAndBothFormsAgree) {
  std::vector<DglaPtr> algebras{lie_tensor_forms(lie_sl2(), 2, 2).algebra,
                                lie_tensor_forms(lie_heisenberg(), 1, 2, 1).algebra, tpoly_window(2, 1).algebra,
                                dpoly_constant_window(1, 3).algebra};
  for (const auto& g : algebras) {
    TowerPtr q = from_dgla(g, 4);
    EXPECT_TRUE(sweep_linfty(*q, 3).ok());
    for (unsigned n = 1; n <= 3; ++n)
      for (const Word& w : basis_words(*g->space(), n))
        ASSERT_EQ(linfty_defect(*q, w), linfty_defect_composed(*q, w));
  }
}

TEST(LinftyDefect, BrokenJacobiFailsAtArityThree) {
  auto g = std::make_shared<DGLieAlgebra>(lie_algebra(lie_broken_jacobi()));
  TowerPtr q = from_dgla(g, 4);
  EXPECT_TRUE(sweep_linfty(*q, 2).ok());
  SweepReport r = sweep_linfty(*q, 3);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.failures.front().arity, 3u);
}

TEST(ExplicitTower, RejectsInconsistentRepeats) {
  SpacePtr s = mixed_space();
  ExplicitTower t(TowerKind::morphism, s, s, 0, 2);
  t.set({2, 3}, {{2, Rational(1)}});
  EXPECT_THROW(t.set({3, 2}, {{2, Rational(2)}}), DomainError);
  EXPECT_THROW(t.set({2, 2, 3}, {{2, Rational(1)}}), DomainError);
}

TEST(Morphisms, DglaProjectionIsStrict) {
  LieForms big = lie_tensor_forms(lie_affine2(), 1, 3, 1);
  LieForms small = lie_tensor_forms(lie_affine2(), 1, 2, 1);
  GradedLinearMap p = lie_forms_projection(big, small);
  TowerPtr psi = linear_morphism(p, 3);
  EXPECT_TRUE(sweep_morphism(*psi, *from_dgla(big.algebra, 3), *from_dgla(small.algebra, 3), 3).ok());
}

TEST(Morphisms, RandomAbelianizationSatisfiesTheIdentity) {
  Rng rng(4);
  DglaPtr g = lie_tensor_forms(lie_sl2(), 1, 2, 1).algebra;
  AbelianizationMorphism ab = random_abelianization(*g, {}, 3, rng);
  SweepReport r = sweep_morphism(*ab.psi, *from_dgla(g, 3), *from_dgla(ab.target, 3), 3);
  EXPECT_TRUE(r.ok());
  EXPECT_GT(r.words_checked, 0u);
  for (const Word& w : basis_words(*g->space(), 2))
    EXPECT_EQ(morphism_defect(*ab.psi, *from_dgla(g, 3), *from_dgla(ab.target, 3), w).forms_agree, true);
}

TEST(Twisting, LinearPartIsTheTwistedDifferential) {
  Rng rng(13);
  DglaPtr g = lie_tensor_forms(lie_affine2(), 1, 2, 2).algebra;
  MCElement pi = random_mc(g, 3, rng);
  ScalarExtension eg = extend_scalars(g, 3);
  EpsGrading gg = EpsGrading::of(eg);
  SparseVec omega = eg.embed(pi.coeffs);
  TowerPtr qw = twist_structure(from_dgla(eg.algebra, 3), omega, gg);
  TwistedDgla td = twist_dgla(pi);
  for (std::size_t i = 0; i < eg.algebra->space()->size(); ++i)
    EXPECT_EQ(qw->component({i}), scaled(td.extension.algebra->d().column(i), Rational(-1)));
  EXPECT_TRUE(linfty_mc_residual(*from_dgla(eg.algebra, 3), omega, gg).empty());
  EXPECT_TRUE(sweep_linfty(*qw, 3, &gg).ok());
}

TEST(Twisting, ZeroOmegaChangesNothing) {
  DglaPtr g = lie_tensor_forms(lie_heisenberg(), 1, 2).algebra;
  ScalarExtension eg = extend_scalars(g, 2);
  EpsGrading gg = EpsGrading::of(eg);
  TowerPtr q = from_dgla(eg.algebra, 3);
  TowerPtr q0 = twist_structure(q, {}, gg);
  for (unsigned n = 1; n <= 3; ++n)
    for (const Word& w : basis_words(*eg.algebra->space(), n, &gg)) ASSERT_EQ(q->component(w), q0->component(w));
}

TEST(Twisting, DividedPowersOfAnEvenElement) {
  SpacePtr s = mixed_space();
  SparseVec omega{{2, Rational(2)}};
  auto p = divided_powers(*s, omega, 3);
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(p[2].at(Word{2, 2}), Rational(2));
  EXPECT_EQ(p[3].at(Word{2, 2, 2}), Rational(4, 3));
}

TEST(Descent, LieDerivativeIsACommutator) {
  LieForms lf = lie_tensor_forms(lie_sl2(), 2, 2);
  std::vector<std::vector<int>> euler{{1, 0}, {0, 1}}, shear{{0, 1}, {0, 0}};
  ContractionAction act = lie_forms_action(lf, {"euler", "shear"}, {euler, shear});
  EXPECT_TRUE(check_action(act).ok());
  TowerPtr q = from_dgla(lf.algebra, 3);
  for (std::size_t v = 0; v < 2; ++v)
    for (unsigned n = 1; n <= 3; ++n)
      for (const Word& w : basis_words(*lf.algebra->space(), n))
        ASSERT_TRUE(lie_coderivation_defect(*q, act, v, w).empty()) << word_labels(*lf.algebra->space(), w);
}

TEST(Descent, ReducedAlgebraIsInvariant) {
  LieForms lf = lie_tensor_forms(lie_affine2(), 2, 2);
  ContractionAction act = lie_forms_action(lf, {"euler"}, {{{1, 0}, {0, 1}}});
  ReducedAlgebra red = reduce_by_action(act);
  EXPECT_TRUE(check_dgla_axioms(*red.algebra).ok());
  GradedLinearMap i = act.contractions[0], l = act.lie(0);
  for (std::size_t k = 0; k < red.algebra->space()->size(); ++k) {
    SparseVec x = red.embedding.column(k);
    EXPECT_TRUE(i.apply(x).empty());
    EXPECT_TRUE(l.apply(x).empty());
  }
}

TEST(Descent, NonEquivariantMorphismIsRejected) {
  LieForms lf = lie_tensor_forms(lie_affine2(), 1, 2);
  ContractionAction act = lie_forms_action(lf, {"euler"}, {{{1}}});
  Rng rng(2);
  AbelianizationMorphism ab = random_abelianization(*lf.algebra, {}, 2, rng);
  ContractionAction target = zero_action(ab.target, {"euler"});
  bool equivariant = true;
  for (unsigned n = 1; n <= 2 && equivariant; ++n)
    for (const Word& w : basis_words(*lf.algebra->space(), n))
      if (!action_commutator(*ab.psi, act, target, 0, w).empty()) equivariant = false;
  if (equivariant) GTEST_SKIP() << "random morphism happened to be equivariant";
  EXPECT_THROW(descend_morphism(ab.psi, act, target, 2), DomainError);
}

TEST(Descent, TwistedCompatibility) {
  LieForms lf = lie_tensor_forms(lie_sl2(), 2, 2);
  ContractionAction act = lie_forms_action(lf, {"euler"}, {{{1, 0}, {0, 1}}});
  Rng rng(8);
  AbelianizationMorphism ab = random_abelianization(*lf.algebra, act.contractions, 3, rng);
  ContractionAction target = zero_action(ab.target, {"euler"});
  ScalarExtension es = extend_scalars(lf.algebra, 2), et = extend_scalars(ab.target, 2);
  MCElement pi = random_mc(lf.algebra, 2, rng);
  DescentTwist tw{&es, &et, es.embed(pi.coeffs)};
  DescentReport r = descend_morphism(ab.psi, act, target, 3, &tw);
  EXPECT_TRUE(r.commutes);
  EXPECT_TRUE(r.lands_in_invariants);
  EXPECT_TRUE(r.twisted);
  EXPECT_TRUE(r.hypothesis_holds);
  EXPECT_TRUE(r.twisted_commutes);
}
