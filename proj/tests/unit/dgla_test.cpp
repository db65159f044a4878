#include "dq/dgla.hpp"
#include "dq/families.hpp"

#include <gtest/gtest.h>

using namespace dq;

namespace {

// Flow oracle: p' = [u, p] - du with p(0) = π, solved as a power series in
// the flow parameter and summed at 1. Each step raises the ε-order.
EpsSeries gauge_by_flow(const DGLieAlgebra& g, const EpsSeries& u, const EpsSeries& pi) {
  const unsigned n = static_cast<unsigned>(pi.size());
  EpsSeries total = pi;
  EpsSeries c = pi;
  EpsSeries du = series_d(g, u);
  for (unsigned k = 0; k < n; ++k) {
    EpsSeries next = series_bracket(g, u, c);
    if (k == 0) series_axpy(next, Rational(-1), du);
    for (auto& v : next) v = scaled(v, Rational(1, k + 1));
    series_axpy(total, Rational(1), next);
    c = next;
  }
  return total;
}

DglaPtr forms_family(const LieAlgebraData& lie, unsigned vars, unsigned cap, unsigned odd = 0) {
  return lie_tensor_forms(lie, vars, cap, odd).algebra;
}

}  // namespace

TEST(LieFamilies, AxiomsHold) {
  for (const auto& lie : {lie_sl2(), lie_affine2(), lie_heisenberg(), lie_abelian(3)}) {
    EXPECT_TRUE(check_dgla_axioms(lie_algebra(lie)).ok()) << lie.name;
    EXPECT_TRUE(check_dgla_axioms(*forms_family(lie, 2, 2)).ok()) << lie.name;
  }
  EXPECT_TRUE(check_dgla_axioms(*forms_family(lie_affine2(), 1, 2, 2)).ok());
}

TEST(LieFamilies, BrokenJacobiIsReported) {
  AxiomReport r = check_dgla_axioms(lie_algebra(lie_broken_jacobi()));
  ASSERT_FALSE(r.ok());
  for (const auto& f : r.failures) EXPECT_EQ(f.kind, "jacobi");
}

TEST(LieFamilies, Sl2StructureConstants) {
  DGLieAlgebra g = lie_algebra(lie_sl2());
  const GradedSpace& s = *g.space();
  auto e = [&](const char* l) { return SparseVec{{s.index(0, l), Rational(1)}}; };
  EXPECT_EQ(g.bracket(e("h"), e("e")), scaled(e("e"), Rational(2)));
  EXPECT_EQ(g.bracket(e("h"), e("f")), scaled(e("f"), Rational(-2)));
  EXPECT_EQ(g.bracket(e("e"), e("f")), e("h"));
  EXPECT_EQ(g.bracket(e("f"), e("e")), scaled(e("h"), Rational(-1)));
}

TEST(FormsAlgebra, DSquaredZeroAndLeibniz) {
  FormsAlgebra f = forms_algebra(2, 3, 1);
  for (std::size_t a = 0; a < f.basis.size(); ++a) {
    std::map<std::size_t, Rational> dd;
    for (auto [i, c] : f.d(a))
      for (auto [j, c2] : f.d(i)) dd[j] += c * c2;
    for (auto& [j, c] : dd) EXPECT_EQ(c, 0) << f.labels[a];
  }
  // d(s·ds) = ds∧ds = 0 and d(s^2) = 2 s ds.
  std::size_t s2 = *f.find({{2, 0}, 0});
  auto d = f.d(s2);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].first, *f.find({{1, 0}, 1u}));
  EXPECT_EQ(d[0].second, Rational(2));
}

TEST(MaurerCartan, HandResidual) {
  LieForms lf = lie_tensor_forms(lie_sl2(), 2, 2);
  const FormsAlgebra& f = lf.forms;
  // π = ε (e ⊗ s1 ds2): dπ = ε e ⊗ ds1∧ds2, [π,π] = 0.
  std::size_t s1ds2 = *f.find({{1, 0}, 2u});
  std::size_t ds1ds2 = *f.find({{0, 0}, 3u});
  std::size_t e = 1;
  ASSERT_EQ(lf.lie.labels[e], "e");
  MCElement pi(lf.algebra, 2, {{}, {{lf.index(e, s1ds2), Rational(1)}}});
  EpsSeries r = mc_residual(pi);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_TRUE(r[0].empty());
  EXPECT_EQ(r[1], (SparseVec{{lf.index(e, ds1ds2), Rational(1)}}));
  // π = ε (e ⊗ ds1 + f ⊗ ds2) at order 3: [π,π] = 2ε² h ⊗ ds1∧ds2 up to sign.
  std::size_t ds1 = *f.find({{0, 0}, 1u}), ds2 = *f.find({{0, 0}, 2u});
  MCElement q(lf.algebra, 3, {{}, {{lf.index(1, ds1), Rational(1)}, {lf.index(2, ds2), Rational(1)}}, {}});
  EpsSeries rq = mc_residual(q);
  EXPECT_TRUE(rq[1].empty());
  ASSERT_EQ(rq[2].size(), 1u);
  EXPECT_EQ(rq[2].begin()->first, lf.index(0, ds1ds2));
  EXPECT_EQ(abs(rq[2].begin()->second), Rational(1));
}

TEST(MaurerCartan, RejectsMalformedElements) {
  DglaPtr g = forms_family(lie_sl2(), 1, 1);
  EXPECT_THROW(MCElement(g, 2, {{{0, Rational(1)}}, {}}), DomainError);
  EXPECT_THROW(MCElement(g, 1, {{}, {{0, Rational(1)}}}), DomainError);
  EXPECT_EQ(MCElement(g, 3, {}).coeffs.size(), 3u);
}

TEST(MaurerCartan, RandomElementsSolveTheEquation) {
  Rng rng(3);
  for (const auto& lie : {lie_sl2(), lie_heisenberg()})
    for (unsigned order = 1; order <= 4; ++order) {
      MCElement pi = random_mc(forms_family(lie, 2, 2), order, rng);
      EXPECT_TRUE(series_is_zero(mc_residual(pi)));
    }
}

TEST(Gauge, MatchesFlowOracle) {
  Rng rng(21);
  for (const auto& lie : {lie_affine2(), lie_sl2()}) {
    DglaPtr g = forms_family(lie, 1, 2, 1);
    for (unsigned order = 2; order <= 4; ++order) {
      MCElement pi = random_mc(g, order, rng);
      EpsSeries u = random_gauge_parameter(*g, order, rng);
      MCElement moved = gauge_transform(u, pi);
      EXPECT_EQ(moved.coeffs, gauge_by_flow(*g, u, pi.coeffs)) << lie.name << " N=" << order;
      EXPECT_TRUE(series_is_zero(mc_residual(moved)));
    }
  }
}

TEST(Gauge, ZeroFixesAndComposesByBch) {
  Rng rng(5);
  DglaPtr g = forms_family(lie_sl2(), 2, 2);
  for (unsigned order = 1; order <= 3; ++order) {
    MCElement pi = random_mc(g, order, rng);
    EXPECT_EQ(gauge_transform(EpsSeries(order), pi).coeffs, pi.coeffs);
    EpsSeries u1 = random_gauge_parameter(*g, order, rng);
    EpsSeries u2 = random_gauge_parameter(*g, order, rng);
    MCElement twice = gauge_transform(u2, gauge_transform(u1, pi));
    MCElement once = gauge_transform(bch(*g, u2, u1), pi);
    EXPECT_EQ(twice.coeffs, once.coeffs) << "N=" << order;
  }
}

TEST(Gauge, RejectsBadParameters) {
  DglaPtr g = forms_family(lie_sl2(), 1, 1);
  Rng rng(1);
  MCElement pi = random_mc(g, 2, rng);
  EpsSeries u(2);
  u[0][0] = Rational(1);
  EXPECT_THROW(gauge_transform(u, pi), DomainError);
}

TEST(Bch, LowOrderTerms) {
  // log(e^a e^b) = a + b + [a,b]/2 + ... in sl2 with a = εe, b = εf at order 3.
  DGLieAlgebra g = lie_algebra(lie_sl2());
  EpsSeries a{{}, {{1, Rational(1)}}, {}};
  EpsSeries b{{}, {{2, Rational(1)}}, {}};
  EpsSeries c = bch(g, a, b);
  EXPECT_EQ(c[1], (SparseVec{{1, Rational(1)}, {2, Rational(1)}}));
  EXPECT_EQ(c[2], (SparseVec{{0, Rational(1, 2)}}));
}

TEST(Twist, TwistedDifferentialSquaresToZero) {
  Rng rng(9);
  for (const auto& lie : {lie_sl2(), lie_affine2()}) {
    MCElement pi = random_mc(forms_family(lie, 2, 2), 3, rng);
    TwistedDgla t = twist_dgla(pi);
    const GradedLinearMap& d = t.extension.algebra->d();
    EXPECT_TRUE(d.compose(d).is_zero());
    EXPECT_TRUE(check_dgla_axioms(*t.extension.algebra).ok());
  }
}

TEST(Twist, NonMaurerCartanCarriesResidual) {
  LieForms lf = lie_tensor_forms(lie_sl2(), 2, 2);
  std::size_t s1ds2 = *lf.forms.find({{1, 0}, 2u});
  MCElement pi(lf.algebra, 2, {{}, {{lf.index(1, s1ds2), Rational(1)}}});
  try {
    twist_dgla(pi);
    FAIL() << "expected NotMaurerCartanError";
  } catch (const NotMaurerCartanError& e) {
    EXPECT_FALSE(series_is_zero(e.residual()));
  }
}

TEST(ScalarExtension, EmbedSplitRoundTrip) {
  DglaPtr g = forms_family(lie_heisenberg(), 1, 2);
  ScalarExtension ext = extend_scalars(g, 3);
  Rng rng(2);
  EpsSeries u = random_gauge_parameter(*g, 3, rng);
  EXPECT_EQ(ext.split(ext.embed(u)), u);
  EXPECT_EQ(ext.algebra->space()->size(), 3 * g->space()->size());
  EXPECT_TRUE(check_dgla_axioms(*ext.algebra).ok());
}
