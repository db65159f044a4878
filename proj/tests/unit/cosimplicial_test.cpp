#include "dq/cosimplicial.hpp"
#include "dq/errors.hpp"
#include "dq/families.hpp"

#include <gtest/gtest.h>

using namespace dq;

namespace {

// ∫_{Δ[n]} t^a dt₁…dt_n = Π a_i! / (|a| + n)!
Rational dirichlet(const Monomial& a) {
  Rational num(1);
  unsigned total = static_cast<unsigned>(a.size());
  for (unsigned e : a) {
    num *= factorial(e);
    total += e;
  }
  return num / factorial(total);
}

Form top_form(const Monomial& a) {
  std::vector<unsigned> all;
  for (unsigned i = 0; i < a.size(); ++i) all.push_back(i);
  return Form{{FormKey{a, all}, Rational(1)}};
}

}  // namespace

TEST(SimplexForms, IntegralMatchesDirichletFormula) {
  for (unsigned n = 1; n <= 3; ++n)
    for (unsigned e0 = 0; e0 <= 3; ++e0)
      for (unsigned e1 = 0; e1 <= 2; ++e1) {
        Monomial a(n, 0);
        a[0] = e0;
        if (n > 1) a[1] = e1;
        EXPECT_EQ(integrate_form(n, top_form(a)), dirichlet(a));
      }
  EXPECT_EQ(integrate_form(2, top_form({1, 1})), Rational(1, 24));
  EXPECT_THROW(integrate_form(2, Form{{FormKey{{0, 0}, {0}}, Rational(1)}}), DomainError);
}

TEST(SimplexForms, DSquaredZeroAndLeibniz) {
  SimplexDeRham s{2, 3};
  auto basis = s.basis();
  for (const auto& k : basis) {
    Form w{{k, Rational(1)}};
    EXPECT_TRUE(SimplexDeRham::d(SimplexDeRham::d(w)).empty()) << form_label(k);
  }
  for (const auto& a : basis)
    for (const auto& b : basis) {
      if (total_degree(a) + total_degree(b) > 3) continue;
      Form wa{{a, Rational(1)}}, wb{{b, Rational(1)}};
      Form lhs = SimplexDeRham::d(SimplexDeRham::wedge(wa, wb));
      Form rhs = SimplexDeRham::wedge(SimplexDeRham::d(wa), wb);
      form_add(rhs, Rational(form_degree(a) % 2 ? -1 : 1), SimplexDeRham::wedge(wa, SimplexDeRham::d(wb)));
      EXPECT_EQ(lhs, rhs);
    }
}

TEST(SimplexForms, Stokes) {
  // ∫_{Δ[n]} dω = Σ_i (−1)^i ∫_{∂_i Δ} ω for (n−1)-forms.
  for (unsigned n = 1; n <= 3; ++n) {
    SimplexDeRham s{n, 4};
    SimplexDeRham face{n - 1, 4};
    for (const auto& k : s.basis()) {
      if (form_degree(k) + 1 != n) continue;
      Form w{{k, Rational(1)}};
      Rational boundary(0);
      for (unsigned i = 0; i <= n; ++i) {
        Form r = s.face(i, w);
        Rational v = n == 1 ? (r.empty() ? Rational(0) : r.begin()->second) : integrate_form(n - 1, r);
        boundary += (i % 2 ? -1 : 1) * v;
      }
      EXPECT_EQ(integrate_form(n, SimplexDeRham::d(w)), boundary) << "n=" << n << " " << form_label(k);
    }
  }
}

TEST(SimplexForms, FaceAfterDegeneracyIsIdentity) {
  SimplexDeRham s{1, 3};
  SimplexDeRham up{2, 3};
  for (const auto& k : s.basis()) {
    Form w{{k, Rational(1)}};
    for (unsigned j = 0; j <= 1; ++j) {
      Form lifted = s.degeneracy(j, w);
      EXPECT_EQ(up.face(j, lifted), w);
      EXPECT_EQ(up.face(j + 1, lifted), w);
    }
  }
}

TEST(Cosimplicial, ConstantObjectIdentitiesAndNormalization) {
  Rng rng(4);
  DGLieAlgebra g = random_abelian(rng, 0, 2, 2);
  CosimplicialComplex a = constant_cosimplicial(g.complex(), 3);
  EXPECT_NO_THROW(check_cosimplicial_identities(a));
  NormalizedCochains n = normalized_cochain(a);
  CochainComplex u = unnormalized_cochain(a);
  EXPECT_TRUE(is_quasi_iso(n.inclusion, n.complex, u, 0, 2).verdict);
  for (int p = 0; p <= 2; ++p) EXPECT_EQ(cohomology(n.complex, p).dimension, cohomology(g.complex(), p).dimension);
}

TEST(Cosimplicial, BrokenCofaceIsRejected) {
  CosimplicialComplex a = constant_cosimplicial(lie_algebra(lie_sl2()).complex(), 2);
  a.cofaces[2][1] = GradedLinearMap::zero(a.levels[1].space(), a.levels[2].space(), 0);
  EXPECT_THROW(check_cosimplicial_identities(a), StructuralError);
}

TEST(ThomSullivan, ConstantInputRecoversTheAlgebra) {
  auto g = std::make_shared<DGLieAlgebra>(lie_algebra(lie_sl2()));
  CosimplicialComplex a = constant_cosimplicial(g, 2);
  ThomSullivan ts = thom_sullivan(a, 2);
  NormalizedCochains n = normalized_cochain(a);
  TsComparison cmp = ts_comparison(ts, a, n, 0, 2);
  EXPECT_TRUE(cmp.verdict.verdict);
  EXPECT_EQ(cohomology(ts.complex, 0).dimension, 3u);
  EXPECT_EQ(cohomology(ts.complex, 1).dimension, 0u);
  ASSERT_TRUE(ts.algebra);
  EXPECT_TRUE(check_dgla_axioms(*ts.algebra).ok());
}
