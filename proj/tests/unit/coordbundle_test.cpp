#include "dq/coordbundle.hpp"
#include "dq/errors.hpp"

#include <gtest/gtest.h>

using namespace dq;

namespace {

// δ_i(x_j) = c·x_{j−i+1} with c = −(j−i+1), or zero.
std::pair<int, Rational> witt_on_generator(unsigned i, int j) {
  int k = j - static_cast<int>(i) + 1;
  if (j < 0 || k < 0) return {-1, Rational(0)};
  return {k, Rational(-k)};
}

CoordForm scaled_generator(int j, const Rational& c) {
  CoordForm out;
  if (j >= 0 && c != 0) out.add(CoordForm::generator(static_cast<unsigned>(j)), c);
  return out;
}

// ι_E for the Euler field of u, y2, …: f·dg_1∧…∧dg_p ↦ Σ_k (−1)^{k−1} f g_k dg_1…ĝ_k…dg_p.
DeltaForm euler_contraction(const DeltaKey& k) {
  DeltaForm out;
  for (std::size_t pos = 0; pos < k.dgens.size(); ++pos) {
    DeltaKey t = k;
    unsigned g = k.dgens[pos];
    t.dgens.erase(t.dgens.begin() + static_cast<std::ptrdiff_t>(pos));
    if (t.exps.size() <= g) t.exps.resize(g + 1, 0);
    ++t.exps[g];
    out[t] += pos % 2 ? Rational(-1) : Rational(1);
  }
  return out;
}

DeltaForm clean(DeltaForm f) {
  for (auto it = f.begin(); it != f.end();) it = it->second == 0 ? f.erase(it) : std::next(it);
  return f;
}

}  // namespace

TEST(Witt, ActionMatchesTheFormula) {
  for (unsigned i = 0; i <= 6; ++i)
    for (unsigned j = 0; j <= 12; ++j) {
      auto [k, c] = witt_on_generator(i, static_cast<int>(j));
      EXPECT_EQ(witt_act(i, j), scaled_generator(k, c)) << "i=" << i << " j=" << j;
    }
}

TEST(Witt, HandComputedCommutators) {
  // [δ_i, δ_j] x_m = (j − i) δ_{i+j−1} x_m, each side a multiple of one generator.
  for (unsigned i = 0; i <= 6; ++i)
    for (unsigned j = 0; j <= 6; ++j)
      for (int m = 0; m <= 12; ++m) {
        auto [a1, c1] = witt_on_generator(j, m);
        auto [a2, c2] = witt_on_generator(i, a1);
        auto [b1, d1] = witt_on_generator(i, m);
        auto [b2, d2] = witt_on_generator(j, b1);
        CoordForm lhs = scaled_generator(a2, c1 * c2);
        lhs.add(scaled_generator(b2, d1 * d2), Rational(-1));
        CoordForm rhs;
        if (i + j >= 1) {
          auto [r, e] = witt_on_generator(i + j - 1, m);
          rhs = scaled_generator(r, e * Rational(static_cast<int>(j) - static_cast<int>(i)));
        }
        EXPECT_EQ(lhs, rhs) << "i=" << i << " j=" << j << " m=" << m;
      }
  WittReport r = check_witt_relations(6, 12);
  EXPECT_TRUE(r.holds());
  EXPECT_GT(r.checked, 0u);
}

TEST(Witt, InverseOfX1) {
  // δ_i(x1^{-1}) = −x1^{-2} δ_i(x1).
  for (unsigned i = 0; i <= 2; ++i) {
    CoordForm expected = wedge(CoordForm::generator(1, -2), witt_act(i, 1));
    expected = wedge(CoordForm::constant(Rational(-1)), expected);
    EXPECT_EQ(apply_derivation(witt_generator(i), CoordForm::generator(1, -1)), expected);
  }
}

TEST(Forms, WedgeAndD) {
  CoordForm dx0 = CoordForm::differential(0), dx1 = CoordForm::differential(1);
  EXPECT_TRUE(wedge(dx0, dx0).is_zero());
  CoordForm a = wedge(dx0, dx1), b = wedge(dx1, dx0);
  b.add(a);
  EXPECT_TRUE(b.is_zero());
  CoordForm f = wedge(CoordForm::generator(1, -1), CoordForm::generator(2));
  EXPECT_TRUE(exterior_d(exterior_d(f)).is_zero());
  CoordForm expected = wedge(CoordForm::generator(1, -1), CoordForm::differential(2));
  expected.add(wedge(wedge(CoordForm::generator(1, -2), CoordForm::generator(2)), dx1), Rational(-1));
  EXPECT_EQ(exterior_d(f), expected);
  EXPECT_THROW(require_laurent(CoordForm::generator(1, -5), 4), OverflowError);
}

TEST(Tilde, SquareMatchesSeriesOracle) {
  const unsigned T = 6;
  Series sq = tilde_expand(parse_poly("x^2", 1), T);
  for (unsigned k = 0; k <= T; ++k) {
    CoordForm expected;
    for (unsigned i = 0; i <= k; ++i) expected.add(wedge(CoordForm::generator(i), CoordForm::generator(k - i)));
    EXPECT_EQ(sq.coeffs[k], expected) << "t^" << k;
  }
  Series lin = tilde_expand(parse_poly("x", 1), T);
  for (unsigned k = 0; k <= T; ++k) EXPECT_EQ(lin.coeffs[k], CoordForm::generator(k));
}

TEST(Tilde, ExpansionIsMultiplicative) {
  const unsigned T = 5;
  Poly f = parse_poly("x^2 - 1", 1), g = parse_poly("x^3 + 2*x", 1);
  Series lhs = tilde_expand(poly_mul(f, g), T);
  Series rhs = series_mul(tilde_expand(f, T), tilde_expand(g, T));
  for (unsigned k = 0; k <= T; ++k) EXPECT_EQ(lhs.coeffs[k], rhs.coeffs[k]);
}

TEST(Tilde, InvariantUnderWitt) {
  for (const char* f : {"x", "x^2", "x^4 - x"})
    for (unsigned i = 0; i <= 5; ++i) EXPECT_TRUE(check_invariance(parse_poly(f, 1), witt_generator(i), 6).is_zero());
  RingDerivation mixed{{{0, Rational(2)}, {2, Rational(-1, 3)}}};
  EXPECT_TRUE(check_invariance(parse_poly("x^3", 1), mixed, 6).is_zero());
}

TEST(McForm, LowCoefficientsByHand) {
  CoordRing1 ring{6, 5, 12};
  MaurerCartanForm1 w = mc_form(ring);
  ASSERT_GE(w.g.size(), 2u);
  CoordForm g0 = wedge(CoordForm::generator(1, -1), CoordForm::differential(0));
  g0 = wedge(CoordForm::constant(Rational(-1)), g0);
  EXPECT_EQ(w.g[0], g0);
  CoordForm g1 = wedge(wedge(CoordForm::generator(1, -2), CoordForm::generator(2)), CoordForm::differential(0));
  g1 = wedge(CoordForm::constant(Rational(2)), g1);
  g1.add(wedge(CoordForm::generator(1, -1), CoordForm::differential(1)), Rational(-1));
  EXPECT_EQ(w.g[1], g1);
}

TEST(McForm, EquationsUpToT8) {
  CoordRing1 ring{12, 8, 24};
  McFormReport r = verify_mc_form(mc_form(ring), ring, 8);
  EXPECT_TRUE(r.defining_ok);
  EXPECT_TRUE(r.mc_ok);
  EXPECT_TRUE(r.contraction_ok);
}

TEST(McForm, TooFewGeneratorsIsADomainError) {
  EXPECT_THROW(mc_form(CoordRing1{4, 8, 24}), DomainError);
}

TEST(Gl1, InvariantsAreX1Normalized) {
  Gl1Report r = gl1_invariants(6);
  EXPECT_TRUE(r.holds());
  for (const auto& [i, y] : r.invariants)
    EXPECT_EQ(y, wedge(CoordForm::generator(1, -static_cast<int>(i)), CoordForm::generator(i)));
}

TEST(Homotopy, MatchesEulerContractionOracle) {
  // H scales weighted generators by z, so h(ω) = ι_E ω / weight(ω).
  for (const DeltaKey& k : delta_basis(3, 3, 1)) {
    DeltaForm w{{k, Rational(1)}};
    DeltaForm expected;
    unsigned weight = delta_weight(k);
    if (weight > 0)
      for (auto& [t, c] : euler_contraction(k)) expected[t] += c / Rational(weight);
    EXPECT_EQ(clean(homotopy_h(w)), clean(expected)) << delta_label(k, 3);
  }
}

TEST(Homotopy, IdentityOnTheGeneratorCap4Window) {
  AcyclicityReport r = acyclicity_homotopy(4, 4, 2);
  EXPECT_TRUE(r.identity_failures.empty());
  EXPECT_TRUE(r.h0_is_r);
  EXPECT_TRUE(r.higher_vanish);
  EXPECT_EQ(delta_basis(4, 4, 2).size(), r.basis_size);
}

TEST(Homotopy, SimpleValues) {
  DeltaKey dy2{0, {0, 0}, {1}}, y2{0, {0, 1}, {}}, u{0, {1}, {}};
  EXPECT_EQ(clean(homotopy_h({{dy2, Rational(1)}})), (DeltaForm{{y2, Rational(1)}}));
  EXPECT_TRUE(clean(homotopy_h({{u, Rational(1)}})).empty());
}

TEST(Poincare, GradedPiecesAreExact) {
  for (unsigned vars = 1; vars <= 3; ++vars)
    for (unsigned n = 0; n <= 4; ++n) EXPECT_TRUE(graded_poincare_piece(vars, n).exact) << vars << " " << n;
}
