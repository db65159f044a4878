#include "dq/errors.hpp"
#include "dq/families.hpp"
#include "dq/polyops.hpp"
#include "dq/polywindows.hpp"

#include <gtest/gtest.h>

#include <optional>

using namespace dq;

namespace {

Monomial random_monomial(unsigned dim, unsigned max_deg, Rng& rng) {
  Monomial m(dim, 0);
  unsigned deg = static_cast<unsigned>(rand_int(rng, 0, static_cast<int>(max_deg)));
  for (unsigned k = 0; k < deg; ++k) ++m[rand_int(rng, 0, static_cast<int>(dim) - 1)];
  return m;
}

PolyVectorField random_polyvector(unsigned dim, unsigned arity, unsigned max_deg, Rng& rng) {
  PolyVectorField p(dim);
  for (int t = 0; t < 3; ++t) {
    std::vector<unsigned> idx;
    for (unsigned i = 0; i < dim; ++i) idx.push_back(i);
    for (unsigned i = 0; i + 1 < dim; ++i) std::swap(idx[i], idx[rand_int(rng, i, dim - 1)]);
    idx.resize(arity);
    p.add_term(random_monomial(dim, max_deg, rng), idx, Rational(rand_int(rng, -3, 3)));
  }
  return p;
}

PolyDiffOp random_operator(unsigned dim, unsigned arity, Rng& rng) {
  PolyDiffOp d(dim);
  for (int t = 0; t < 3; ++t) {
    std::vector<MultiIndex> slots;
    for (unsigned j = 0; j < arity; ++j) slots.push_back(random_monomial(dim, 2, rng));
    d.add_term(random_monomial(dim, 2, rng), slots, Rational(rand_int(rng, 1, 4)));
  }
  return d;
}

Poly mono(const Monomial& m) { return poly_monomial(m); }

Poly apply_field(const PolyVectorField& x, const Poly& f) {
  Poly out;
  for (const auto& [k, c] : x.terms())
    poly_add(out, c, poly_mul(mono(k.monomial), poly_derivative(f, unit_monomial(x.dim(), k.indices.at(0)))));
  return out;
}

Poly poisson(const PolyVectorField& pi, const Poly& f, const Poly& g) {
  Poly out;
  unsigned d = pi.dim();
  for (const auto& [k, c] : pi.terms()) {
    Poly fi = poly_derivative(f, unit_monomial(d, k.indices[0])), fj = poly_derivative(f, unit_monomial(d, k.indices[1]));
    Poly gi = poly_derivative(g, unit_monomial(d, k.indices[0])), gj = poly_derivative(g, unit_monomial(d, k.indices[1]));
    poly_add(out, c, poly_mul(mono(k.monomial), poly_mul(fi, gj)));
    poly_add(out, -c, poly_mul(mono(k.monomial), poly_mul(fj, gi)));
  }
  return out;
}

// Records the first ratio seen and checks every later one against it.
struct Ratio {
  std::optional<Rational> value;
  bool consistent(const Poly& lhs, const Poly& rhs) {
    if (lhs.empty() || rhs.empty()) return lhs.empty() && rhs.empty();
    Rational r = lhs.begin()->second / rhs.begin()->second;
    Poly scaled_rhs;
    poly_add(scaled_rhs, r, rhs);
    if (scaled_rhs != lhs) return false;
    if (!value) value = r;
    return *value == r;
  }
};

Poly coefficient(const PolyVectorField& p, const std::vector<unsigned>& indices) {
  Poly out;
  for (const auto& [k, c] : p.terms())
    if (k.indices == indices) poly_add(out, c, mono(k.monomial));
  return out;
}

Poly hochschild_oracle(const PolyDiffOp& d, const std::vector<Poly>& f) {
  const std::size_t n = f.size() - 1;
  Poly out = poly_mul(f[0], d.evaluate({f.begin() + 1, f.end()}));
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<Poly> args;
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (j == i) continue;
      args.push_back(j == i - 1 ? poly_mul(f[j], f[j + 1]) : f[j]);
    }
    poly_add(out, i % 2 ? Rational(-1) : Rational(1), d.evaluate(args));
  }
  poly_add(out, (n + 1) % 2 ? Rational(-1) : Rational(1), poly_mul(d.evaluate({f.begin(), f.end() - 1}), f[n]));
  return out;
}

std::size_t count_monomials(unsigned dim, int degree) {
  return degree < 0 ? 0 : monomials_of_degree(dim, static_cast<unsigned>(degree)).size();
}

}  // namespace

TEST(Parsing, PolynomialsAndPolyvectors) {
  Poly p = parse_poly("x^2*y - 3/2", 2);
  EXPECT_EQ(p.at({2, 1}), Rational(1));
  EXPECT_EQ(p.at({0, 0}), Rational(-3, 2));
  PolyVectorField v = parse_polyvector("x*dy^dx + dz", 3);
  EXPECT_EQ(v.terms().at(PVKey{{1, 0, 0}, {0, 1}}), Rational(-1));
  EXPECT_EQ(polyvector_to_string(parse_polyvector("dx^dy", 2)), polyvector_to_string(parse_polyvector("-dy^dx", 2)));
  EXPECT_THROW(parse_poly("x^^2", 2), ParseError);
  EXPECT_THROW(parse_polyvector("dw", 2), ParseError);
  EXPECT_TRUE(parse_polyvector("dx^dx", 2).is_zero());
}

TEST(Schouten, VectorFieldsGiveTheCommutator) {
  Rng rng(31);
  Ratio ratio;
  for (int t = 0; t < 20; ++t) {
    PolyVectorField x = random_polyvector(2, 1, 2, rng), y = random_polyvector(2, 1, 2, rng);
    Poly f = parse_poly("x^3*y + 2*y^2 - x", 2);
    Poly comm = apply_field(x, apply_field(y, f));
    poly_add(comm, Rational(-1), apply_field(y, apply_field(x, f)));
    ASSERT_TRUE(ratio.consistent(apply_field(schouten_bracket(x, y), f), comm));
  }
  ASSERT_TRUE(ratio.value.has_value());
  EXPECT_EQ(abs(*ratio.value), Rational(1));
}

TEST(Schouten, BivectorSquareIsTheJacobiator) {
  Rng rng(17);
  Ratio ratio;
  for (int t = 0; t < 10; ++t) {
    PolyVectorField pi = random_polyvector(3, 2, 2, rng);
    PolyVectorField sq = schouten_bracket(pi, pi);
    Poly x = parse_poly("x", 3), y = parse_poly("y", 3), z = parse_poly("z", 3);
    Poly jac = poisson(pi, x, poisson(pi, y, z));
    poly_add(jac, Rational(1), poisson(pi, y, poisson(pi, z, x)));
    poly_add(jac, Rational(1), poisson(pi, z, poisson(pi, x, y)));
    ASSERT_TRUE(ratio.consistent(coefficient(sq, {0, 1, 2}), jac)) << polyvector_to_string(pi);
  }
  ASSERT_TRUE(ratio.value.has_value());
  EXPECT_EQ(abs(*ratio.value), Rational(2));
}

TEST(Schouten, GradedAntisymmetryAndJacobi) {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    unsigned p = 1 + t % 2, q = 1 + (t / 2) % 2, r = 1 + (t / 4) % 2;
    PolyVectorField a = random_polyvector(3, p, 2, rng), b = random_polyvector(3, q, 2, rng),
                    c = random_polyvector(3, r, 1, rng);
    PolyVectorField ab = schouten_bracket(a, b), ba = schouten_bracket(b, a);
    const Rational koszul((p - 1) * (q - 1) % 2 ? -1 : 1);
    ba.add(ab, koszul);
    EXPECT_TRUE(ba.is_zero());
    // [a,[b,c]] = [[a,b],c] + (−1)^{(p−1)(q−1)}[b,[a,c]]
    PolyVectorField lhs = schouten_bracket(a, schouten_bracket(b, c));
    lhs.add(schouten_bracket(ab, c), Rational(-1));
    lhs.add(schouten_bracket(b, schouten_bracket(a, c)), -koszul);
    EXPECT_TRUE(lhs.is_zero());
  }
  EXPECT_TRUE(check_dgla_axioms(*tpoly_window(2, 2).algebra).ok());
}

// d_H = [μ, −] differs from the textbook coboundary by (−1)^{n+1} on arity n.
TEST(Hochschild, MatchesBruteForceEvaluation) {
  Rng rng(23);
  for (unsigned arity = 1; arity <= 3; ++arity) {
    const Rational sign(arity % 2 ? 1 : -1);
    for (int t = 0; t < 6; ++t) {
      PolyDiffOp d = random_operator(2, arity, rng);
      PolyDiffOp dh = hochschild_differential(d);
      for (int s = 0; s < 4; ++s) {
        std::vector<Poly> args;
        for (unsigned j = 0; j <= arity; ++j) args.push_back(mono(random_monomial(2, 3, rng)));
        Poly expected;
        poly_add(expected, sign, hochschild_oracle(d, args));
        ASSERT_EQ(dh.evaluate(args), expected) << "arity " << arity;
      }
    }
  }
}

TEST(Hochschild, SquaresToZeroAndKillsHkrImages) {
  Rng rng(29);
  for (unsigned arity = 1; arity <= 2; ++arity) {
    PolyDiffOp d = random_operator(2, arity, rng);
    EXPECT_TRUE(hochschild_differential(hochschild_differential(d)).is_zero());
  }
  for (unsigned arity = 1; arity <= 3; ++arity) {
    PolyVectorField a = random_polyvector(3, arity, 2, rng);
    EXPECT_TRUE(hochschild_differential(hkr(a)).is_zero());
    EXPECT_EQ(from_alternating(hkr(a)), a);
  }
}

TEST(Gerstenhaber, WindowIsADgla) {
  EXPECT_TRUE(check_dgla_axioms(*dpoly_constant_window(2, 3).algebra).ok());
  EXPECT_TRUE(check_dgla_axioms(*dpoly_constant_window(1, 4).algebra).ok());
}

TEST(Hkr, WindowMapIsAChainMap) {
  TpolyWindow t = tpoly_constant_window(2, 3);
  DpolyWindow d = dpoly_constant_window(2, 3);
  EXPECT_NO_THROW(require_chain_map(hkr_window_map(t, d), t.algebra->complex(), d.algebra->complex()));
}

TEST(Hkr, ReportAgreesWithMonomialCounts) {
  for (unsigned d : {1u, 2u}) {
    HkrReport r = hkr_quasi_iso_report(d, {-2, 2, 0, 0}, 0, 2);
    EXPECT_TRUE(r.ok());
    for (const auto& row : r.rows) {
      std::size_t choose = row.arity == 0 ? 1 : row.arity == 1 ? d : (d * (d - 1)) / 2;
      EXPECT_EQ(row.tpoly_dim, choose * count_monomials(d, row.internal_degree + static_cast<int>(row.arity)))
          << "d=" << d << " n=" << row.arity << " w=" << row.internal_degree;
    }
  }
}

TEST(Hkr, PropertiesOfTheLinearTower) {
  PropertyReport r = check_properties(PolyTower(2, 2, true), 2, 2);
  EXPECT_TRUE(r.holds("P4"));
  EXPECT_TRUE(r.holds("P5"));
  EXPECT_TRUE(r.holds("P3'"));
  EXPECT_GT(r.p4_checked + r.p5_checked, 0u);
  PolyTower bad(2, 2, true);
  bad.set({PVKey{{0, 0}, {0}}, PVKey{{0, 0}, {1}}}, hkr(parse_polyvector("dx^dy", 2)));
  EXPECT_FALSE(check_properties(bad, 2, 1).holds("P4"));
}

TEST(StarProduct, ConstantBivector) {
  auto xy = first_order_star(parse_polyvector("dx^dy", 2), parse_poly("x", 2), parse_poly("y", 2), 2);
  ASSERT_EQ(xy.size(), 2u);
  EXPECT_EQ(xy[0], parse_poly("x*y", 2));
  EXPECT_EQ(xy[1], parse_poly("1/2", 2));
  auto yx = first_order_star(parse_polyvector("dx^dy", 2), parse_poly("y", 2), parse_poly("x", 2), 2);
  EXPECT_EQ(yx[1], parse_poly("-1/2", 2));
  EXPECT_THROW(first_order_star(parse_polyvector("dx^dy", 2), parse_poly("x", 2), parse_poly("y", 2), 3),
               DomainError);
}

TEST(StarProduct, PoissonBivectorsAreAssociative) {
  for (const char* text : {"dx^dy", "x*dx^dy", "x^2*dx^dy"}) {
    StarProductReport r = star_product_report(parse_polyvector(text, 2), 4);
    EXPECT_TRUE(r.first_order_associative) << text;
    EXPECT_TRUE(r.poisson) << text;
  }
}

TEST(StarProduct, ObstructionOfANonPoissonBivector) {
  PolyVectorField pi = parse_polyvector("x*dy^dz + y*dx^dy", 3);
  StarProductReport r = star_product_report(pi, 3);
  EXPECT_FALSE(r.poisson);
  EXPECT_FALSE(r.obstruction.is_zero());
  EXPECT_TRUE(r.obstruction_matches_residual);
  EXPECT_TRUE(r.obstruction_evaluations_match);
  EXPECT_TRUE(r.alternation_matches_bracket);
  // Brute force: B(B(x,y),z) − B(x,B(y,z)) alternated equals the bracket side.
  PolyDiffOp b = hkr(pi);
  auto ev = [&](const Poly& f, const Poly& g) { return b.evaluate({f, g}); };
  Poly x = parse_poly("x", 3), y = parse_poly("y", 3), z = parse_poly("z", 3);
  Poly direct = ev(ev(x, y), z);
  poly_add(direct, Rational(-1), ev(x, ev(y, z)));
  EXPECT_EQ(r.obstruction.evaluate({x, y, z}), direct);
  PolyVectorField half = schouten_bracket(pi, pi);
  PolyVectorField scaled_half(3);
  scaled_half.add(half, Rational(1, 2));
  EXPECT_EQ(first_order_part(antisymmetrize(r.obstruction)), hkr(scaled_half));
}
