#include "dq/errors.hpp"
#include "dq/families.hpp"
#include "dq/json_io.hpp"

#include <gtest/gtest.h>

using namespace dq;

namespace {

Json round_trip_text(const Json& j) { return parse_json_text(canonical_dump(j)); }

}  // namespace

TEST(Json, CanonicalDumpIsStable) {
  Json a = parse_json_text(R"({"b": 1, "a": [1, 2]})");
  Json b = parse_json_text(R"({"a":[1,2],"b":1})");
  EXPECT_EQ(canonical_dump(a), canonical_dump(b));
  EXPECT_EQ(canonical_dump(a).back(), '\n');
}

TEST(Json, ParseErrorsCarryPosition) {
  try {
    parse_json_text("{\"a\": ");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
  }
}

TEST(Json, Rationals) {
  EXPECT_EQ(rational_json(Rational(-3, 4)), Json("-3/4"));
  EXPECT_EQ(rational_from_json(Json("6/8")), Rational(3, 4));
  EXPECT_EQ(rational_from_json(Json(5)), Rational(5));
  EXPECT_THROW(rational_from_json(Json::array()), ParseError);
}

TEST(Json, SpaceRejectsDuplicateLabels) {
  EXPECT_THROW(space_from_json(parse_json_text(R"({"0": ["a", "a"]})")), ParseError);
}

TEST(Json, DglaRoundTrip) {
  for (const auto& lie : {lie_sl2(), lie_affine2()}) {
    DglaPtr g = lie_tensor_forms(lie, 1, 2, 1).algebra;
    Json j = dgla_json(*g);
    DglaPtr back = dgla_from_json(round_trip_text(j));
    EXPECT_EQ(back->space()->basis(), g->space()->basis());
    EXPECT_EQ(back->d().columns(), g->d().columns());
    EXPECT_EQ(back->table(), g->table());
    EXPECT_EQ(canonical_dump(dgla_json(*back)), canonical_dump(j));
  }
}

TEST(Json, McRoundTrip) {
  DglaPtr g = lie_tensor_forms(lie_sl2(), 2, 2).algebra;
  Rng rng(3);
  MCElement pi = random_mc(g, 3, rng);
  MCElement back = mc_from_json(g, round_trip_text(mc_json(pi)));
  EXPECT_EQ(back.order, pi.order);
  EXPECT_EQ(back.coeffs, pi.coeffs);
}

TEST(Json, TowerRoundTrip) {
  SpacePtr s = make_space({{0, {"a", "b"}}, {1, {"x"}}});
  ExplicitTower t(TowerKind::morphism, s, s, 0, 2);
  t.set({0}, {{0, Rational(1)}});
  t.set({2, 0}, {{1, Rational(-1, 2)}});
  auto back = tower_from_json(s, s, round_trip_text(tower_json(t)));
  EXPECT_EQ(back->entries(), t.entries());
  EXPECT_EQ(back->kind(), TowerKind::morphism);
}

TEST(Json, PolyRoundTrips) {
  PolyVectorField p = parse_polyvector("x*y*dx^dy + 3/2*dz", 3);
  EXPECT_EQ(polyvector_from_json(3, round_trip_text(polyvector_json(p))), p);
  PolyDiffOp d = hkr(p);
  EXPECT_EQ(polydiff_from_json(3, round_trip_text(polydiff_json(d))), d);
}

TEST(Json, CoverRoundTrip) {
  AlgebraCover c = constant_cover(2, FiniteAlgebra::truncated_polynomial(2));
  AlgebraCover back = cover_from_json(round_trip_text(cover_json(c)));
  EXPECT_NO_THROW(check_cover(back));
  EXPECT_EQ(canonical_dump(cover_json(back)), canonical_dump(cover_json(c)));
}

TEST(Json, CosimplicialRoundTrip) {
  CosimplicialComplex a = ordered_cech(abelian_cover(constant_cover(2, FiniteAlgebra::rationals())), 2);
  CosimplicialComplex back = cosimplicial_from_json(round_trip_text(cosimplicial_json(a)));
  EXPECT_NO_THROW(check_cosimplicial_identities(back));
  EXPECT_EQ(canonical_dump(cosimplicial_json(back)), canonical_dump(cosimplicial_json(a)));
}

TEST(Json, MalformedInputsAreParseErrors) {
  EXPECT_THROW(dgla_from_json(parse_json_text(R"({"basis": {"0": ["a"]}, "bracket": [{"left": "a", "right": "z", "value": {}}]})")), ParseError);
  EXPECT_THROW(polyvector_from_json(2, parse_json_text(R"([{"coeff": "1/1", "monomial": [1], "indices": [0]}])")),
               ParseError);
}
