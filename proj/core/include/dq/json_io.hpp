#pragma once

#include "dq/cech.hpp"
#include "dq/cosimplicial.hpp"
#include "dq/dgla.hpp"
#include "dq/linfty.hpp"
#include "dq/polyops.hpp"

#include "json.hpp"

#include <memory>
#include <string>

namespace dq {

// Objects keep sorted keys, so dump() output is canonical.
using Json = nlohmann::json;

// Two-space indented text with a trailing newline.
std::string canonical_dump(const Json& j);
// Throws ParseError with the parser's byte position.
Json parse_json_text(const std::string& text);

Json rational_json(const Rational& q);
Rational rational_from_json(const Json& j);

// {degree: {label: "p/q"}}
Json graded_vector_json(const GradedSpace& s, const SparseVec& v);
SparseVec graded_vector_from_json(const GradedSpace& s, const Json& j);

// {degree: [labels]}
Json space_json(const GradedSpace& s);
SpacePtr space_from_json(const Json& j);

// Columns as [{source: label, value: graded vector}], zero columns omitted.
// Source labels must be unique across degrees.
Json map_json(const GradedLinearMap& f);
GradedLinearMap map_from_json(SpacePtr source, SpacePtr target, int degree, const Json& j);

// {basis, d, bracket: [{left, right, value}]}; both orders of each pair are listed.
Json dgla_json(const DGLieAlgebra& g);
DglaPtr dgla_from_json(const Json& j);

// {order, coeffs: [graded vector of ε^k for k < order]}
Json mc_json(const MCElement& pi);
MCElement mc_from_json(DglaPtr g, const Json& j);

// {kind, degree, arity_bound, components: [{arity, entries: [{word: [labels], value}]}]}
Json tower_json(const ExplicitTower& t);
std::shared_ptr<ExplicitTower> tower_from_json(SpacePtr source, SpacePtr target, const Json& j);

// [{coeff, monomial, indices}] and [{coeff, monomial, multiindices}]
Json polyvector_json(const PolyVectorField& p);
PolyVectorField polyvector_from_json(unsigned dim, const Json& j);
Json polydiff_json(const PolyDiffOp& p);
PolyDiffOp polydiff_from_json(unsigned dim, const Json& j);

// {labels, unit, mult: [{left, right, value}]} with values as {label: "p/q"}.
Json algebra_json(const FiniteAlgebra& a);
FiniteAlgebra algebra_from_json(const Json& j);
// {n, values: {"12": algebra}, restrictions: {"1>12": [[column]]}}
Json cover_json(const AlgebraCover& c);
AlgebraCover cover_from_json(const Json& j);

// {n_max, levels: [{basis, d}], cofaces: [[map]], codegeneracies: [[map]]}
Json cosimplicial_json(const CosimplicialComplex& a);
CosimplicialComplex cosimplicial_from_json(const Json& j);

}  // namespace dq
