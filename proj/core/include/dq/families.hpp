#pragma once

#include "dq/dgla.hpp"
#include "dq/linfty.hpp"

#include <random>
#include <string>
#include <vector>

namespace dq {

using Rng = std::mt19937_64;
// Uniform in [lo, hi]; plain modulo so results do not depend on the
// standard library's distribution code.
int rand_int(Rng& rng, int lo, int hi);

// Finite-dimensional Lie algebra in degree 0, full antisymmetric table.
struct LieAlgebraData {
  std::string name;
  std::vector<std::string> labels;
  BracketTable brackets;
};

LieAlgebraData lie_abelian(unsigned n);
LieAlgebraData lie_affine2();      // [a,b] = b
LieAlgebraData lie_heisenberg();   // [x,y] = z
LieAlgebraData lie_sl2();          // [h,e] = 2e, [h,f] = −2f, [e,f] = h
// Antisymmetric bracket on three elements whose Jacobiator is nonzero.
LieAlgebraData lie_broken_jacobi();

DGLieAlgebra lie_algebra(const LieAlgebraData& lie);

// Polynomial forms on Q^m in variables s,t,u,... tensored with an exterior
// algebra on closed degree-1 generators ea, eb, ..., graded by weight
// (every generator has weight 1) and truncated to weight ≤ K. The
// truncation is a quotient by an ideal preserved by d and by contractions
// with linear vector fields.
struct FormMonomial {
  std::vector<unsigned> exps;
  unsigned mask = 0;  // bit i < vars: ds_i; bit vars + j: odd generator j
  unsigned weight() const;
  int degree() const;
};

struct FormsAlgebra {
  unsigned vars = 1;
  unsigned odd = 0;
  unsigned weight_cap = 1;
  std::vector<FormMonomial> basis;
  std::vector<std::string> labels;

  std::optional<std::size_t> find(const FormMonomial& m) const;
  // Product of basis forms as (index, sign), or nullopt if zero.
  std::optional<std::pair<std::size_t, int>> multiply(std::size_t a, std::size_t b) const;
  std::vector<std::pair<std::size_t, Rational>> d(std::size_t a) const;
  // ι_X for X = Σ_ij a[i][j] s_j ∂/∂s_i.
  std::vector<std::pair<std::size_t, Rational>> contract(const std::vector<std::vector<int>>& a, std::size_t k) const;
};

FormsAlgebra forms_algebra(unsigned vars, unsigned weight_cap, unsigned odd = 0);

// g⊗Ω with g a Lie algebra in degree 0; label "x:form".
struct LieForms {
  LieAlgebraData lie;
  FormsAlgebra forms;
  DglaPtr algebra;
  std::size_t index(std::size_t lie_idx, std::size_t form_idx) const;
};

LieForms lie_tensor_forms(const LieAlgebraData& lie, unsigned vars, unsigned weight_cap, unsigned odd = 0);
GradedLinearMap lie_forms_contraction(const LieForms& lf, const std::vector<std::vector<int>>& a);
ContractionAction lie_forms_action(const LieForms& lf, const std::vector<std::string>& names,
                                   const std::vector<std::vector<std::vector<int>>>& fields);
// Projection onto a lower weight cap: a DG-Lie morphism.
GradedLinearMap lie_forms_projection(const LieForms& from, const LieForms& to);

// Abelian DGLA with random differential: pairs (x, dx) plus cocycles.
DGLieAlgebra random_abelian(Rng& rng, int min_deg, int max_deg, unsigned dim_per_degree);
DGLieAlgebra random_basis_change(const DGLieAlgebra& g, Rng& rng);

// Maurer-Cartan element built order by order from random cocycles.
// Throws DomainError if an obstruction class is nonzero.
MCElement random_mc(DglaPtr g, unsigned order, Rng& rng);
EpsSeries random_gauge_parameter(const DGLieAlgebra& g, unsigned order, Rng& rng);

// An L∞ morphism into an abelian algebra with zero differential whose Taylor
// coefficients are arbitrary graded-symmetric maps vanishing on words with
// a letter in d(g) + [g,g] + Σ im(extra).
struct AbelianizationMorphism {
  DglaPtr target;
  GradedLinearMap quotient;  // g → g/B
  TowerPtr psi;
};

AbelianizationMorphism random_abelianization(const DGLieAlgebra& g, const std::vector<GradedLinearMap>& extra,
                                             unsigned arity, Rng& rng);

// Zero action of the given names on an algebra.
ContractionAction zero_action(DglaPtr g, const std::vector<std::string>& names);

}  // namespace dq
