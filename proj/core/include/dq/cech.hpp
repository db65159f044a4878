#pragma once

#include "dq/cosimplicial.hpp"
#include "dq/dgla.hpp"

#include <map>
#include <string>
#include <vector>

namespace dq {

// Finite-dimensional commutative unital algebra over Q.
struct FiniteAlgebra {
  std::vector<std::string> labels;
  std::map<std::pair<std::size_t, std::size_t>, SparseVec> mult;
  SparseVec unit;

  std::size_t dim() const { return labels.size(); }
  SparseVec multiply(const SparseVec& a, const SparseVec& b) const;

  static FiniteAlgebra rationals();
  // Q[x]/(x^k) with basis 1, x, …, x^{k−1}
  static FiniteAlgebra truncated_polynomial(unsigned k);
  // A × B
  static FiniteAlgebra product(const FiniteAlgebra& a, const FiniteAlgebra& b);
};

// Throws StructuralError unless associative, commutative and unital.
void check_algebra(const FiniteAlgebra& a);

using Subset = std::vector<unsigned>;  // sorted, 0-based
std::vector<Subset> nonempty_subsets(unsigned n);
std::string subset_label(const Subset& s);  // 1-based, e.g. "12"

// Values A(U_J) for nonempty J ⊆ {0..n−1} and restriction maps ρ_{J,J′}
// (columns) for J ⊊ J′. Missing maps are composed through intermediate sets.
struct AlgebraCover {
  unsigned n = 1;
  std::map<Subset, FiniteAlgebra> values;
  std::map<std::pair<Subset, Subset>, std::vector<SparseVec>> restrictions;

  // Throws DomainError if no restriction J → J′ can be formed.
  std::vector<SparseVec> restriction(const Subset& from, const Subset& to) const;
};

// Checks algebra axioms, multiplicativity and functoriality of restrictions.
void check_cover(const AlgebraCover& c);
// Every A(U_J) equal to `a`, identity restrictions.
AlgebraCover constant_cover(unsigned n, const FiniteAlgebra& a);

struct DglaCover {
  unsigned n = 1;
  std::map<Subset, DglaPtr> values;
  std::map<std::pair<Subset, Subset>, GradedLinearMap> restrictions;

  GradedLinearMap restriction(const Subset& from, const Subset& to) const;
};

// Algebras as abelian DG-Lie algebras concentrated in degree 0.
DglaCover abelian_cover(const AlgebraCover& c);
// g ⊗ A(U_J) with [x⊗a, y⊗b] = [x,y]⊗ab, for a DG-Lie algebra g.
DglaCover lie_tensor_cover(DglaPtr g, const AlgebraCover& c);

// Level m is the product over j₀ ≤ … ≤ j_m of A(U_{j₀…j_m}); labels
// "j₀.j₁…:label". Checks the cosimplicial identities and restriction homs.
CosimplicialComplex ordered_cech(const DglaCover& cover, unsigned n_max);

// Finite linear category with composition g∘h.
struct LinearCategory {
  std::vector<std::string> objects;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::string>> homs;  // (x, y) → basis of u(x, y)
  // (x, y, z) → [g][h] = g∘h ∈ u(x, z) for g ∈ u(y, z), h ∈ u(x, y)
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::vector<std::vector<SparseVec>>> compose;
  std::map<std::size_t, SparseVec> identity;

  std::size_t hom_dim(std::size_t x, std::size_t y) const;
  SparseVec composite(std::size_t x, std::size_t y, std::size_t z, const SparseVec& g, const SparseVec& h) const;
};

void check_category(const LinearCategory& u);
// Objects the nonempty J, u(J, J′) = A(U_{J′}) for J ⊆ J′ and 0 otherwise.
LinearCategory category_from_cover(const AlgebraCover& c);
LinearCategory full_subcategory(const LinearCategory& u, const std::vector<std::size_t>& objects);
// Path category of a chain x₀ → x₁ with one-dimensional homs.
LinearCategory path_category_a2();
LinearCategory one_object_category(const FiniteAlgebra& a);

// Cⁿ(u) = Π_{U₀…U_n} Hom(u(U_{n−1},U_n)⊗…⊗u(U₀,U₁), u(U₀,U_n)) for n ≤ cap.
// The differential out of degree cap is dropped.
CochainComplex category_hochschild(const LinearCategory& u, unsigned cap);
// C(u) → C(v) for a full subcategory v, by restriction to chains in v.
GradedLinearMap hochschild_restriction(const CochainComplex& cu, const CochainComplex& cv);

struct DoubleComplexRow {
  unsigned degree = 0;               // Hochschild degree p
  std::vector<std::size_t> dims;     // C^{(m)} for m = −1..n−1
  std::vector<std::size_t> ranks;    // horizontal maps C^{(m)} → C^{(m+1)}
  bool squares_to_zero = true;
  bool exact = true;
};

struct DoubleComplexReport {
  unsigned cover_size = 0;
  unsigned cap = 0;
  std::vector<DoubleComplexRow> rows;
  bool vertical_commutes = true;  // restrictions are chain maps
  bool ok() const;
};

DoubleComplexReport double_complex_check(const AlgebraCover& c, unsigned cap);

}  // namespace dq
