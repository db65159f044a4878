#pragma once

#include "dq/errors.hpp"
#include "dq/linalg.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace dq {

// Structure constants [e_i, e_j] for ordered pairs of basis indices. Pairs
// that are absent bracket to zero. Both orders are stored so that a table
// violating antisymmetry can be represented and reported.
using BracketTable = std::map<std::pair<std::size_t, std::size_t>, SparseVec>;

class DGLieAlgebra {
 public:
  DGLieAlgebra() = default;
  // Throws DomainError if a bracket entry has the wrong degree.
  DGLieAlgebra(CochainComplex complex, BracketTable bracket);
  static DGLieAlgebra abelian(CochainComplex complex);

  const CochainComplex& complex() const { return complex_; }
  const SpacePtr& space() const { return complex_.space(); }
  const GradedLinearMap& d() const { return complex_.d(); }
  const BracketTable& table() const { return bracket_; }
  bool is_abelian() const { return bracket_.empty(); }

  const SparseVec& bracket_basis(std::size_t i, std::size_t j) const;
  SparseVec bracket(const SparseVec& a, const SparseVec& b) const;
  SparseVec differential(const SparseVec& a) const { return complex_.d().apply(a); }

 private:
  CochainComplex complex_;
  BracketTable bracket_;
  // row i: list of (j, [e_i,e_j]) for fast left multiplication
  std::vector<std::vector<std::pair<std::size_t, const SparseVec*>>> rows_;
};

using DglaPtr = std::shared_ptr<const DGLieAlgebra>;

struct AxiomFailure {
  std::string kind;  // "antisymmetry", "jacobi" or "leibniz"
  std::vector<std::string> labels;
  SparseVec defect;
};

struct AxiomReport {
  std::vector<AxiomFailure> failures;
  std::size_t checked = 0;
  bool ok() const { return failures.empty(); }
};

// Brute force over basis pairs and sorted basis triples.
AxiomReport check_dgla_axioms(const DGLieAlgebra& g, std::size_t max_failures = 64);

// Coefficients in Q[ε]/(ε^N): entry k is the coefficient of ε^k, k < N.
using EpsSeries = std::vector<SparseVec>;

EpsSeries series_bracket(const DGLieAlgebra& g, const EpsSeries& a, const EpsSeries& b);
EpsSeries series_d(const DGLieAlgebra& g, const EpsSeries& a);
void series_axpy(EpsSeries& y, const Rational& a, const EpsSeries& x);
bool series_is_zero(const EpsSeries& a);

// π ∈ m⊗g₁ over Q[ε]/(ε^N).
struct MCElement {
  DglaPtr algebra;
  unsigned order = 1;
  EpsSeries coeffs;  // size order, coeffs[0] empty

  // Throws DomainError on an ε⁰ term, wrong length or non-degree-1 entries.
  MCElement(DglaPtr g, unsigned n, EpsSeries c);
};

class NotMaurerCartanError : public Error {
 public:
  NotMaurerCartanError(const std::string& what, EpsSeries residual)
      : Error(what), residual_(std::move(residual)) {}
  const EpsSeries& residual() const { return residual_; }

 private:
  EpsSeries residual_;
};

// dπ + ½[π,π], truncated at ε^N.
EpsSeries mc_residual(const MCElement& pi);

// e^{ad u}π − Σ_k (ad u)^k(du)/(k+1)!. u must lie in m⊗g₀.
MCElement gauge_transform(const EpsSeries& u, const MCElement& pi);

// Baker-Campbell-Hausdorff product log(e^a e^b) through brackets of length 4.
// Exact when N ≤ 5 since longer brackets carry ε^5.
EpsSeries bch(const DGLieAlgebra& g, const EpsSeries& a, const EpsSeries& b);

// g⊗Q[ε]/(ε^N) as a DG-Lie algebra over Q. Basis label "a|e^k" stands for
// a·ε^k.
struct ScalarExtension {
  DglaPtr base;
  DglaPtr algebra;
  unsigned order = 1;
  std::vector<std::size_t> base_index;  // per extended index
  std::vector<unsigned> power;          // per extended index

  std::size_t index(std::size_t base_idx, unsigned k) const;
  SparseVec embed(const EpsSeries& s) const;
  EpsSeries split(const SparseVec& v) const;
  // ε-linear extension of f: base → target.base.
  GradedLinearMap extend_map(const GradedLinearMap& f, const ScalarExtension& target) const;
};

ScalarExtension extend_scalars(DglaPtr g, unsigned order);
std::string extended_label(const std::string& base, unsigned k);

// The twisted algebra (g⊗Q[ε]/(ε^N), d + [ω,−], [−,−]). Throws
// NotMaurerCartanError carrying the residual if ω is not Maurer-Cartan.
struct TwistedDgla {
  ScalarExtension extension;  // extension.algebra carries d_ω
};
TwistedDgla twist_dgla(const MCElement& omega);

// Change of basis: new basis vector k of degree p is columns[p][k] in the old basis.
DGLieAlgebra rebase(const DGLieAlgebra& g, const std::map<int, std::vector<SparseVec>>& columns,
                    const std::map<int, std::vector<std::string>>& labels);

}  // namespace dq
