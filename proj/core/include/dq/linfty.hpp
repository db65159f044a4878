#pragma once

#include "dq/dgla.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace dq {

// A word w₁⋯w_n in S(V), V = g[1], stored as the sorted multiset of basis
// indices. Degrees in V are the space degrees minus one.
using Word = std::vector<std::size_t>;
// Element of S(V): canonical words with coefficients.
using SymElement = std::map<Word, Rational>;

inline int shifted_degree(const GradedSpace& s, std::size_t i) { return s.degree(i) - 1; }

// Sorts `seq` into canonical order. Returns the Koszul sign of the sort, or 0
// if the word vanishes (an odd element repeated).
int canonicalize(const GradedSpace& s, Word& seq);

// Koszul sign ε(I₁,…,I_p) for degrees in V; blocks are 1-based positions,
// each read in increasing order. Throws DomainError unless the blocks form
// a disjoint cover of {1..n}.
int koszul_sign(const std::vector<int>& degrees, const std::vector<std::vector<std::size_t>>& blocks);

void add_term(SymElement& x, const Word& w, const Rational& c);
// v·w for v ∈ V and a canonical word w.
SymElement prepend(const GradedSpace& s, const SparseVec& v, const Word& w);
// Product in S(V).
SymElement sym_multiply(const GradedSpace& s, const SymElement& a, const SymElement& b);
std::string word_labels(const GradedSpace& s, const Word& w);

enum class TowerKind { structure, morphism, coderivation };
std::string to_string(TowerKind k);

// Taylor coefficients ∂ⁿT : SⁿV → W of a coderivation or coalgebra map.
// Components above the arity bound are zero.
class TaylorTower {
 public:
  TaylorTower(TowerKind kind, SpacePtr source, SpacePtr target, int degree, unsigned arity_bound);
  virtual ~TaylorTower() = default;

  TowerKind kind() const { return kind_; }
  const SpacePtr& source() const { return source_; }
  const SpacePtr& target() const { return target_; }
  int degree() const { return degree_; }
  unsigned arity_bound() const { return arity_bound_; }
  // Highest arity that can be nonzero.
  virtual unsigned max_arity() const { return arity_bound_; }

  // ∂^{|w|} on a canonical word.
  SparseVec component(const Word& w) const;
  // Arbitrary argument order, with the Koszul sign.
  SparseVec eval(Word seq) const;
  // Linear extension to S(V), keeping only projections onto W.
  SparseVec apply_linear(const SymElement& x) const;

 protected:
  virtual SparseVec compute(const Word& w) const = 0;

 private:
  TowerKind kind_;
  SpacePtr source_;
  SpacePtr target_;
  int degree_;
  unsigned arity_bound_;
};

using TowerPtr = std::shared_ptr<const TaylorTower>;

class ExplicitTower : public TaylorTower {
 public:
  using TaylorTower::TaylorTower;
  // Stores a value on a word given in any order; throws DomainError on
  // degree violations, arity beyond the bound, or inconsistent repeats.
  void set(Word seq, const SparseVec& value);
  const std::map<Word, SparseVec>& entries() const { return entries_; }
  unsigned max_arity() const override;

 protected:
  SparseVec compute(const Word& w) const override;

 private:
  std::map<Word, SparseVec> entries_;
};

// Memoizes another tower; thread safe.
class CachedTower : public TaylorTower {
 public:
  explicit CachedTower(TowerPtr inner);
  unsigned max_arity() const override { return inner_->max_arity(); }

 protected:
  SparseVec compute(const Word& w) const override;

 private:
  TowerPtr inner_;
  mutable std::mutex mutex_;
  mutable std::map<Word, SparseVec> cache_;
};

// ∂¹Q(a) = −da, ∂²Q(ab) = (−1)^{|a|}[a,b], ∂ⁱQ = 0 for i > 2.
TowerPtr from_dgla(DglaPtr g, unsigned arity_bound = 4);
// Coderivation with only a linear part ∂¹ = f, of degree f.degree() on V.
TowerPtr linear_coderivation(const GradedLinearMap& f, unsigned arity_bound);
// Coalgebra map with only ∂¹ψ = f (f of degree 0).
TowerPtr linear_morphism(const GradedLinearMap& f, unsigned arity_bound);

// ε bookkeeping for towers over g⊗Q[ε]/(ε^N) that are ε-multilinear.
struct EpsGrading {
  unsigned order = 1;
  std::vector<unsigned> power;
  static EpsGrading of(const ScalarExtension& e) { return {e.order, e.power}; }
  static EpsGrading trivial(const GradedSpace& s) { return {1, std::vector<unsigned>(s.size(), 0)}; }
  unsigned word_power(const Word& w) const;
};

// ε-multilinear extension of a tower on base spaces.
TowerPtr extend_tower(TowerPtr base, const ScalarExtension& source, const ScalarExtension& target);

// Q(w) by the Leibniz rule.
SymElement coderivation_apply(const TaylorTower& q, const Word& w);
SymElement coderivation_apply(const TaylorTower& q, const SymElement& x);
// ψ(w) by the ordered-partition formula.
SymElement morphism_apply(const TaylorTower& psi, const Word& w);

// ∂ⁿ(Q²)(w), n = |w|.
SparseVec linfty_defect(const TaylorTower& q, const Word& w);
// Same value computed as π₁Q(Q(w)).
SparseVec linfty_defect_composed(const TaylorTower& q, const Word& w);

struct MorphismDefect {
  SparseVec defect;
  bool specialized = false;  // the quadratic form was also evaluated
  bool forms_agree = true;
};
// ∂ⁿ(ψQ)(w) − ∂ⁿ(Qψ)(w).
MorphismDefect morphism_defect(const TaylorTower& psi, const TaylorTower& qg, const TaylorTower& qh, const Word& w);
// Quadratic-structure specialization only; requires both Q of arity ≤ 2.
SparseVec morphism_defect_quadratic(const TaylorTower& psi, const TaylorTower& qg, const TaylorTower& qh,
                                    const Word& w);

// Powers ω^j/j! for j ≤ jmax as elements of S(V); ω must be even in V.
std::vector<SymElement> divided_powers(const GradedSpace& s, const SparseVec& omega, unsigned jmax);

// Σ_{i≥1} (1/i!) ∂ⁱQ(ωⁱ).
SparseVec linfty_mc_residual(const TaylorTower& q, const SparseVec& omega, const EpsGrading& eps);

struct TwistResult {
  TowerPtr qg;
  TowerPtr qh;
  TowerPtr psi;
  SparseVec omega_prime;
};

// Eqs for Q_ω, ψ_ω and ω′. ω lives in the maximal ideal (every term has
// positive ε-power) so all sums are finite.
TowerPtr twist_structure(TowerPtr q, const SparseVec& omega, const EpsGrading& eps);
TowerPtr twist_morphism(TowerPtr psi, const SparseVec& omega, const EpsGrading& eps);
SparseVec pushforward_mc(const TaylorTower& psi, const SparseVec& omega, const EpsGrading& eps);
TwistResult twist(TowerPtr qg, TowerPtr qh, TowerPtr psi, const SparseVec& omega, const EpsGrading& eps_g,
                  const EpsGrading& eps_h);

// Canonical words of length n; words whose ε-power reaches the order are
// skipped since every ε-multilinear tower vanishes on them.
std::vector<Word> basis_words(const GradedSpace& s, unsigned n, const EpsGrading* eps = nullptr);

struct WordFailure {
  unsigned arity = 0;
  std::string word;
  SparseVec value;
};

struct SweepReport {
  std::size_t words_checked = 0;
  unsigned window = 0;
  std::vector<WordFailure> failures;
  bool ok() const { return failures.empty(); }
};

SweepReport sweep_linfty(const TaylorTower& q, unsigned window, const EpsGrading* eps = nullptr,
                         std::size_t max_failures = 16);
SweepReport sweep_morphism(const TaylorTower& psi, const TaylorTower& qg, const TaylorTower& qh, unsigned window,
                           const EpsGrading* eps = nullptr, std::size_t max_failures = 16);

// An action of a set of odd derivations i_v on a DG-Lie algebra.
struct ContractionAction {
  DglaPtr algebra;
  std::vector<std::string> names;
  std::vector<GradedLinearMap> contractions;  // degree −1

  GradedLinearMap lie(std::size_t v) const;  // d i_v + i_v d
};

// Pairs where i_v[a,b] ≠ [i_v a,b] + (−1)^{|a|}[a,i_v b].
AxiomReport check_action(const ContractionAction& action, std::size_t max_failures = 16);

// The coderivation with ∂¹ = j_v = −i_v.
TowerPtr contraction_coderivation(const ContractionAction& action, std::size_t v, unsigned arity_bound);

// ∂ⁿ([Q, ĩ_v] − L̃_v)(w).
SparseVec lie_coderivation_defect(const TaylorTower& q, const ContractionAction& action, std::size_t v,
                                  const Word& w);

struct ReducedAlgebra {
  DglaPtr algebra;
  GradedLinearMap embedding;  // reduced → original
};

// {X : i_v X = L_v X = 0 for all v}, closed under d and the bracket.
ReducedAlgebra reduce_by_action(const ContractionAction& action);

// j_v(∂ⁿψ(w)) − ∂ⁿψ(ĩ_v w).
SparseVec action_commutator(const TaylorTower& psi, const ContractionAction& source, const ContractionAction& target,
                            std::size_t v, const Word& w);

struct DescentReport {
  bool commutes = true;
  bool lands_in_invariants = true;
  std::size_t words_checked = 0;
  std::shared_ptr<ExplicitTower> restricted;
  ReducedAlgebra source_reduced;
  ReducedAlgebra target_reduced;
  // Only when a twist is supplied.
  bool twisted = false;
  bool hypothesis_holds = true;  // (∂ⁱψ)(i_vω·γ) = 0 for i ≥ 2
  bool twisted_commutes = true;
  std::vector<std::string> notes;
};

struct DescentTwist {
  const ScalarExtension* source_ext;
  const ScalarExtension* target_ext;
  SparseVec omega;  // in source_ext
};

// Checks [ĩ_v, ψ] = 0 on the window, throwing DomainError naming v and the
// word if it fails, then restricts ψ to the invariants.
DescentReport descend_morphism(TowerPtr psi, const ContractionAction& source, const ContractionAction& target,
                               unsigned window, const DescentTwist* twist = nullptr);

// ε-linear extension of an action to g⊗Q[ε]/(ε^N).
ContractionAction extend_action(const ContractionAction& action, const ScalarExtension& ext);
// The same contractions on a twisted algebra sharing the extended space.
ContractionAction with_algebra(const ContractionAction& action, DglaPtr algebra);

// ∂²Q_h(ψ₁(γ)·∂ⁿψ(w)) − Σ_j ε ∂ⁿψ(∂²Q_g(γw_j)·w_rest): the equivariance
// identity implied by the morphism identity when ψ_q(γ⋯) = 0 for q ≥ 2.
SparseVec equivariance_defect(const TaylorTower& psi, const TaylorTower& qg, const TaylorTower& qh, std::size_t gamma,
                              const Word& w);

}  // namespace dq

namespace dq {

// ψ∘S(P): the tower evaluated after applying a degree-0 linear map P to
// every argument.
TowerPtr precompose(TowerPtr psi, const GradedLinearMap& p);

}  // namespace dq
