#pragma once

#include "dq/matrix.hpp"
#include "dq/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dq {

// Finite graded vector space with named basis elements. Basis elements get a
// flat index ordered by (degree, position in the degree's list).
class GradedSpace {
 public:
  GradedSpace() = default;
  explicit GradedSpace(std::map<int, std::vector<std::string>> basis);

  std::size_t size() const { return degree_of_.size(); }
  int degree(std::size_t i) const { return degree_of_.at(i); }
  const std::string& label(std::size_t i) const { return label_of_.at(i); }
  std::optional<std::size_t> find(int degree, std::string_view label) const;
  std::size_t index(int degree, std::string_view label) const;
  // Flat index range [first, second) of the given degree; empty if absent.
  std::pair<std::size_t, std::size_t> range(int degree) const;
  std::size_t dim(int degree) const;
  std::vector<int> degrees() const;
  const std::map<int, std::vector<std::string>>& basis() const { return basis_; }

 private:
  std::map<int, std::vector<std::string>> basis_;
  std::map<int, std::pair<std::size_t, std::size_t>> ranges_;
  std::vector<int> degree_of_;
  std::vector<std::string> label_of_;
  std::map<std::pair<int, std::string>, std::size_t, std::less<>> lookup_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;
SpacePtr make_space(std::map<int, std::vector<std::string>> basis);

struct GradedVector {
  SpacePtr space;
  SparseVec coords;

  GradedVector() = default;
  GradedVector(SpacePtr s, SparseVec c);
  // Builds from {degree: {label: value}}; throws DomainError on unknown labels.
  static GradedVector from_labels(SpacePtr s, const std::map<int, std::map<std::string, Rational>>& values);
  std::map<int, std::map<std::string, Rational>> by_label() const;
  bool is_zero() const { return coords.empty(); }
  // Degree if every nonzero coordinate has the same degree.
  std::optional<int> homogeneous_degree() const;
};

// Linear map of a fixed degree between graded spaces, stored by columns.
class GradedLinearMap {
 public:
  GradedLinearMap() = default;
  GradedLinearMap(SpacePtr source, SpacePtr target, int degree);
  GradedLinearMap(SpacePtr source, SpacePtr target, int degree, std::vector<SparseVec> columns);

  static GradedLinearMap zero(SpacePtr source, SpacePtr target, int degree);
  static GradedLinearMap identity(SpacePtr space);

  const SpacePtr& source() const { return source_; }
  const SpacePtr& target() const { return target_; }
  int degree() const { return degree_; }
  const SparseVec& column(std::size_t i) const { return columns_.at(i); }
  const std::vector<SparseVec>& columns() const { return columns_; }
  void set_column(std::size_t i, SparseVec col);
  void add(std::size_t source_index, std::size_t target_index, const Rational& value);

  SparseVec apply(const SparseVec& v) const;
  GradedVector apply(const GradedVector& v) const;
  // this ∘ other
  GradedLinearMap compose(const GradedLinearMap& other) const;
  bool is_zero() const;

  // Columns of source degree p, re-indexed to positions inside target degree p+deg.
  std::vector<SparseVec> block(int p) const;

 private:
  void check_column(std::size_t i, const SparseVec& col) const;

  SpacePtr source_;
  SpacePtr target_;
  int degree_ = 0;
  std::vector<SparseVec> columns_;
};

class CochainComplex {
 public:
  CochainComplex() = default;
  // Throws StructuralError if d has degree != 1 or d∘d != 0.
  CochainComplex(SpacePtr space, GradedLinearMap d);

  const SpacePtr& space() const { return space_; }
  const GradedLinearMap& d() const { return d_; }

 private:
  SpacePtr space_;
  GradedLinearMap d_;
};

struct CohomologyReport {
  int degree = 0;
  std::size_t dimension = 0;
  std::vector<GradedVector> representatives;
};

struct KernelImage {
  std::vector<GradedVector> kernel;  // in the source, degree p
  std::vector<GradedVector> image;   // in the target, degree p + deg
};

KernelImage kernel_image(const GradedLinearMap& map, int degree);
CohomologyReport cohomology(const CochainComplex& complex, int degree);

struct QuasiIsoRow {
  int degree = 0;
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::size_t induced_rank = 0;
  bool bijective() const { return source_dim == target_dim && induced_rank == source_dim; }
};

struct QuasiIsoReport {
  bool verdict = true;
  std::vector<QuasiIsoRow> rows;
};

// Throws ChainMapError naming the first basis vector where f∘d != d∘f.
void require_chain_map(const GradedLinearMap& f, const CochainComplex& source, const CochainComplex& target);
QuasiIsoReport is_quasi_iso(const GradedLinearMap& f, const CochainComplex& source,
                            const CochainComplex& target, int lo, int hi);

// Rank of a family of vectors living in one space.
std::size_t rank_of(const std::vector<SparseVec>& vectors);

}  // namespace dq
