#include "dq/linalg.hpp"

#include "dq/errors.hpp"

#include <algorithm>

namespace dq {

GradedSpace::GradedSpace(std::map<int, std::vector<std::string>> basis) : basis_(std::move(basis)) {
  for (auto it = basis_.begin(); it != basis_.end();) {
    if (it->second.empty()) {
      it = basis_.erase(it);
    } else {
      ++it;
    }
  }
  for (const auto& [deg, labels] : basis_) {
    const std::size_t first = degree_of_.size();
    for (const auto& l : labels) {
      auto [it, inserted] = lookup_.emplace(std::make_pair(deg, l), degree_of_.size());
      if (!inserted) throw DomainError("duplicate basis label \"" + l + "\" in degree " + std::to_string(deg));
      degree_of_.push_back(deg);
      label_of_.push_back(l);
    }
    ranges_[deg] = {first, degree_of_.size()};
  }
}

std::optional<std::size_t> GradedSpace::find(int degree, std::string_view label) const {
  auto it = lookup_.find(std::make_pair(degree, std::string(label)));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t GradedSpace::index(int degree, std::string_view label) const {
  auto i = find(degree, label);
  if (!i) throw DomainError("unknown basis label \"" + std::string(label) + "\" in degree " + std::to_string(degree));
  return *i;
}

std::pair<std::size_t, std::size_t> GradedSpace::range(int degree) const {
  auto it = ranges_.find(degree);
  if (it == ranges_.end()) return {0, 0};
  return it->second;
}

std::size_t GradedSpace::dim(int degree) const {
  auto [a, b] = range(degree);
  return b - a;
}

std::vector<int> GradedSpace::degrees() const {
  std::vector<int> out;
  for (const auto& [d, l] : basis_) out.push_back(d);
  return out;
}

SpacePtr make_space(std::map<int, std::vector<std::string>> basis) {
  return std::make_shared<const GradedSpace>(std::move(basis));
}

GradedVector::GradedVector(SpacePtr s, SparseVec c) : space(std::move(s)), coords(std::move(c)) {
  for (auto it = coords.begin(); it != coords.end();) {
    if (it->first >= space->size()) throw DomainError("graded vector coordinate out of range");
    if (dq::is_zero(it->second)) {
      it = coords.erase(it);
    } else {
      ++it;
    }
  }
}

GradedVector GradedVector::from_labels(SpacePtr s, const std::map<int, std::map<std::string, Rational>>& values) {
  SparseVec c;
  for (const auto& [deg, entries] : values)
    for (const auto& [label, v] : entries) add_entry(c, s->index(deg, label), v);
  return GradedVector(std::move(s), std::move(c));
}

std::map<int, std::map<std::string, Rational>> GradedVector::by_label() const {
  std::map<int, std::map<std::string, Rational>> out;
  for (const auto& [i, v] : coords) out[space->degree(i)][space->label(i)] = v;
  return out;
}

std::optional<int> GradedVector::homogeneous_degree() const {
  std::optional<int> deg;
  for (const auto& [i, v] : coords) {
    int d = space->degree(i);
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

GradedLinearMap::GradedLinearMap(SpacePtr source, SpacePtr target, int degree)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree), columns_(source_->size()) {}

GradedLinearMap::GradedLinearMap(SpacePtr source, SpacePtr target, int degree, std::vector<SparseVec> columns)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree), columns_(std::move(columns)) {
  if (columns_.size() != source_->size()) throw DomainError("linear map column count does not match source");
  for (std::size_t i = 0; i < columns_.size(); ++i) check_column(i, columns_[i]);
}

GradedLinearMap GradedLinearMap::zero(SpacePtr source, SpacePtr target, int degree) {
  return GradedLinearMap(std::move(source), std::move(target), degree);
}

GradedLinearMap GradedLinearMap::identity(SpacePtr space) {
  GradedLinearMap m(space, space, 0);
  for (std::size_t i = 0; i < space->size(); ++i) m.columns_[i] = SparseVec{{i, Rational(1)}};
  return m;
}

void GradedLinearMap::check_column(std::size_t i, const SparseVec& col) const {
  const int want = source_->degree(i) + degree_;
  for (const auto& [t, v] : col) {
    if (t >= target_->size()) throw DomainError("linear map entry out of range");
    if (target_->degree(t) != want)
      throw DomainError("linear map entry " + source_->label(i) + " -> " + target_->label(t) +
                        " violates declared degree " + std::to_string(degree_));
  }
}

void GradedLinearMap::set_column(std::size_t i, SparseVec col) {
  for (auto it = col.begin(); it != col.end();) {
    if (dq::is_zero(it->second)) {
      it = col.erase(it);
    } else {
      ++it;
    }
  }
  check_column(i, col);
  columns_.at(i) = std::move(col);
}

void GradedLinearMap::add(std::size_t source_index, std::size_t target_index, const Rational& value) {
  if (target_->degree(target_index) != source_->degree(source_index) + degree_)
    throw DomainError("linear map entry violates declared degree");
  add_entry(columns_.at(source_index), target_index, value);
}

SparseVec GradedLinearMap::apply(const SparseVec& v) const {
  SparseVec out;
  for (const auto& [i, c] : v) axpy(out, c, columns_.at(i));
  return out;
}

GradedVector GradedLinearMap::apply(const GradedVector& v) const { return GradedVector(target_, apply(v.coords)); }

GradedLinearMap GradedLinearMap::compose(const GradedLinearMap& other) const {
  GradedLinearMap out(other.source_, target_, degree_ + other.degree_);
  for (std::size_t i = 0; i < other.columns_.size(); ++i) out.columns_[i] = apply(other.columns_[i]);
  return out;
}

bool GradedLinearMap::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const SparseVec& c) { return c.empty(); });
}

std::vector<SparseVec> GradedLinearMap::block(int p) const {
  auto [s0, s1] = source_->range(p);
  auto [t0, t1] = target_->range(p + degree_);
  std::vector<SparseVec> out;
  out.reserve(s1 - s0);
  for (std::size_t i = s0; i < s1; ++i) {
    SparseVec col;
    for (const auto& [t, v] : columns_[i]) col.emplace(t - t0, v);
    out.push_back(std::move(col));
  }
  (void)t1;
  return out;
}

CochainComplex::CochainComplex(SpacePtr space, GradedLinearMap d) : space_(std::move(space)), d_(std::move(d)) {
  if (d_.degree() != 1) throw StructuralError("differential must have degree +1");
  if (d_.source() != space_ || d_.target() != space_) {
    if (d_.source()->basis() != space_->basis() || d_.target()->basis() != space_->basis())
      throw StructuralError("differential must be an endomorphism of the complex's space");
  }
  for (std::size_t i = 0; i < space_->size(); ++i) {
    if (!d_.apply(d_.column(i)).empty())
      throw StructuralError("d∘d != 0 on basis vector \"" + space_->label(i) + "\" (degree " +
                            std::to_string(space_->degree(i)) + ")");
  }
}

KernelImage kernel_image(const GradedLinearMap& map, int degree) {
  KernelImage out;
  auto [s0, s1] = map.source()->range(degree);
  if (s0 == s1) return out;
  std::vector<SparseVec> cols(map.columns().begin() + static_cast<long>(s0),
                              map.columns().begin() + static_cast<long>(s1));
  SparseKernelImage ki = sparse_kernel_image(cols);
  for (const auto& k : ki.kernel) {
    SparseVec v;
    for (const auto& [j, c] : k) v.emplace(s0 + j, c);
    out.kernel.emplace_back(map.source(), std::move(v));
  }
  for (auto j : ki.image_columns) out.image.emplace_back(map.target(), cols[j]);
  return out;
}

std::size_t rank_of(const std::vector<SparseVec>& vectors) { return sparse_rank(vectors); }

CohomologyReport cohomology(const CochainComplex& complex, int degree) {
  CohomologyReport rep;
  rep.degree = degree;
  KernelImage here = kernel_image(complex.d(), degree);
  KernelImage below = kernel_image(complex.d(), degree - 1);
  std::vector<SparseVec> cols;
  for (const auto& v : below.image) cols.push_back(v.coords);
  const std::size_t nimage = cols.size();
  for (const auto& v : here.kernel) cols.push_back(v.coords);
  SparseKernelImage ki = sparse_kernel_image(cols);
  for (auto j : ki.image_columns) {
    if (j >= nimage) rep.representatives.push_back(here.kernel[j - nimage]);
  }
  rep.dimension = rep.representatives.size();
  if (rep.dimension + nimage != ki.image_columns.size())
    throw StructuralError("image of d is not contained in the kernel of d");
  return rep;
}

void require_chain_map(const GradedLinearMap& f, const CochainComplex& source, const CochainComplex& target) {
  if (f.degree() != 0) throw ChainMapError("chain map must have degree 0");
  for (std::size_t i = 0; i < source.space()->size(); ++i) {
    SparseVec lhs = target.d().apply(f.column(i));
    SparseVec rhs = f.apply(source.d().column(i));
    axpy(lhs, Rational(-1), rhs);
    if (!lhs.empty())
      throw ChainMapError("map does not commute with differentials on basis vector \"" +
                          source.space()->label(i) + "\" (degree " + std::to_string(source.space()->degree(i)) +
                          ")");
  }
}

QuasiIsoReport is_quasi_iso(const GradedLinearMap& f, const CochainComplex& source, const CochainComplex& target,
                            int lo, int hi) {
  require_chain_map(f, source, target);
  QuasiIsoReport report;
  for (int p = lo; p <= hi; ++p) {
    QuasiIsoRow row;
    row.degree = p;
    CohomologyReport hs = cohomology(source, p);
    CohomologyReport ht = cohomology(target, p);
    row.source_dim = hs.dimension;
    row.target_dim = ht.dimension;
    std::vector<SparseVec> cols;
    for (const auto& v : kernel_image(target.d(), p - 1).image) cols.push_back(v.coords);
    const std::size_t base = rank_of(cols);
    for (const auto& r : hs.representatives) cols.push_back(f.apply(r.coords));
    row.induced_rank = rank_of(cols) - base;
    report.verdict = report.verdict && row.bijective();
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace dq
