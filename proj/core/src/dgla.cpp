#include "dq/dgla.hpp"

#include <algorithm>

namespace dq {

namespace {

int parity(int d) { return ((d % 2) + 2) % 2; }

Rational koszul(int a, int b) { return (parity(a) && parity(b)) ? Rational(-1) : Rational(1); }

Rational sign_of(int d) { return parity(d) ? Rational(-1) : Rational(1); }

std::vector<std::string> labels_of(const GradedSpace& s, std::initializer_list<std::size_t> idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(s.label(i));
  return out;
}

}  // namespace

DGLieAlgebra::DGLieAlgebra(CochainComplex complex, BracketTable bracket)
    : complex_(std::move(complex)), bracket_(std::move(bracket)) {
  const GradedSpace& s = *complex_.space();
  for (auto it = bracket_.begin(); it != bracket_.end();) {
    auto [i, j] = it->first;
    if (i >= s.size() || j >= s.size()) throw DomainError("bracket entry refers to an unknown basis index");
    for (auto e = it->second.begin(); e != it->second.end();) {
      if (e->first >= s.size()) throw DomainError("bracket value out of range");
      if (s.degree(e->first) != s.degree(i) + s.degree(j))
        throw DomainError("bracket [" + s.label(i) + "," + s.label(j) + "] has a term \"" + s.label(e->first) +
                          "\" of the wrong degree");
      if (dq::is_zero(e->second)) {
        e = it->second.erase(e);
      } else {
        ++e;
      }
    }
    if (it->second.empty()) {
      it = bracket_.erase(it);
    } else {
      ++it;
    }
  }
  rows_.resize(s.size());
  for (const auto& [key, value] : bracket_) rows_[key.first].emplace_back(key.second, &value);
}

DGLieAlgebra DGLieAlgebra::abelian(CochainComplex complex) { return DGLieAlgebra(std::move(complex), {}); }

const SparseVec& DGLieAlgebra::bracket_basis(std::size_t i, std::size_t j) const {
  static const SparseVec empty;
  auto it = bracket_.find({i, j});
  return it == bracket_.end() ? empty : it->second;
}

SparseVec DGLieAlgebra::bracket(const SparseVec& a, const SparseVec& b) const {
  SparseVec out;
  if (bracket_.empty()) return out;
  for (const auto& [i, x] : a) {
    const auto& row = rows_[i];
    if (row.empty()) continue;
    if (row.size() < b.size()) {
      for (const auto& [j, val] : row) {
        auto it = b.find(j);
        if (it != b.end()) axpy(out, x * it->second, *val);
      }
    } else {
      for (const auto& [j, y] : b) {
        const SparseVec& v = bracket_basis(i, j);
        if (!v.empty()) axpy(out, x * y, v);
      }
    }
  }
  return out;
}

AxiomReport check_dgla_axioms(const DGLieAlgebra& g, std::size_t max_failures) {
  AxiomReport rep;
  const GradedSpace& s = *g.space();
  const std::size_t n = s.size();
  auto fail = [&](std::string kind, std::vector<std::string> labels, SparseVec defect) {
    if (rep.failures.size() < max_failures) rep.failures.push_back({std::move(kind), std::move(labels), std::move(defect)});
  };
  auto e = [](std::size_t i) { return SparseVec{{i, Rational(1)}}; };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      ++rep.checked;
      SparseVec lhs = g.bracket_basis(i, j);
      axpy(lhs, koszul(s.degree(i), s.degree(j)), g.bracket_basis(j, i));
      if (!lhs.empty()) fail("antisymmetry", labels_of(s, {i, j}), lhs);

      ++rep.checked;
      SparseVec lb = g.differential(g.bracket_basis(i, j));
      axpy(lb, Rational(-1), g.bracket(g.differential(e(i)), e(j)));
      axpy(lb, -sign_of(s.degree(i)), g.bracket(e(i), g.differential(e(j))));
      if (!lb.empty()) fail("leibniz", labels_of(s, {i, j}), lb);
    }
  }
  if (g.is_abelian()) return rep;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const SparseVec& bij = g.bracket_basis(i, j);
      for (std::size_t k = j; k < n; ++k) {
        ++rep.checked;
        // [a,[b,c]] − [[a,b],c] − (−1)^{|a||b|}[b,[a,c]]
        SparseVec jac = g.bracket(e(i), g.bracket_basis(j, k));
        axpy(jac, Rational(-1), g.bracket(bij, e(k)));
        axpy(jac, -koszul(s.degree(i), s.degree(j)), g.bracket(e(j), g.bracket_basis(i, k)));
        if (!jac.empty()) fail("jacobi", labels_of(s, {i, j, k}), jac);
      }
    }
  }
  return rep;
}

EpsSeries series_bracket(const DGLieAlgebra& g, const EpsSeries& a, const EpsSeries& b) {
  const std::size_t n = std::max(a.size(), b.size());
  EpsSeries out(n);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].empty()) continue;
    for (std::size_t j = 0; i + j < n && j < b.size(); ++j) {
      if (b[j].empty()) continue;
      axpy(out[i + j], Rational(1), g.bracket(a[i], b[j]));
    }
  }
  return out;
}

EpsSeries series_d(const DGLieAlgebra& g, const EpsSeries& a) {
  EpsSeries out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = g.differential(a[i]);
  return out;
}

void series_axpy(EpsSeries& y, const Rational& a, const EpsSeries& x) {
  if (y.size() < x.size()) y.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) axpy(y[i], a, x[i]);
}

bool series_is_zero(const EpsSeries& a) {
  return std::all_of(a.begin(), a.end(), [](const SparseVec& v) { return v.empty(); });
}

MCElement::MCElement(DglaPtr g, unsigned n, EpsSeries c) : algebra(std::move(g)), order(n), coeffs(std::move(c)) {
  if (order == 0) throw DomainError("nilpotency order must be positive");
  if (coeffs.size() < order) coeffs.resize(order);
  if (coeffs.size() > order) {
    for (std::size_t k = order; k < coeffs.size(); ++k)
      if (!coeffs[k].empty()) throw DomainError("Maurer-Cartan element has a term at or beyond ε^N");
    coeffs.resize(order);
  }
  if (!coeffs[0].empty()) throw DomainError("Maurer-Cartan element must have no ε^0 term");
  for (const auto& c : coeffs)
    for (const auto& [i, v] : c)
      if (algebra->space()->degree(i) != 1)
        throw DomainError("Maurer-Cartan element has a term \"" + algebra->space()->label(i) + "\" outside degree 1");
}

EpsSeries mc_residual(const MCElement& pi) {
  const DGLieAlgebra& g = *pi.algebra;
  EpsSeries r = series_d(g, pi.coeffs);
  series_axpy(r, Rational(1, 2), series_bracket(g, pi.coeffs, pi.coeffs));
  return r;
}

MCElement gauge_transform(const EpsSeries& u_in, const MCElement& pi) {
  const DGLieAlgebra& g = *pi.algebra;
  EpsSeries u = u_in;
  u.resize(pi.order);
  if (u_in.size() > pi.order)
    for (std::size_t k = pi.order; k < u_in.size(); ++k)
      if (!u_in[k].empty()) throw DomainError("gauge parameter has a term at or beyond ε^N");
  if (!u[0].empty()) throw DomainError("gauge parameter must have no ε^0 term");
  for (const auto& c : u)
    for (const auto& [i, v] : c)
      if (g.space()->degree(i) != 0) throw DomainError("gauge parameter must have degree 0");

  EpsSeries result = pi.coeffs;
  EpsSeries term = pi.coeffs;
  for (unsigned k = 1; k < pi.order && !series_is_zero(term); ++k) {
    term = series_bracket(g, u, term);
    for (auto& v : term) v = scaled(v, Rational(1, k));
    series_axpy(result, Rational(1), term);
  }
  EpsSeries t = series_d(g, u);
  Rational fact = 1;
  for (unsigned k = 0; k < pi.order && !series_is_zero(t); ++k) {
    fact *= k + 1;
    series_axpy(result, Rational(-1) / fact, t);
    t = series_bracket(g, u, t);
  }
  return MCElement(pi.algebra, pi.order, std::move(result));
}

EpsSeries bch(const DGLieAlgebra& g, const EpsSeries& a, const EpsSeries& b) {
  auto br = [&](const EpsSeries& x, const EpsSeries& y) { return series_bracket(g, x, y); };
  EpsSeries ab = br(a, b);
  EpsSeries out = a;
  series_axpy(out, Rational(1), b);
  series_axpy(out, Rational(1, 2), ab);
  series_axpy(out, Rational(1, 12), br(a, ab));
  series_axpy(out, Rational(-1, 12), br(b, ab));
  series_axpy(out, Rational(-1, 24), br(b, br(a, ab)));
  return out;
}

std::string extended_label(const std::string& base, unsigned k) { return base + "|e^" + std::to_string(k); }

std::size_t ScalarExtension::index(std::size_t base_idx, unsigned k) const {
  const GradedSpace& bs = *base->space();
  const int deg = bs.degree(base_idx);
  auto [b0, b1] = bs.range(deg);
  auto [e0, e1] = algebra->space()->range(deg);
  (void)e1;
  return e0 + k * (b1 - b0) + (base_idx - b0);
}

SparseVec ScalarExtension::embed(const EpsSeries& s) const {
  SparseVec out;
  for (unsigned k = 0; k < s.size(); ++k) {
    if (k >= order) {
      if (!s[k].empty()) throw DomainError("series term beyond ε^N");
      continue;
    }
    for (const auto& [i, v] : s[k]) out.emplace(index(i, k), v);
  }
  return out;
}

EpsSeries ScalarExtension::split(const SparseVec& v) const {
  EpsSeries out(order);
  for (const auto& [i, c] : v) out[power[i]].emplace(base_index[i], c);
  return out;
}

GradedLinearMap ScalarExtension::extend_map(const GradedLinearMap& f, const ScalarExtension& target) const {
  if (target.order != order) throw DomainError("scalar extensions of different orders");
  GradedLinearMap out(algebra->space(), target.algebra->space(), f.degree());
  for (std::size_t i = 0; i < algebra->space()->size(); ++i) {
    SparseVec col;
    for (const auto& [t, v] : f.column(base_index[i])) col.emplace(target.index(t, power[i]), v);
    out.set_column(i, std::move(col));
  }
  return out;
}

namespace {

ScalarExtension extend_with(DglaPtr g, unsigned order, const EpsSeries* omega) {
  if (order == 0) throw DomainError("nilpotency order must be positive");
  const GradedSpace& bs = *g->space();
  std::map<int, std::vector<std::string>> basis;
  for (int deg : bs.degrees()) {
    auto [b0, b1] = bs.range(deg);
    auto& labels = basis[deg];
    for (unsigned k = 0; k < order; ++k)
      for (std::size_t i = b0; i < b1; ++i) labels.push_back(extended_label(bs.label(i), k));
  }
  ScalarExtension ext;
  ext.base = g;
  ext.order = order;
  SpacePtr space = make_space(std::move(basis));
  ext.base_index.resize(space->size());
  ext.power.resize(space->size());
  for (int deg : bs.degrees()) {
    auto [b0, b1] = bs.range(deg);
    auto [e0, e1] = space->range(deg);
    (void)e1;
    for (unsigned k = 0; k < order; ++k)
      for (std::size_t i = b0; i < b1; ++i) {
        std::size_t e = e0 + k * (b1 - b0) + (i - b0);
        ext.base_index[e] = i;
        ext.power[e] = k;
      }
  }
  auto lift = [&](const SparseVec& v, unsigned k, SparseVec& out, const Rational& c) {
    for (const auto& [t, x] : v) {
      auto [b0, b1] = bs.range(bs.degree(t));
      auto [e0, e1] = space->range(bs.degree(t));
      (void)e1;
      add_entry(out, e0 + k * (b1 - b0) + (t - b0), c * x);
    }
  };

  GradedLinearMap d(space, space, 1);
  for (std::size_t e = 0; e < space->size(); ++e) {
    SparseVec col;
    lift(g->d().column(ext.base_index[e]), ext.power[e], col, Rational(1));
    if (omega) {
      SparseVec unit{{ext.base_index[e], Rational(1)}};
      for (unsigned k = 1; k < omega->size() && k + ext.power[e] < order; ++k) {
        if ((*omega)[k].empty()) continue;
        lift(g->bracket((*omega)[k], unit), k + ext.power[e], col, Rational(1));
      }
    }
    d.set_column(e, std::move(col));
  }
  BracketTable table;
  for (const auto& [key, value] : g->table()) {
    for (unsigned k = 0; k < order; ++k) {
      for (unsigned l = 0; k + l < order; ++l) {
        SparseVec v;
        lift(value, k + l, v, Rational(1));
        std::size_t a = 0, b = 0;
        {
          auto [b0, b1] = bs.range(bs.degree(key.first));
          a = space->range(bs.degree(key.first)).first + k * (b1 - b0) + (key.first - b0);
        }
        {
          auto [b0, b1] = bs.range(bs.degree(key.second));
          b = space->range(bs.degree(key.second)).first + l * (b1 - b0) + (key.second - b0);
        }
        table.emplace(std::make_pair(a, b), std::move(v));
      }
    }
  }
  ext.algebra = std::make_shared<const DGLieAlgebra>(CochainComplex(space, std::move(d)), std::move(table));
  return ext;
}

}  // namespace

ScalarExtension extend_scalars(DglaPtr g, unsigned order) { return extend_with(std::move(g), order, nullptr); }

TwistedDgla twist_dgla(const MCElement& omega) {
  EpsSeries r = mc_residual(omega);
  if (!series_is_zero(r)) throw NotMaurerCartanError("twisting element is not Maurer-Cartan", std::move(r));
  try {
    return TwistedDgla{extend_with(omega.algebra, omega.order, &omega.coeffs)};
  } catch (const StructuralError& e) {
    throw StructuralError(std::string("twisted differential does not square to zero: ") + e.what());
  }
}

DGLieAlgebra rebase(const DGLieAlgebra& g, const std::map<int, std::vector<SparseVec>>& columns,
                    const std::map<int, std::vector<std::string>>& labels) {
  SpacePtr space = make_space(labels);
  const GradedSpace& old = *g.space();
  std::vector<SparseVec> newcols(space->size());
  for (const auto& [deg, cols] : columns) {
    auto [n0, n1] = space->range(deg);
    if (n1 - n0 != cols.size() || cols.size() != old.dim(deg))
      throw DomainError("change of basis has the wrong size in degree " + std::to_string(deg));
    for (std::size_t k = 0; k < cols.size(); ++k) newcols[n0 + k] = cols[k];
  }
  for (int deg : old.degrees())
    if (!columns.count(deg)) throw DomainError("change of basis misses degree " + std::to_string(deg));
  auto coords = [&](const SparseVec& v) {
    SparseVec out;
    std::map<int, SparseVec> parts;
    for (const auto& [i, c] : v) parts[old.degree(i)].emplace(i, c);
    for (const auto& [deg, part] : parts) {
      auto [n0, n1] = space->range(deg);
      std::vector<SparseVec> basis(newcols.begin() + static_cast<long>(n0), newcols.begin() + static_cast<long>(n1));
      auto x = sparse_solve(basis, part);
      if (!x) throw DomainError("change of basis is not invertible in degree " + std::to_string(deg));
      for (const auto& [k, c] : *x) out.emplace(n0 + k, c);
    }
    return out;
  };
  // invertibility: every old basis vector must be expressible
  for (std::size_t i = 0; i < old.size(); ++i) coords(SparseVec{{i, Rational(1)}});
  GradedLinearMap d(space, space, 1);
  for (std::size_t k = 0; k < space->size(); ++k) d.set_column(k, coords(g.differential(newcols[k])));
  BracketTable table;
  for (std::size_t a = 0; a < space->size(); ++a)
    for (std::size_t b = 0; b < space->size(); ++b) {
      SparseVec v = g.bracket(newcols[a], newcols[b]);
      if (!v.empty()) table.emplace(std::make_pair(a, b), coords(v));
    }
  return DGLieAlgebra(CochainComplex(space, std::move(d)), std::move(table));
}

}  // namespace dq
