#include "dq/polywindows.hpp"

#include "dq/errors.hpp"

#include <algorithm>
#include <functional>

namespace dq {

namespace {

std::vector<MultiIndex> multi_indices_up_to(unsigned dim, unsigned max_total) {
  std::vector<MultiIndex> out;
  for (unsigned t = 0; t <= max_total; ++t)
    for (auto& m : monomials_of_degree(dim, t)) out.push_back(m);
  return out;
}

// Ordered k-tuples of multi-indices summing to gamma.
void tuples_summing_to(const MultiIndex& gamma, unsigned k, const std::function<void(const std::vector<MultiIndex>&)>& f) {
  std::vector<MultiIndex> cur(k, MultiIndex(gamma.size(), 0));
  std::function<void(std::size_t, MultiIndex)> rec = [&](std::size_t slot, MultiIndex left) {
    if (slot + 1 == k) {
      cur[slot] = left;
      f(cur);
      return;
    }
    // all a ≤ left componentwise
    MultiIndex a(left.size(), 0);
    std::function<void(std::size_t)> pick = [&](std::size_t v) {
      if (v == left.size()) {
        cur[slot] = a;
        MultiIndex rest = left;
        for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= a[i];
        rec(slot + 1, rest);
        return;
      }
      for (unsigned x = 0; x <= left[v]; ++x) {
        a[v] = x;
        pick(v + 1);
      }
    };
    pick(0);
  };
  if (k == 0) {
    if (total_degree(gamma) == 0) f(cur);
    return;
  }
  rec(0, gamma);
}

std::vector<std::vector<unsigned>> subsets_of_size(unsigned dim, unsigned n) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  std::function<void(unsigned)> rec = [&](unsigned start) {
    if (cur.size() == n) {
      out.push_back(cur);
      return;
    }
    for (unsigned i = start; i < dim; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

template <class Key, class Elem>
void finish_window(PolyWindowDgla<Key, Elem>& w, const std::function<int(const Key&)>& degree_of,
                   const std::function<std::string(const Key&)>& label_of, const std::function<Elem(const Key&)>& make,
                   const std::function<Elem(const Elem&, const Elem&)>& bracket,
                   const std::function<Elem(const Elem&)>& diff) {
  std::map<int, std::vector<std::string>> labels;
  std::map<int, std::vector<Key>> keys;
  for (const auto& k : w.basis) {
    labels[degree_of(k)].push_back(label_of(k));
    keys[degree_of(k)].push_back(k);
  }
  SpacePtr space = make_space(labels);
  // Reorder the basis to match the flat indices of the space.
  w.basis.clear();
  for (auto& [deg, ks] : keys)
    for (auto& k : ks) w.basis.push_back(k);
  w.index.clear();
  for (std::size_t i = 0; i < w.basis.size(); ++i) w.index.emplace(w.basis[i], i);

  std::vector<Elem> elems;
  elems.reserve(w.basis.size());
  for (const auto& k : w.basis) elems.push_back(make(k));

  GradedLinearMap d(space, space, 1);
  if (diff)
    for (std::size_t i = 0; i < elems.size(); ++i) d.set_column(i, w.encode(diff(elems[i])));
  BracketTable table;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) {
      SparseVec v = w.encode(bracket(elems[i], elems[j]));
      if (!v.empty()) table.emplace(std::make_pair(i, j), std::move(v));
    }
  w.algebra = std::make_shared<const DGLieAlgebra>(CochainComplex(space, std::move(d)), std::move(table));
}

PolyVectorField pv_term(unsigned dim, const PVKey& k) {
  PolyVectorField p(dim);
  p.add_term(k.monomial, k.indices, Rational(1));
  return p;
}

PolyDiffOp pd_term(unsigned dim, const PDKey& k) {
  PolyDiffOp p(dim);
  p.add_term(k.monomial, k.slots, Rational(1));
  return p;
}

unsigned slots_order(const PDKey& k) {
  unsigned s = 0;
  for (const auto& a : k.slots) s += total_degree(a);
  return s;
}

}  // namespace

bool HkrReport::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const HkrRow& r) { return r.ok(); });
}

std::vector<PDKey> dpoly_window_basis(unsigned dim, unsigned arity, int w, unsigned order_cap, unsigned coeff_cap) {
  std::vector<PDKey> out;
  for (const auto& gamma : multi_indices_up_to(dim, order_cap)) {
    int fdeg = w + static_cast<int>(total_degree(gamma));
    if (fdeg < 0 || fdeg > static_cast<int>(coeff_cap)) continue;
    auto fs = monomials_of_degree(dim, static_cast<unsigned>(fdeg));
    tuples_summing_to(gamma, arity, [&](const std::vector<MultiIndex>& slots) {
      for (const auto& f : fs) out.push_back(PDKey{f, slots});
    });
  }
  return out;
}

HkrReport hkr_quasi_iso_report(unsigned dim, const InternalDegreeWindow& window, unsigned arity_min,
                               unsigned arity_max) {
  if (dim == 0) throw DomainError("dimension must be positive");
  if (window.min_w > window.max_w || arity_min > arity_max) throw DomainError("empty window");
  HkrReport rep;
  rep.dim = dim;
  rep.order_cap = window.order_cap ? window.order_cap : arity_max + 1;
  rep.coeff_cap = window.coeff_cap ? window.coeff_cap
                                   : static_cast<unsigned>(std::max(0, window.max_w + static_cast<int>(rep.order_cap)));
  for (unsigned n = arity_min; n <= arity_max; ++n)
    for (int w = window.min_w; w <= window.max_w; ++w) {
      HkrRow row;
      row.arity = n;
      row.internal_degree = w;

      std::map<int, std::vector<PDKey>> keys;
      for (unsigned k = (n == 0 ? 0 : n - 1); k <= n + 1; ++k)
        keys[static_cast<int>(k)] = dpoly_window_basis(dim, k, w, rep.order_cap, rep.coeff_cap);
      std::map<int, std::vector<std::string>> labels;
      std::map<PDKey, std::size_t> index;
      std::size_t flat = 0;
      for (auto& [k, ks] : keys) {
        auto& ls = labels[k];
        for (const auto& key : ks) {
          ls.push_back(polydiff_term_label(key, dim));
          index.emplace(key, flat++);
        }
      }
      SpacePtr space = make_space(labels);
      GradedLinearMap d(space, space, 1);
      auto encode = [&](const PolyDiffOp& x) {
        SparseVec v;
        for (const auto& [k, c] : x.terms()) {
          auto it = index.find(k);
          if (it == index.end())
            throw StructuralError("d_H leaves the window at " + polydiff_term_label(k, dim));
          add_entry(v, it->second, c);
        }
        return v;
      };
      for (auto& [k, ks] : keys) {
        if (k == static_cast<int>(n + 1)) continue;
        auto [lo, hi] = space->range(k);
        for (std::size_t i = lo; i < hi; ++i) d.set_column(i, encode(hochschild_differential(pd_term(dim, ks[i - lo]))));
      }
      CochainComplex cx(space, std::move(d));
      row.complex_dim = space->dim(static_cast<int>(n));
      row.cohomology_dim = cohomology(cx, static_cast<int>(n)).dimension;

      std::vector<SparseVec> reps;
      int fdeg = w + static_cast<int>(n);
      if (fdeg >= 0 && n <= dim) {
        for (const auto& f : monomials_of_degree(dim, static_cast<unsigned>(fdeg)))
          for (const auto& idx : subsets_of_size(dim, n)) {
            PolyVectorField a(dim);
            a.add_term(f, idx, Rational(1));
            PolyDiffOp h = hkr(a);
            if (!hochschild_differential(h).is_zero()) row.hkr_cocycles = false;
            reps.push_back(encode(h));
          }
      }
      row.tpoly_dim = reps.size();
      std::vector<SparseVec> boundaries;
      if (n > 0)
        for (auto& b : kernel_image(cx.d(), static_cast<int>(n) - 1).image) boundaries.push_back(b.coords);
      std::size_t rb = rank_of(boundaries);
      std::vector<SparseVec> all = boundaries;
      all.insert(all.end(), reps.begin(), reps.end());
      row.spans = rank_of(all) - rb == reps.size() && reps.size() == row.cohomology_dim;
      rep.rows.push_back(row);
    }
  return rep;
}

TpolyWindow tpoly_window(unsigned dim, unsigned weight_cap) {
  TpolyWindow w;
  w.dim = dim;
  for (unsigned deg = 1; deg <= weight_cap + 1; ++deg)
    for (const auto& f : monomials_of_degree(dim, deg))
      for (unsigned n = 0; n <= dim; ++n)
        for (const auto& idx : subsets_of_size(dim, n)) w.basis.push_back(PVKey{f, idx});
  w.beyond = [weight_cap](const PVKey& k) { return total_degree(k.monomial) > weight_cap + 1; };
  finish_window<PVKey, PolyVectorField>(
      w, [](const PVKey& k) { return static_cast<int>(k.indices.size()) - 1; },
      [dim](const PVKey& k) { return polyvector_term_label(k, dim); }, [dim](const PVKey& k) { return pv_term(dim, k); },
      [](const PolyVectorField& a, const PolyVectorField& b) { return schouten_bracket(a, b); }, nullptr);
  return w;
}

TpolyWindow tpoly_constant_window(unsigned dim, unsigned weight_cap) {
  TpolyWindow w;
  w.dim = dim;
  for (unsigned n = 1; n <= dim && 2 * n - 1 <= weight_cap; ++n)
    for (const auto& idx : subsets_of_size(dim, n)) w.basis.push_back(PVKey{Monomial(dim, 0), idx});
  w.beyond = nullptr;
  finish_window<PVKey, PolyVectorField>(
      w, [](const PVKey& k) { return static_cast<int>(k.indices.size()) - 1; },
      [dim](const PVKey& k) { return polyvector_term_label(k, dim); }, [dim](const PVKey& k) { return pv_term(dim, k); },
      [](const PolyVectorField& a, const PolyVectorField& b) { return schouten_bracket(a, b); }, nullptr);
  return w;
}

DpolyWindow dpoly_constant_window(unsigned dim, unsigned weight_cap) {
  DpolyWindow w;
  w.dim = dim;
  for (unsigned n = 1; n <= weight_cap + 1; ++n)
    for (const auto& gamma : multi_indices_up_to(dim, weight_cap + 1 - n))
      tuples_summing_to(gamma, n, [&](const std::vector<MultiIndex>& slots) {
        w.basis.push_back(PDKey{Monomial(dim, 0), slots});
      });
  w.beyond = [weight_cap](const PDKey& k) {
    return k.slots.empty() || slots_order(k) + k.slots.size() - 1 > weight_cap;
  };
  finish_window<PDKey, PolyDiffOp>(
      w, [](const PDKey& k) { return static_cast<int>(k.slots.size()) - 1; },
      [dim](const PDKey& k) { return polydiff_term_label(k, dim); }, [dim](const PDKey& k) { return pd_term(dim, k); },
      [](const PolyDiffOp& a, const PolyDiffOp& b) { return gerstenhaber_bracket(a, b); },
      [](const PolyDiffOp& a) { return hochschild_differential(a); });
  return w;
}

GradedLinearMap hkr_window_map(const TpolyWindow& source, const DpolyWindow& target) {
  if (source.dim != target.dim) throw DomainError("dimension mismatch");
  GradedLinearMap m(source.algebra->space(), target.algebra->space(), 0);
  for (std::size_t i = 0; i < source.basis.size(); ++i) {
    PolyDiffOp h = hkr(pv_term(source.dim, source.basis[i]));
    SparseVec v;
    for (const auto& [k, c] : h.terms()) {
      auto it = target.index.find(k);
      if (it == target.index.end()) throw DomainError("hkr leaves the target window");
      add_entry(v, it->second, c);
    }
    m.set_column(i, std::move(v));
  }
  return m;
}

ContractionAction tpoly_contractions(const TpolyWindow& window, const std::vector<Poly>& fs) {
  ContractionAction act;
  act.algebra = window.algebra;
  const auto& space = window.algebra->space();
  for (const auto& f : fs) {
    PolyVectorField fv(window.dim);
    for (const auto& [m, c] : f) {
      if (total_degree(m) == 0) throw DomainError("contraction function must have no constant term");
      fv.add_term(m, {}, c);
    }
    GradedLinearMap iv(space, space, -1);
    for (std::size_t i = 0; i < window.basis.size(); ++i)
      iv.set_column(i, window.encode(schouten_bracket(fv, pv_term(window.dim, window.basis[i]))));
    act.names.push_back("d(" + poly_to_string(f, window.dim) + ")");
    act.contractions.push_back(std::move(iv));
  }
  return act;
}

// ---------------------------------------------------------------------------
// Taylor towers on polyvectors

namespace {

bool odd_shifted(const PVKey& k) { return k.indices.size() % 2 == 1; }

// Sorts a word with the Koszul sign of T_poly[1]; 0 if an odd term repeats.
int sort_word(std::vector<PVKey>& w) {
  int sign = 1;
  for (std::size_t i = 1; i < w.size(); ++i)
    for (std::size_t j = i; j > 0 && !(w[j - 1] < w[j]); --j) {
      if (w[j - 1] == w[j]) {
        if (odd_shifted(w[j])) return 0;
        break;
      }
      if (odd_shifted(w[j - 1]) && odd_shifted(w[j])) sign = -sign;
      std::swap(w[j - 1], w[j]);
    }
  return sign;
}

}  // namespace

PolyTower::PolyTower(unsigned dim, unsigned arity_bound, bool hkr_linear)
    : dim_(dim), arity_bound_(arity_bound), hkr_linear_(hkr_linear) {}

void PolyTower::set(std::vector<PVKey> word, const PolyDiffOp& value) {
  if (word.empty() || word.size() > arity_bound_) throw DomainError("word length outside the tower's arity window");
  if (word.size() == 1 && hkr_linear_) throw DomainError("the linear component is fixed to hkr");
  int s = sort_word(word);
  if (s == 0) {
    if (!value.is_zero()) throw DomainError("value on a vanishing word must be zero");
    return;
  }
  PolyDiffOp v(dim_);
  v.add(value, Rational(s));
  table_[std::move(word)] = std::move(v);
}

PolyDiffOp PolyTower::component(const std::vector<PVKey>& word) const {
  PolyDiffOp out(dim_);
  if (word.empty() || word.size() > arity_bound_) return out;
  if (word.size() == 1 && hkr_linear_) return hkr(pv_term(dim_, word[0]));
  std::vector<PVKey> w = word;
  int s = sort_word(w);
  if (s == 0) return out;
  auto it = table_.find(w);
  if (it != table_.end()) out.add(it->second, Rational(s));
  return out;
}

PolyDiffOp PolyTower::eval(const std::vector<PolyVectorField>& args) const {
  PolyDiffOp out(dim_);
  std::vector<PVKey> word(args.size());
  std::function<void(std::size_t, Rational)> rec = [&](std::size_t i, Rational c) {
    if (i == args.size()) {
      out.add(component(word), c);
      return;
    }
    for (const auto& [k, v] : args[i].terms()) {
      word[i] = k;
      rec(i + 1, c * v);
    }
  };
  rec(0, Rational(1));
  return out;
}

bool PropertyReport::holds(const std::string& property) const {
  return std::none_of(violations.begin(), violations.end(),
                      [&](const PropertyViolation& v) { return v.property == property; });
}

std::vector<PolyVectorField> gl_basis(unsigned dim) {
  std::vector<PolyVectorField> out;
  for (unsigned i = 0; i < dim; ++i)
    for (unsigned j = 0; j < dim; ++j) {
      PolyVectorField g(dim);
      g.add_term(unit_monomial(dim, i), {j}, Rational(1));
      out.push_back(std::move(g));
    }
  return out;
}

PropertyReport check_properties(const PolyTower& u, unsigned arity_max, unsigned coeff_cap,
                                std::size_t max_violations) {
  unsigned dim = u.dim();
  std::vector<PVKey> basis, vector_fields;
  for (unsigned deg = 0; deg <= coeff_cap; ++deg)
    for (const auto& f : monomials_of_degree(dim, deg))
      for (unsigned n = 0; n <= std::min(arity_max, dim); ++n)
        for (const auto& idx : subsets_of_size(dim, n)) {
          basis.push_back(PVKey{f, idx});
          if (n == 1) vector_fields.push_back(basis.back());
        }
  PropertyReport rep;
  auto labels = [&](const std::vector<PVKey>& w) {
    std::vector<std::string> out;
    for (const auto& k : w) out.push_back(polyvector_term_label(k, dim));
    return out;
  };
  auto violate = [&](const char* p, const std::vector<PVKey>& w) {
    if (rep.violations.size() < max_violations) rep.violations.push_back({p, labels(w)});
  };
  // Nondecreasing words over a key list.
  auto for_words = [](const std::vector<PVKey>& keys, std::size_t len, const std::function<void(std::vector<PVKey>&)>& f) {
    std::vector<PVKey> w(len);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
      if (pos == len) {
        f(w);
        return;
      }
      for (std::size_t i = start; i < keys.size(); ++i) {
        w[pos] = keys[i];
        rec(pos + 1, i);
      }
    };
    rec(0, 0);
  };

  for (unsigned q = 2; q <= u.arity_bound(); ++q)
    for_words(vector_fields, q, [&](std::vector<PVKey>& w) {
      ++rep.p4_checked;
      if (!u.component(w).is_zero()) violate("P4", w);
    });

  auto gl = gl_basis(dim);
  for (const auto& g : gl) {
    const PVKey gk = g.terms().begin()->first;
    for (unsigned q = 2; q <= u.arity_bound(); ++q)
      for_words(basis, q - 1, [&](std::vector<PVKey>& w) {
        std::vector<PVKey> full{gk};
        full.insert(full.end(), w.begin(), w.end());
        ++rep.p5_checked;
        if (!u.component(full).is_zero()) violate("P5", full);
      });
    PolyDiffOp hg = hkr(g);
    for (unsigned q = 1; q <= u.arity_bound(); ++q)
      for_words(basis, q, [&](std::vector<PVKey>& w) {
        ++rep.p3_checked;
        std::vector<PolyVectorField> args;
        for (const auto& k : w) args.push_back(pv_term(dim, k));
        PolyDiffOp lhs = gerstenhaber_bracket(hg, u.eval(args));
        for (std::size_t j = 0; j < args.size(); ++j) {
          auto moved = args;
          moved[j] = schouten_bracket(g, args[j]);
          lhs.add(u.eval(moved), Rational(-1));
        }
        if (!lhs.is_zero()) {
          std::vector<PVKey> full{gk};
          full.insert(full.end(), w.begin(), w.end());
          violate("P3'", full);
        }
      });
  }
  return rep;
}

}  // namespace dq
