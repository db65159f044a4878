#include "dq/linfty.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <bit>

namespace dq {

namespace {

bool odd(const GradedSpace& s, std::size_t i) { return ((s.degree(i) - 1) & 1) != 0; }

// ε(I, N−I) for a bitmask I over the positions of w.
int split_sign(const GradedSpace& s, const Word& w, unsigned mask) {
  int sign = 1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!((mask >> i) & 1u) || !odd(s, w[i])) continue;
    for (std::size_t j = 0; j < i; ++j)
      if (!((mask >> j) & 1u) && odd(s, w[j])) sign = -sign;
  }
  return sign;
}

Word select(const Word& w, unsigned mask, bool inside) {
  Word out;
  for (std::size_t i = 0; i < w.size(); ++i)
    if ((((mask >> i) & 1u) != 0) == inside) out.push_back(w[i]);
  return out;
}

// Σ_i ε({i}, N−{i}) f(w_i)·w_{N−{i}}.
SymElement linear_derivation_apply(const GradedSpace& s, const GradedLinearMap& f, const Word& w) {
  SymElement out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const SparseVec& col = f.column(w[i]);
    if (col.empty()) continue;
    const unsigned mask = 1u << i;
    const int sign = split_sign(s, w, mask);
    Word rest = select(w, mask, false);
    for (const auto& [word, c] : prepend(s, col, rest)) add_term(out, word, sign * c);
  }
  return out;
}

void check_same_space(const SpacePtr& a, const SpacePtr& b, const char* what) {
  if (a != b && a->basis() != b->basis()) throw DomainError(std::string("space mismatch: ") + what);
}

}  // namespace

int canonicalize(const GradedSpace& s, Word& seq) {
  int sign = 1;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    for (std::size_t j = i; j > 0 && seq[j - 1] > seq[j]; --j) {
      if (odd(s, seq[j - 1]) && odd(s, seq[j])) sign = -sign;
      std::swap(seq[j - 1], seq[j]);
    }
  }
  for (std::size_t i = 1; i < seq.size(); ++i)
    if (seq[i] == seq[i - 1] && odd(s, seq[i])) return 0;
  return sign;
}

int koszul_sign(const std::vector<int>& degrees, const std::vector<std::vector<std::size_t>>& blocks) {
  const std::size_t n = degrees.size();
  std::vector<bool> seen(n + 1, false);
  std::vector<std::size_t> order;
  for (auto block : blocks) {
    std::sort(block.begin(), block.end());
    for (auto p : block) {
      if (p < 1 || p > n) throw DomainError("partition refers to position " + std::to_string(p) + " outside 1.." + std::to_string(n));
      if (seen[p]) throw DomainError("partition blocks overlap at position " + std::to_string(p));
      seen[p] = true;
      order.push_back(p);
    }
  }
  if (order.size() != n) throw DomainError("partition does not cover every position");
  int sign = 1;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (order[a] > order[b] && (degrees[order[a] - 1] & 1) && (degrees[order[b] - 1] & 1)) sign = -sign;
  return sign;
}

void add_term(SymElement& x, const Word& w, const Rational& c) {
  if (dq::is_zero(c)) return;
  auto [it, inserted] = x.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (dq::is_zero(it->second)) x.erase(it);
  }
}

SymElement prepend(const GradedSpace& s, const SparseVec& v, const Word& w) {
  SymElement out;
  for (const auto& [t, c] : v) {
    Word seq;
    seq.reserve(w.size() + 1);
    seq.push_back(t);
    seq.insert(seq.end(), w.begin(), w.end());
    const int sign = canonicalize(s, seq);
    if (sign != 0) add_term(out, seq, sign * c);
  }
  return out;
}

SymElement sym_multiply(const GradedSpace& s, const SymElement& a, const SymElement& b) {
  SymElement out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      Word seq = wa;
      seq.insert(seq.end(), wb.begin(), wb.end());
      const int sign = canonicalize(s, seq);
      if (sign != 0) add_term(out, seq, sign * ca * cb);
    }
  return out;
}

std::string word_labels(const GradedSpace& s, const Word& w) {
  std::string out;
  for (auto i : w) {
    if (!out.empty()) out += ' ';
    out += s.label(i);
  }
  return out;
}

std::string to_string(TowerKind k) {
  switch (k) {
    case TowerKind::structure:
      return "structure";
    case TowerKind::morphism:
      return "morphism";
    case TowerKind::coderivation:
      return "coderivation";
  }
  return "structure";
}

TaylorTower::TaylorTower(TowerKind kind, SpacePtr source, SpacePtr target, int degree, unsigned arity_bound)
    : kind_(kind), source_(std::move(source)), target_(std::move(target)), degree_(degree), arity_bound_(arity_bound) {
  if (arity_bound_ == 0) throw DomainError("arity bound must be positive");
}

SparseVec TaylorTower::component(const Word& w) const {
  if (w.empty() || w.size() > arity_bound_ || w.size() > max_arity()) return {};
  return compute(w);
}

SparseVec TaylorTower::eval(Word seq) const {
  const int sign = canonicalize(*source_, seq);
  if (sign == 0) return {};
  SparseVec v = component(seq);
  if (sign < 0)
    for (auto& [i, c] : v) c = -c;
  return v;
}

SparseVec TaylorTower::apply_linear(const SymElement& x) const {
  SparseVec out;
  for (const auto& [w, c] : x) {
    if (w.empty()) continue;
    SparseVec v = component(w);
    if (!v.empty()) axpy(out, c, v);
  }
  return out;
}

void ExplicitTower::set(Word seq, const SparseVec& value) {
  if (seq.empty() || seq.size() > arity_bound())
    throw DomainError("tower entry arity " + std::to_string(seq.size()) + " outside 1.." + std::to_string(arity_bound()));
  const GradedSpace& s = *source();
  for (auto i : seq)
    if (i >= s.size()) throw DomainError("tower entry refers to an unknown basis index");
  Word original = seq;
  const int sign = canonicalize(s, seq);
  SparseVec v;
  for (const auto& [t, c] : value)
    if (!dq::is_zero(c)) v.emplace(t, c);
  if (sign == 0) {
    if (!v.empty())
      throw DomainError("graded symmetry violated: nonzero value on word \"" + word_labels(s, original) +
                        "\" with a repeated odd element");
    return;
  }
  int want = degree() + 1;
  for (auto i : seq) want += s.degree(i) - 1;
  for (const auto& [t, c] : v) {
    if (t >= target()->size()) throw DomainError("tower value refers to an unknown target index");
    if (target()->degree(t) != want)
      throw DomainError("tower value on \"" + word_labels(s, original) + "\" has a term \"" + target()->label(t) +
                        "\" of the wrong degree");
  }
  if (sign < 0)
    for (auto& [t, c] : v) c = -c;
  auto it = entries_.find(seq);
  if (it != entries_.end()) {
    if (it->second != v)
      throw DomainError("graded symmetry violated: inconsistent values for word \"" + word_labels(s, seq) + "\"");
    return;
  }
  if (!v.empty()) entries_.emplace(std::move(seq), std::move(v));
}

unsigned ExplicitTower::max_arity() const {
  unsigned m = 0;
  for (const auto& [w, v] : entries_) m = std::max<unsigned>(m, static_cast<unsigned>(w.size()));
  return std::min(m, arity_bound());
}

SparseVec ExplicitTower::compute(const Word& w) const {
  auto it = entries_.find(w);
  return it == entries_.end() ? SparseVec{} : it->second;
}

CachedTower::CachedTower(TowerPtr inner)
    : TaylorTower(inner->kind(), inner->source(), inner->target(), inner->degree(), inner->arity_bound()),
      inner_(std::move(inner)) {}

SparseVec CachedTower::compute(const Word& w) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
  }
  SparseVec v = inner_->component(w);
  std::lock_guard<std::mutex> lock(mutex_);
  cache_.emplace(w, v);
  return v;
}

namespace {

class DglaTower : public TaylorTower {
 public:
  DglaTower(DglaPtr g, unsigned bound)
      : TaylorTower(TowerKind::structure, g->space(), g->space(), 1, bound), g_(std::move(g)) {}
  unsigned max_arity() const override { return std::min(2u, arity_bound()); }

 protected:
  SparseVec compute(const Word& w) const override {
    if (w.size() == 1) return scaled(g_->d().column(w[0]), Rational(-1));
    if (w.size() == 2) {
      const int deg = g_->space()->degree(w[0]);
      return scaled(g_->bracket_basis(w[0], w[1]), (deg & 1) ? Rational(-1) : Rational(1));
    }
    return {};
  }

 private:
  DglaPtr g_;
};

class LinearTower : public TaylorTower {
 public:
  LinearTower(TowerKind kind, GradedLinearMap f, unsigned bound)
      : TaylorTower(kind, f.source(), f.target(), f.degree(), bound), f_(std::move(f)) {}
  unsigned max_arity() const override { return 1; }

 protected:
  SparseVec compute(const Word& w) const override { return w.size() == 1 ? f_.column(w[0]) : SparseVec{}; }

 private:
  GradedLinearMap f_;
};

class ExtendedTower : public TaylorTower {
 public:
  ExtendedTower(TowerPtr base, const ScalarExtension& source, const ScalarExtension& target)
      : TaylorTower(base->kind(), source.algebra->space(), target.algebra->space(), base->degree(),
                    base->arity_bound()),
        base_(std::move(base)),
        order_(source.order),
        src_index_(source.base_index),
        src_power_(source.power),
        target_(target) {
    check_same_space(base_->source(), source.base->space(), "tower source vs extension base");
    check_same_space(base_->target(), target.base->space(), "tower target vs extension base");
    if (source.order != target.order) throw DomainError("scalar extensions of different orders");
  }
  unsigned max_arity() const override { return base_->max_arity(); }

 protected:
  SparseVec compute(const Word& w) const override {
    unsigned p = 0;
    Word seq;
    seq.reserve(w.size());
    for (auto i : w) {
      p += src_power_[i];
      seq.push_back(src_index_[i]);
    }
    if (p >= order_) return {};
    SparseVec out;
    for (const auto& [t, c] : base_->eval(seq)) out.emplace(target_.index(t, p), c);
    return out;
  }

 private:
  TowerPtr base_;
  unsigned order_;
  std::vector<std::size_t> src_index_;
  std::vector<unsigned> src_power_;
  ScalarExtension target_;
};

class TwistedTower : public TaylorTower {
 public:
  TwistedTower(TowerPtr base, std::vector<SymElement> powers, EpsGrading eps)
      : TaylorTower(base->kind(), base->source(), base->target(), base->degree(), base->arity_bound()),
        base_(std::move(base)),
        powers_(std::move(powers)),
        eps_(std::move(eps)) {}
  unsigned max_arity() const override { return base_->max_arity(); }

 protected:
  SparseVec compute(const Word& w) const override {
    const GradedSpace& s = *source();
    const unsigned p = eps_.word_power(w);
    SparseVec out;
    for (std::size_t j = 0; j < powers_.size(); ++j) {
      if (w.size() + j > base_->max_arity()) break;
      if (p + j >= eps_.order && j > 0) break;
      for (const auto& [pw, c] : powers_[j]) {
        Word seq = pw;
        seq.insert(seq.end(), w.begin(), w.end());
        const int sign = canonicalize(s, seq);
        if (sign == 0) continue;
        SparseVec v = base_->component(seq);
        if (!v.empty()) axpy(out, sign * c, v);
      }
    }
    return out;
  }

 private:
  TowerPtr base_;
  std::vector<SymElement> powers_;
  EpsGrading eps_;
};

unsigned omega_jmax(const EpsGrading& eps, const GradedSpace& s, const SparseVec& omega, unsigned arity) {
  if (eps.power.size() != s.size()) throw DomainError("ε grading does not match the space");
  for (const auto& [i, c] : omega) {
    if (eps.power[i] == 0)
      throw DomainError("twisting element is not nilpotent: term \"" + s.label(i) + "\" has no ε factor");
    if (s.degree(i) != 1) throw DomainError("twisting element must have degree 1");
  }
  return std::min(arity, eps.order == 0 ? 0u : eps.order - 1);
}

}  // namespace

TowerPtr from_dgla(DglaPtr g, unsigned arity_bound) { return std::make_shared<DglaTower>(std::move(g), arity_bound); }

TowerPtr linear_coderivation(const GradedLinearMap& f, unsigned arity_bound) {
  return std::make_shared<LinearTower>(TowerKind::coderivation, f, arity_bound);
}

TowerPtr linear_morphism(const GradedLinearMap& f, unsigned arity_bound) {
  if (f.degree() != 0) throw DomainError("morphism components have degree 0");
  return std::make_shared<LinearTower>(TowerKind::morphism, f, arity_bound);
}

unsigned EpsGrading::word_power(const Word& w) const {
  unsigned p = 0;
  for (auto i : w) p += power[i];
  return p;
}

TowerPtr extend_tower(TowerPtr base, const ScalarExtension& source, const ScalarExtension& target) {
  return std::make_shared<CachedTower>(std::make_shared<ExtendedTower>(std::move(base), source, target));
}

SymElement coderivation_apply(const TaylorTower& q, const Word& w) {
  const GradedSpace& s = *q.source();
  if (w.size() > q.arity_bound())
    throw DomainError("word of length " + std::to_string(w.size()) + " exceeds arity bound " +
                      std::to_string(q.arity_bound()));
  if (w.size() >= 32) throw DomainError("word too long");
  SymElement out;
  const unsigned full = (1u << w.size()) - 1;
  for (unsigned mask = 1; mask <= full; ++mask) {
    if (static_cast<unsigned>(std::popcount(mask)) > q.max_arity()) continue;
    SparseVec val = q.component(select(w, mask, true));
    if (val.empty()) continue;
    const int sign = split_sign(s, w, mask);
    for (const auto& [word, c] : prepend(*q.target(), val, select(w, mask, false))) add_term(out, word, sign * c);
  }
  return out;
}

SymElement coderivation_apply(const TaylorTower& q, const SymElement& x) {
  SymElement out;
  for (const auto& [w, c] : x)
    for (const auto& [u, d] : coderivation_apply(q, w)) add_term(out, u, c * d);
  return out;
}

SymElement morphism_apply(const TaylorTower& psi, const Word& w) {
  const GradedSpace& s = *psi.source();
  const GradedSpace& t = *psi.target();
  const std::size_t n = w.size();
  std::vector<int> degrees;
  for (auto i : w) degrees.push_back(s.degree(i) - 1);
  SymElement out;
  if (n == 0) {
    out.emplace(Word{}, Rational(1));
    return out;
  }
  for (std::size_t p = 1; p <= n; ++p) {
    const Rational inv_fact = Rational(1) / factorial(static_cast<unsigned>(p));
    std::vector<std::size_t> f(n, 0);
    // all maps positions → blocks, keep surjective ones
    while (true) {
      std::vector<std::vector<std::size_t>> blocks(p);
      for (std::size_t i = 0; i < n; ++i) blocks[f[i]].push_back(i + 1);
      bool surjective = std::all_of(blocks.begin(), blocks.end(), [](const auto& b) { return !b.empty(); });
      if (surjective) {
        SymElement cur{{Word{}, Rational(koszul_sign(degrees, blocks)) * inv_fact}};
        for (const auto& b : blocks) {
          Word sub;
          for (auto pos : b) sub.push_back(w[pos - 1]);
          SparseVec val = psi.component(sub);
          SymElement next;
          for (const auto& [word, c] : cur)
            for (const auto& [ti, d] : val) {
              Word seq = word;
              seq.push_back(ti);
              const int sign = canonicalize(t, seq);
              if (sign != 0) add_term(next, seq, sign * c * d);
            }
          cur = std::move(next);
          if (cur.empty()) break;
        }
        for (const auto& [word, c] : cur) add_term(out, word, c);
      }
      std::size_t k = 0;
      while (k < n && ++f[k] == p) f[k++] = 0;
      if (k == n) break;
    }
  }
  return out;
}

SparseVec linfty_defect(const TaylorTower& q, const Word& w) {
  const GradedSpace& s = *q.source();
  SparseVec out;
  const unsigned full = (1u << w.size()) - 1;
  for (unsigned mask = 1; mask <= full; ++mask) {
    SparseVec inner = q.component(select(w, mask, true));
    if (inner.empty()) continue;
    const int sign = split_sign(s, w, mask);
    for (const auto& [word, c] : prepend(s, inner, select(w, mask, false))) {
      SparseVec v = q.component(word);
      if (!v.empty()) axpy(out, sign * c, v);
    }
  }
  return out;
}

SparseVec linfty_defect_composed(const TaylorTower& q, const Word& w) {
  return q.apply_linear(coderivation_apply(q, w));
}

SparseVec morphism_defect_quadratic(const TaylorTower& psi, const TaylorTower& qg, const TaylorTower& qh,
                                    const Word& w) {
  const GradedSpace& s = *psi.source();
  const std::size_t n = w.size();
  SparseVec lhs;
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned mask = 1u << i;
    SparseVec inner = qg.component({w[i]});
    if (inner.empty()) continue;
    axpy(lhs, Rational(split_sign(s, w, mask)), psi.apply_linear(prepend(s, inner, select(w, mask, false))));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const unsigned mask = (1u << i) | (1u << j);
      SparseVec inner = qg.component(select(w, mask, true));
      if (inner.empty()) continue;
      axpy(lhs, Rational(split_sign(s, w, mask)), psi.apply_linear(prepend(s, inner, select(w, mask, false))));
    }
  SparseVec rhs;
  for (const auto& [t, c] : psi.component(w)) axpy(rhs, c, qh.component({t}));
  const unsigned full = (1u << n) - 1;
  for (unsigned mask = 1; mask < full; ++mask) {
    SparseVec a = psi.component(select(w, mask, true));
    if (a.empty()) continue;
    SparseVec b = psi.component(select(w, mask, false));
    if (b.empty()) continue;
    const Rational c0 = Rational(split_sign(s, w, mask), 2);
    for (const auto& [ta, ca] : a)
      for (const auto& [tb, cb] : b) {
        SparseVec v = qh.eval({ta, tb});
        if (!v.empty()) axpy(rhs, c0 * ca * cb, v);
      }
  }
  axpy(lhs, Rational(-1), rhs);
  return lhs;
}

MorphismDefect morphism_defect(const TaylorTower& psi, const TaylorTower& qg, const TaylorTower& qh, const Word& w) {
  const GradedSpace& s = *psi.source();
  MorphismDefect out;
  const unsigned full = (1u << w.size()) - 1;
  for (unsigned mask = 1; mask <= full; ++mask) {
    SparseVec inner = qg.component(select(w, mask, true));
    if (inner.empty()) continue;
    const int sign = split_sign(s, w, mask);
    axpy(out.defect, Rational(sign), psi.apply_linear(prepend(s, inner, select(w, mask, false))));
  }
  axpy(out.defect, Rational(-1), qh.apply_linear(morphism_apply(psi, w)));
  if (qg.max_arity() <= 2 && qh.max_arity() <= 2) {
    out.specialized = true;
    out.forms_agree = morphism_defect_quadratic(psi, qg, qh, w) == out.defect;
  }
  return out;
}

std::vector<SymElement> divided_powers(const GradedSpace& s, const SparseVec& omega, unsigned jmax) {
  for (const auto& [i, c] : omega)
    if (odd(s, i)) throw DomainError("ω must be even in the shifted grading");
  std::vector<SymElement> out;
  out.push_back(SymElement{{Word{}, Rational(1)}});
  SymElement single;
  for (const auto& [i, c] : omega) single.emplace(Word{i}, c);
  for (unsigned j = 1; j <= jmax; ++j) {
    SymElement next = sym_multiply(s, out.back(), single);
    for (auto& [w, c] : next) c /= j;
    if (next.empty()) break;
    out.push_back(std::move(next));
  }
  return out;
}

SparseVec linfty_mc_residual(const TaylorTower& q, const SparseVec& omega, const EpsGrading& eps) {
  const unsigned jmax = omega_jmax(eps, *q.source(), omega, q.max_arity());
  auto powers = divided_powers(*q.source(), omega, jmax);
  SparseVec out;
  for (std::size_t i = 1; i < powers.size(); ++i) axpy(out, Rational(1), q.apply_linear(powers[i]));
  return out;
}

TowerPtr twist_structure(TowerPtr q, const SparseVec& omega, const EpsGrading& eps) {
  const unsigned jmax = omega_jmax(eps, *q->source(), omega, q->max_arity());
  auto powers = divided_powers(*q->source(), omega, jmax);
  return std::make_shared<CachedTower>(std::make_shared<TwistedTower>(std::move(q), std::move(powers), eps));
}

TowerPtr twist_morphism(TowerPtr psi, const SparseVec& omega, const EpsGrading& eps) {
  return twist_structure(std::move(psi), omega, eps);
}

SparseVec pushforward_mc(const TaylorTower& psi, const SparseVec& omega, const EpsGrading& eps) {
  return linfty_mc_residual(psi, omega, eps);
}

TwistResult twist(TowerPtr qg, TowerPtr qh, TowerPtr psi, const SparseVec& omega, const EpsGrading& eps_g,
                  const EpsGrading& eps_h) {
  check_same_space(qg->source(), psi->source(), "Q_g vs ψ source");
  check_same_space(qh->source(), psi->target(), "Q_h vs ψ target");
  TwistResult out;
  out.omega_prime = pushforward_mc(*psi, omega, eps_g);
  out.qg = twist_structure(qg, omega, eps_g);
  out.psi = twist_morphism(psi, omega, eps_g);
  out.qh = twist_structure(qh, out.omega_prime, eps_h);
  return out;
}

std::vector<Word> basis_words(const GradedSpace& s, unsigned n, const EpsGrading* eps) {
  std::vector<Word> out;
  if (n == 0) return out;
  Word cur;
  auto rec = [&](auto&& self, std::size_t start, unsigned power) -> void {
    if (cur.size() == n) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < s.size(); ++i) {
      if (!cur.empty() && cur.back() == i && odd(s, i)) continue;
      unsigned p = power + (eps ? eps->power[i] : 0);
      if (eps && p >= eps->order) continue;
      cur.push_back(i);
      self(self, i, p);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

namespace {

template <class Fn>
SweepReport sweep(const GradedSpace& s, unsigned window, const EpsGrading* eps, std::size_t max_failures, Fn&& fn) {
  SweepReport rep;
  rep.window = window;
  for (unsigned n = 1; n <= window; ++n) {
    std::vector<Word> words = basis_words(s, n, eps);
    std::vector<SparseVec> values(words.size());
    detail::parallel_for(words.size(), [&](std::size_t k) { values[k] = fn(words[k]); });
    rep.words_checked += words.size();
    for (std::size_t k = 0; k < words.size() && rep.failures.size() < max_failures; ++k)
      if (!values[k].empty()) rep.failures.push_back({n, word_labels(s, words[k]), values[k]});
  }
  return rep;
}

}  // namespace

SweepReport sweep_linfty(const TaylorTower& q, unsigned window, const EpsGrading* eps, std::size_t max_failures) {
  return sweep(*q.source(), window, eps, max_failures, [&](const Word& w) { return linfty_defect(q, w); });
}

SweepReport sweep_morphism(const TaylorTower& psi, const TaylorTower& qg, const TaylorTower& qh, unsigned window,
                           const EpsGrading* eps, std::size_t max_failures) {
  return sweep(*psi.source(), window, eps, max_failures, [&](const Word& w) {
    MorphismDefect d = morphism_defect(psi, qg, qh, w);
    if (!d.forms_agree) throw StructuralError("morphism identity and its quadratic form disagree on \"" +
                                              word_labels(*psi.source(), w) + "\"");
    return d.defect;
  });
}

GradedLinearMap ContractionAction::lie(std::size_t v) const {
  const GradedLinearMap& i = contractions.at(v);
  const GradedLinearMap& d = algebra->d();
  GradedLinearMap a = d.compose(i);
  GradedLinearMap b = i.compose(d);
  GradedLinearMap out(algebra->space(), algebra->space(), 0);
  for (std::size_t k = 0; k < algebra->space()->size(); ++k) {
    SparseVec col = a.column(k);
    axpy(col, Rational(1), b.column(k));
    out.set_column(k, std::move(col));
  }
  return out;
}

AxiomReport check_action(const ContractionAction& action, std::size_t max_failures) {
  AxiomReport rep;
  const DGLieAlgebra& g = *action.algebra;
  const GradedSpace& s = *g.space();
  for (std::size_t v = 0; v < action.contractions.size(); ++v) {
    const GradedLinearMap& iv = action.contractions[v];
    if (iv.degree() != -1) throw DomainError("contraction \"" + action.names.at(v) + "\" must have degree -1");
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = 0; b < s.size(); ++b) {
        ++rep.checked;
        SparseVec defect = iv.apply(g.bracket_basis(a, b));
        axpy(defect, Rational(-1), g.bracket(iv.column(a), SparseVec{{b, Rational(1)}}));
        axpy(defect, (s.degree(a) & 1) ? Rational(1) : Rational(-1),
             g.bracket(SparseVec{{a, Rational(1)}}, iv.column(b)));
        if (!defect.empty() && rep.failures.size() < max_failures)
          rep.failures.push_back({"derivation:" + action.names.at(v), {s.label(a), s.label(b)}, defect});
      }
  }
  return rep;
}

TowerPtr contraction_coderivation(const ContractionAction& action, std::size_t v, unsigned arity_bound) {
  const GradedLinearMap& iv = action.contractions.at(v);
  GradedLinearMap j(iv.source(), iv.target(), iv.degree());
  for (std::size_t k = 0; k < iv.source()->size(); ++k) j.set_column(k, scaled(iv.column(k), Rational(-1)));
  return linear_coderivation(j, arity_bound);
}

SparseVec lie_coderivation_defect(const TaylorTower& q, const ContractionAction& action, std::size_t v,
                                  const Word& w) {
  const GradedSpace& s = *q.source();
  const GradedLinearMap& iv = action.contractions.at(v);
  // ĩ_v(w) is minus this, since j_v = −i_v
  SymElement iw = linear_derivation_apply(s, iv, w);
  SparseVec out = scaled(q.apply_linear(iw), Rational(-1));
  axpy(out, Rational(-1), iv.apply(q.component(w)));
  if (w.size() == 1) axpy(out, Rational(-1), action.lie(v).column(w[0]));
  return out;
}

ReducedAlgebra reduce_by_action(const ContractionAction& action) {
  const DGLieAlgebra& g = *action.algebra;
  const GradedSpace& s = *g.space();
  std::vector<GradedLinearMap> lies;
  for (std::size_t v = 0; v < action.contractions.size(); ++v) lies.push_back(action.lie(v));

  std::map<int, std::vector<std::string>> labels;
  std::map<int, std::vector<SparseVec>> vectors;
  for (int deg : s.degrees()) {
    auto [b0, b1] = s.range(deg);
    std::vector<SparseVec> cols;
    for (std::size_t k = b0; k < b1; ++k) {
      SparseVec col;
      std::size_t offset = 0;
      for (std::size_t v = 0; v < action.contractions.size(); ++v) {
        for (const auto& [t, c] : action.contractions[v].column(k)) col.emplace(offset + t, c);
        offset += s.size();
        for (const auto& [t, c] : lies[v].column(k)) col.emplace(offset + t, c);
        offset += s.size();
      }
      cols.push_back(std::move(col));
    }
    SparseKernelImage ki = sparse_kernel_image(cols);
    std::size_t count = 0;
    for (const auto& kv : ki.kernel) {
      SparseVec global;
      for (const auto& [j, c] : kv) global.emplace(b0 + j, c);
      std::string label;
      if (global.size() == 1 && global.begin()->second == 1) {
        label = s.label(global.begin()->first);
      } else {
        label = "inv" + std::to_string(deg) + "_" + std::to_string(count);
      }
      ++count;
      labels[deg].push_back(label);
      vectors[deg].push_back(std::move(global));
    }
  }
  // disambiguate generated labels that collide with reused ones
  for (auto& [deg, ls] : labels) {
    std::map<std::string, int> seen;
    for (auto& l : ls)
      if (seen[l]++) l += "'" + std::to_string(seen[l]);
  }
  SpacePtr space = make_space(labels);
  std::vector<SparseVec> basis(space->size());
  for (const auto& [deg, vs] : vectors) {
    auto [r0, r1] = space->range(deg);
    (void)r1;
    for (std::size_t k = 0; k < vs.size(); ++k) basis[r0 + k] = vs[k];
  }
  auto coords = [&](const SparseVec& x, const std::string& what) {
    SparseVec out;
    if (x.empty()) return out;
    const int deg = s.degree(x.begin()->first);
    auto [r0, r1] = space->range(deg);
    std::vector<SparseVec> cols(basis.begin() + static_cast<long>(r0), basis.begin() + static_cast<long>(r1));
    auto sol = sparse_solve(cols, x);
    if (!sol) throw StructuralError("invariants are not closed under " + what);
    for (const auto& [k, c] : *sol) out.emplace(r0 + k, c);
    return out;
  };
  GradedLinearMap d(space, space, 1);
  for (std::size_t k = 0; k < space->size(); ++k) d.set_column(k, coords(g.differential(basis[k]), "d"));
  BracketTable table;
  for (std::size_t a = 0; a < space->size(); ++a)
    for (std::size_t b = 0; b < space->size(); ++b) {
      SparseVec v = g.bracket(basis[a], basis[b]);
      if (!v.empty()) table.emplace(std::make_pair(a, b), coords(v, "the bracket"));
    }
  ReducedAlgebra out;
  out.algebra = std::make_shared<const DGLieAlgebra>(CochainComplex(space, std::move(d)), std::move(table));
  out.embedding = GradedLinearMap(space, g.space(), 0, basis);
  return out;
}

SparseVec action_commutator(const TaylorTower& psi, const ContractionAction& source, const ContractionAction& target,
                            std::size_t v, const Word& w) {
  SparseVec out = scaled(target.contractions.at(v).apply(psi.component(w)), Rational(-1));
  SymElement iw = linear_derivation_apply(*psi.source(), source.contractions.at(v), w);
  axpy(out, Rational(1), psi.apply_linear(iw));
  return out;
}

ContractionAction extend_action(const ContractionAction& action, const ScalarExtension& ext) {
  ContractionAction out;
  out.algebra = ext.algebra;
  out.names = action.names;
  for (const auto& iv : action.contractions) out.contractions.push_back(ext.extend_map(iv, ext));
  return out;
}

ContractionAction with_algebra(const ContractionAction& action, DglaPtr algebra) {
  ContractionAction out = action;
  check_same_space(action.algebra->space(), algebra->space(), "action vs algebra");
  out.algebra = std::move(algebra);
  return out;
}

DescentReport descend_morphism(TowerPtr psi, const ContractionAction& source, const ContractionAction& target,
                               unsigned window, const DescentTwist* twist) {
  if (source.contractions.size() != target.contractions.size())
    throw DomainError("source and target actions have different index sets");
  check_same_space(psi->source(), source.algebra->space(), "ψ source vs action");
  check_same_space(psi->target(), target.algebra->space(), "ψ target vs action");
  DescentReport rep;
  const GradedSpace& s = *psi->source();
  for (unsigned n = 1; n <= window; ++n) {
    std::vector<Word> words = basis_words(s, n);
    std::vector<SparseVec> values(words.size() * source.contractions.size());
    detail::parallel_for(words.size(), [&](std::size_t k) {
      for (std::size_t v = 0; v < source.contractions.size(); ++v)
        values[k * source.contractions.size() + v] = action_commutator(*psi, source, target, v, words[k]);
    });
    rep.words_checked += words.size();
    for (std::size_t k = 0; k < values.size(); ++k)
      if (!values[k].empty()) {
        rep.commutes = false;
        const std::size_t v = k % source.contractions.size();
        throw DomainError("ψ does not commute with the action of \"" + source.names.at(v) + "\" on word \"" +
                          word_labels(s, words[k / source.contractions.size()]) + "\"");
      }
  }

  rep.source_reduced = reduce_by_action(source);
  rep.target_reduced = reduce_by_action(target);
  const GradedSpace& rs = *rep.source_reduced.algebra->space();
  const GradedSpace& rt = *rep.target_reduced.algebra->space();
  rep.restricted = std::make_shared<ExplicitTower>(TowerKind::morphism, rep.source_reduced.algebra->space(),
                                                   rep.target_reduced.algebra->space(), psi->degree(), window);
  for (unsigned n = 1; n <= window; ++n) {
    for (const Word& w : basis_words(rs, n)) {
      SymElement expanded{{Word{}, Rational(1)}};
      for (auto r : w) {
        SymElement letter;
        for (const auto& [i, c] : rep.source_reduced.embedding.column(r)) letter.emplace(Word{i}, c);
        expanded = sym_multiply(s, expanded, letter);
      }
      SparseVec value = psi->apply_linear(expanded);
      if (value.empty()) continue;
      const int deg = psi->target()->degree(value.begin()->first);
      auto [r0, r1] = rt.range(deg);
      std::vector<SparseVec> cols;
      for (std::size_t k = r0; k < r1; ++k) cols.push_back(rep.target_reduced.embedding.column(k));
      auto sol = sparse_solve(cols, value);
      if (!sol) {
        rep.lands_in_invariants = false;
        rep.notes.push_back("value on \"" + word_labels(rs, w) + "\" is not invariant");
        continue;
      }
      SparseVec local;
      for (const auto& [k, c] : *sol) local.emplace(r0 + k, c);
      rep.restricted->set(w, local);
    }
  }

  if (twist) {
    rep.twisted = true;
    TowerPtr psi_ext = extend_tower(psi, *twist->source_ext, *twist->target_ext);
    ContractionAction src_ext = extend_action(source, *twist->source_ext);
    ContractionAction tgt_ext = extend_action(target, *twist->target_ext);
    EpsGrading eg = EpsGrading::of(*twist->source_ext);
    const GradedSpace& es = *twist->source_ext->algebra->space();
    for (std::size_t v = 0; v < src_ext.contractions.size(); ++v) {
      SparseVec ivw = src_ext.contractions[v].apply(twist->omega);
      if (ivw.empty()) continue;
      for (unsigned i = 2; i <= window; ++i)
        for (const Word& gamma : basis_words(es, i - 1, &eg)) {
          if (!psi_ext->apply_linear(prepend(es, ivw, gamma)).empty()) {
            rep.hypothesis_holds = false;
            rep.notes.push_back("(∂^" + std::to_string(i) + "ψ)(i_vω·γ) ≠ 0 for v = \"" + source.names[v] +
                                "\", γ = \"" + word_labels(es, gamma) + "\"");
            break;
          }
        }
    }
    TowerPtr psi_w = twist_morphism(psi_ext, twist->omega, eg);
    for (unsigned n = 1; n <= window && rep.twisted_commutes; ++n) {
      std::vector<Word> words = basis_words(es, n, &eg);
      std::vector<char> bad(words.size(), 0);
      detail::parallel_for(words.size(), [&](std::size_t k) {
        for (std::size_t v = 0; v < src_ext.contractions.size(); ++v)
          if (!action_commutator(*psi_w, src_ext, tgt_ext, v, words[k]).empty()) bad[k] = 1;
      });
      for (std::size_t k = 0; k < words.size(); ++k)
        if (bad[k]) {
          rep.twisted_commutes = false;
          rep.notes.push_back("twisted ψ does not commute with the action on \"" + word_labels(es, words[k]) + "\"");
          break;
        }
    }
  }
  return rep;
}

SparseVec equivariance_defect(const TaylorTower& psi, const TaylorTower& qg, const TaylorTower& qh, std::size_t gamma,
                              const Word& w) {
  const GradedSpace& s = *psi.source();
  SparseVec out;
  SparseVec pg = psi.component({gamma});
  SparseVec pw = psi.component(w);
  for (const auto& [ta, ca] : pg)
    for (const auto& [tb, cb] : pw) {
      SparseVec v = qh.eval({ta, tb});
      if (!v.empty()) axpy(out, ca * cb, v);
    }
  // positions: γ first, then w
  Word full;
  full.push_back(gamma);
  full.insert(full.end(), w.begin(), w.end());
  for (std::size_t j = 0; j < w.size(); ++j) {
    const unsigned mask = 1u | (1u << (j + 1));
    SparseVec inner = qg.eval({gamma, w[j]});
    if (inner.empty()) continue;
    const int sign = split_sign(s, full, mask);
    Word rest;
    for (std::size_t k = 0; k < w.size(); ++k)
      if (k != j) rest.push_back(w[k]);
    axpy(out, Rational(-sign), psi.apply_linear(prepend(s, inner, rest)));
  }
  return out;
}

}  // namespace dq

namespace dq {

namespace {

class PrecomposedTower : public TaylorTower {
 public:
  PrecomposedTower(TowerPtr psi, GradedLinearMap p)
      : TaylorTower(psi->kind(), p.source(), psi->target(), psi->degree(), psi->arity_bound()),
        psi_(std::move(psi)),
        p_(std::move(p)) {}
  unsigned max_arity() const override { return psi_->max_arity(); }

 protected:
  SparseVec compute(const Word& w) const override {
    SymElement acc{{Word{}, Rational(1)}};
    const GradedSpace& mid = *p_.target();
    for (auto i : w) {
      SymElement next;
      for (const auto& [word, c] : acc)
        for (const auto& [t, x] : p_.column(i)) {
          Word seq = word;
          seq.push_back(t);
          const int sign = canonicalize(mid, seq);
          if (sign != 0) add_term(next, seq, sign * c * x);
        }
      acc = std::move(next);
    }
    return psi_->apply_linear(acc);
  }

 private:
  TowerPtr psi_;
  GradedLinearMap p_;
};

}  // namespace

TowerPtr precompose(TowerPtr psi, const GradedLinearMap& p) {
  if (p.degree() != 0) throw DomainError("precomposition needs a degree-0 map");
  check_same_space(p.target(), psi->source(), "precomposition");
  return std::make_shared<PrecomposedTower>(std::move(psi), p);
}

}  // namespace dq
