#include "dq/cech.hpp"
#include "dq/coordbundle.hpp"
#include "dq/cosimplicial.hpp"
#include "dq/families.hpp"
#include "dq/linfty.hpp"
#include "dq/polyops.hpp"
#include "dq/polywindows.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef DQ_TOOL_PATH
#error "DQ_TOOL_PATH must name the dqtool binary"
#endif

using namespace dq;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

using Field = std::vector<std::vector<int>>;

std::vector<std::pair<std::string, Field>> linear_fields(unsigned vars) {
  std::vector<std::pair<std::string, Field>> out;
  Field euler(vars, std::vector<int>(vars, 0));
  for (unsigned i = 0; i < vars; ++i) euler[i][i] = 1;
  out.emplace_back("euler", euler);
  for (unsigned i = 0; i < vars; ++i)
    for (unsigned j = 0; j < vars; ++j) {
      if (i == j) continue;
      Field a(vars, std::vector<int>(vars, 0));
      a[i][j] = 1;
      out.emplace_back("s" + std::to_string(j + 1) + "d" + std::to_string(i + 1), a);
    }
  return out;
}

void hkr_tables(Outcome& out) {
  for (unsigned d : {1u, 2u}) {
    auto t0 = std::chrono::steady_clock::now();
    HkrReport r = hkr_quasi_iso_report(d, {-2, 2, 0, 0}, 0, 2);
    double t = seconds_since(t0);
    std::size_t rows = r.rows.size();
    out.detail << " d=" << d << ": " << rows << " rows in " << t << "s;";
    out.require(rows == 15, "expected 3 arities x 5 internal degrees for d=" + std::to_string(d));
    out.require(r.ok(), "HKR table d=" + std::to_string(d));
    out.require(t < 120.0, "runtime d=" + std::to_string(d));
  }
}

void linfty_suite(Outcome& out) {
  std::vector<std::pair<std::string, DglaPtr>> algebras;
  algebras.emplace_back("sl2", std::make_shared<DGLieAlgebra>(lie_algebra(lie_sl2())));
  algebras.emplace_back("heisenberg", std::make_shared<DGLieAlgebra>(lie_algebra(lie_heisenberg())));
  algebras.emplace_back("affine2(x)forms(1,2,odd1)", lie_tensor_forms(lie_affine2(), 1, 2, 1).algebra);
  Rng rng(7);
  algebras.emplace_back("random abelian", std::make_shared<DGLieAlgebra>(random_abelian(rng, -1, 2, 2)));
  algebras.emplace_back("T_poly window d=2", tpoly_window(2, 1).algebra);
  algebras.emplace_back("D_poly window d=1", dpoly_constant_window(1, 3).algebra);
  algebras.emplace_back("D_poly window d=2", dpoly_constant_window(2, 2).algebra);
  std::size_t clean = 0;
  for (const auto& [name, g] : algebras) {
    SweepReport s = sweep_linfty(*from_dgla(g, 4), 4);
    out.detail << " " << name << " (" << g->space()->size() << " dims, " << s.words_checked << " words)";
    out.require(s.ok(), "nonzero defect for " + name);
    if (s.ok()) ++clean;
  }
  out.require(clean >= 5, "fewer than 5 algebras");
  auto broken = std::make_shared<DGLieAlgebra>(lie_algebra(lie_broken_jacobi()));
  SweepReport low = sweep_linfty(*from_dgla(broken, 4), 2);
  SweepReport high = sweep_linfty(*from_dgla(broken, 4), 3);
  bool at_three = !high.failures.empty();
  for (const auto& f : high.failures) at_three = at_three && f.arity == 3;
  out.detail << "; broken Jacobi: " << high.failures.size() << " arity-3 failures";
  out.require(low.ok(), "broken algebra fails below arity 3");
  out.require(at_three, "broken algebra has no arity-3 defect");
}

struct TwistFamily {
  LieAlgebraData lie;
  unsigned vars, weight, odd, order;
};

void twist_triples(Outcome& out) {
  auto t0 = std::chrono::steady_clock::now();
  const std::vector<TwistFamily> families{
      {lie_affine2(), 1, 2, 2, 3},
      {lie_heisenberg(), 1, 2, 1, 3},
      {lie_abelian(2), 1, 2, 2, 2},
      {lie_affine2(), 2, 1, 1, 2},
  };
  const unsigned window = 3;
  std::size_t triples = 0, nonzero = 0, passed = 0, obstructed = 0;
  for (unsigned seed = 1; triples < 24; ++seed) {
    const TwistFamily& f = families[seed % families.size()];
    Rng rng(seed);
    DglaPtr g = lie_tensor_forms(f.lie, f.vars, f.weight, f.odd).algebra;
    std::optional<MCElement> found;
    try {
      found = random_mc(g, f.order, rng);
    } catch (const DomainError&) {
      ++obstructed;
      continue;
    }
    const MCElement& pi = *found;
    AbelianizationMorphism ab = random_abelianization(*g, {}, window, rng);
    ScalarExtension eg = extend_scalars(g, f.order);
    ScalarExtension eh = extend_scalars(ab.target, f.order);
    TowerPtr qg = from_dgla(eg.algebra, window);
    TowerPtr qh = from_dgla(eh.algebra, window);
    TowerPtr psi = extend_tower(ab.psi, eg, eh);
    EpsGrading gg = EpsGrading::of(eg), gh = EpsGrading::of(eh);
    SparseVec omega = eg.embed(pi.coeffs);
    ++triples;
    if (!omega.empty()) ++nonzero;

    TwistedDgla td = twist_dgla(pi);
    const GradedLinearMap& dw = td.extension.algebra->d();
    bool ok = dw.compose(dw).is_zero();
    TwistResult tw = twist(qg, qh, psi, omega, gg, gh);
    ok = ok && linfty_mc_residual(*tw.qh, tw.omega_prime, gh).empty();
    ok = ok && sweep_morphism(*tw.psi, *tw.qg, *tw.qh, window, &gg).ok();
    if (ok) ++passed;
  }
  double t = seconds_since(t0);
  out.detail << " " << passed << "/" << triples << " triples (" << nonzero << " with omega != 0, " << obstructed
             << " seeds hit an obstruction) in " << t << "s";
  out.require(passed == triples, "a triple failed");
  out.require(nonzero >= 20, "fewer than 20 nontrivial omegas");
  out.require(t < 300.0, "runtime");
}

void gauge_pairs(Outcome& out) {
  std::vector<DglaPtr> algebras{lie_tensor_forms(lie_sl2(), 2, 2).algebra,
                                lie_tensor_forms(lie_heisenberg(), 1, 2, 1).algebra,
                                lie_tensor_forms(lie_affine2(), 2, 2).algebra};
  std::size_t pairs = 0, moved = 0, passed = 0;
  for (unsigned seed = 1; seed <= 24; ++seed) {
    Rng rng(1000 + seed);
    DglaPtr g = algebras[seed % algebras.size()];
    unsigned order = 1 + seed % 3;
    MCElement pi = random_mc(g, order, rng);
    EpsSeries u = random_gauge_parameter(*g, order, rng);
    MCElement image = gauge_transform(u, pi);
    MCElement fixed = gauge_transform(EpsSeries(order), pi);
    ++pairs;
    if (image.coeffs != pi.coeffs) ++moved;
    if (series_is_zero(mc_residual(pi)) && series_is_zero(mc_residual(image)) && fixed.coeffs == pi.coeffs) ++passed;
  }
  out.detail << " " << passed << "/" << pairs << " pairs, " << moved << " moved by u";
  out.require(pairs >= 20 && passed == pairs, "a gauge pair failed");
  out.require(moved > 0, "every u acted trivially");
}

void descent(Outcome& out) {
  const unsigned window = 3;
  std::size_t actions = 0, nontrivial = 0;
  bool lemma = true, invariants = true, twisted = true;
  for (const LieAlgebraData& lie : {lie_sl2(), lie_affine2()}) {
    LieForms lf = lie_tensor_forms(lie, 2, 2);
    std::vector<std::string> names;
    std::vector<Field> fields;
    for (auto& [n, a] : linear_fields(2)) {
      names.push_back(n);
      fields.push_back(a);
    }
    ContractionAction source = lie_forms_action(lf, names, fields);
    out.require(check_action(source).ok(), "contraction is not a derivation");
    TowerPtr q = from_dgla(lf.algebra, window);
    const GradedSpace& s = *lf.algebra->space();
    for (std::size_t v = 0; v < names.size(); ++v) {
      ++actions;
      for (unsigned n = 1; n <= window; ++n)
        for (const Word& w : basis_words(s, n))
          if (!lie_coderivation_defect(*q, source, v, w).empty()) lemma = false;
    }
    Rng rng(lie.labels.size());
    AbelianizationMorphism ab = random_abelianization(*lf.algebra, source.contractions, window, rng);
    ContractionAction target = zero_action(ab.target, names);
    ScalarExtension es = extend_scalars(lf.algebra, 2);
    ScalarExtension et = extend_scalars(ab.target, 2);
    MCElement pi = random_mc(lf.algebra, 2, rng);
    DescentTwist tw{&es, &et, es.embed(pi.coeffs)};
    DescentReport dr = descend_morphism(ab.psi, source, target, window, &tw);
    invariants = invariants && dr.commutes && dr.lands_in_invariants;
    twisted = twisted && dr.twisted && dr.hypothesis_holds && dr.twisted_commutes;
    if (!tw.omega.empty() && dr.restricted && !dr.restricted->entries().empty()) ++nontrivial;
  }
  out.detail << " " << actions << " actions; " << nontrivial << " nontrivial twisted triples";
  out.require(actions >= 5, "fewer than 5 actions");
  out.require(lemma, "L_v != [Q, i_v] on the window");
  out.require(invariants, "restriction leaves the invariants");
  out.require(twisted, "twisted compatibility");
  out.require(nontrivial >= 1, "no nontrivial triple");
}

void star_products(Outcome& out) {
  for (const char* text : {"dx^dy", "x*dx^dy"}) {
    StarProductReport r = star_product_report(parse_polyvector(text, 2), 4);
    out.detail << " " << text << ": " << r.triples << " triples;";
    out.require(r.triples > 0 && r.first_order_associative && r.poisson, std::string("associator for ") + text);
  }
  const char* bad = "x*dy^dz + y*dx^dy";
  StarProductReport r = star_product_report(parse_polyvector(bad, 3), 3);
  out.detail << " " << bad << ": [pi,pi] " << (r.poisson ? "= 0" : "!= 0") << ";";
  out.require(!r.poisson, "test bivector is Poisson");
  out.require(!r.obstruction.is_zero(), "obstruction vanishes");
  out.require(r.obstruction_matches_residual && r.obstruction_evaluations_match && r.alternation_matches_bracket,
              "obstruction differs from 1/2[pi,pi]");
  std::vector<Poly> xy = first_order_star(parse_polyvector("dx^dy", 2), parse_poly("x", 2), parse_poly("y", 2), 2);
  bool exact = xy.size() == 2 && xy[0] == parse_poly("x*y", 2) && xy[1] == parse_poly("1/2", 2);
  out.detail << " x*y = xy + eps/2: " << (exact ? "yes" : "no");
  out.require(exact, "x star y");
}

// Two opens with a disconnected intersection: H^0 = Q, H^1 = Q.
AlgebraCover circle_cover() {
  AlgebraCover c;
  c.n = 2;
  FiniteAlgebra q = FiniteAlgebra::rationals();
  FiniteAlgebra qq = FiniteAlgebra::product(q, q);
  c.values[{0}] = q;
  c.values[{1}] = q;
  c.values[{0, 1}] = qq;
  c.restrictions[{{0}, {0, 1}}] = {qq.unit};
  c.restrictions[{{1}, {0, 1}}] = {qq.unit};
  return c;
}

void thom_sullivan_checks(Outcome& out) {
  auto g = std::make_shared<DGLieAlgebra>(lie_algebra(lie_sl2()));
  Rng rng(3);
  auto h = std::make_shared<DGLieAlgebra>(random_abelian(rng, 0, 2, 2));
  for (const DglaPtr& alg : {DglaPtr(g), DglaPtr(h)}) {
    CosimplicialComplex a = constant_cosimplicial(alg, 2);
    NormalizedCochains n = normalized_cochain(a);
    ThomSullivan ts = thom_sullivan(a, 2);
    TsComparison cmp = ts_comparison(ts, a, n, 0, 2);
    bool matches = cmp.verdict.verdict;
    for (int p = 0; p <= 2; ++p)
      matches = matches && cohomology(ts.complex, p).dimension == cohomology(alg->complex(), p).dimension;
    out.detail << " constant (" << alg->space()->size() << " dims): " << (matches ? "A = N^TS = N" : "mismatch")
               << ";";
    out.require(matches, "constant input");
  }
  AlgebraCover c = circle_cover();
  check_cover(c);
  CosimplicialComplex a = ordered_cech(abelian_cover(c), 3);
  NormalizedCochains n = normalized_cochain(a);
  ThomSullivan ts = thom_sullivan(a, 2);
  TsComparison cmp = ts_comparison(ts, a, n, 0, 2);
  out.detail << " 2-cover H^TS dims";
  for (const auto& r : cmp.verdict.rows) out.detail << " " << r.source_dim;
  out.detail << ";";
  out.require(cmp.verdict.verdict, "2-cover comparison");
  out.require(cmp.verdict.rows.size() == 3 && cmp.verdict.rows[1].source_dim == 1, "2-cover H^1 should be Q");
  Rational integral = integrate_form(2, Form{{FormKey{{1, 1}, {0, 1}}, Rational(1)}});
  out.detail << " integral " << to_string(integral);
  out.require(integral == Rational(1, 24), "simplex integral");
}

void double_complex_rows(Outcome& out) {
  auto t0 = std::chrono::steady_clock::now();
  for (unsigned n = 1; n <= 3; ++n) {
    DoubleComplexReport r = double_complex_check(constant_cover(n, FiniteAlgebra::rationals()), 3);
    out.detail << " n=" << n << ": " << r.rows.size() << " rows;";
    out.require(r.ok() && !r.rows.empty(), "rows for n=" + std::to_string(n));
  }
  double t = seconds_since(t0);
  out.detail << " " << t << "s";
  out.require(t < 60.0, "runtime");
}

void coordinate_bundle(Outcome& out) {
  WittReport w = check_witt_relations(6, 12);
  out.detail << " witt " << w.checked << " checks;";
  out.require(w.holds(), "Witt relations");
  CoordRing1 ring{12, 8, 24};
  McFormReport mr = verify_mc_form(mc_form(ring), ring, 8);
  out.require(mr.defining_ok, "defining equation of the MC form");
  out.require(mr.mc_ok, "MC equation");
  out.require(mr.contraction_ok, "contraction identity");
  AcyclicityReport ac = acyclicity_homotopy(4, 4, 2);
  out.detail << " homotopy on " << ac.basis_size << " basis elements";
  out.require(ac.identity_failures.empty(), "dh + hd = phi1 - phi0");
}

std::string run_tool(const std::string& args, int& status) {
  std::string cmd = std::string(DQ_TOOL_PATH) + " " + args + " 2>/dev/null";
  std::string text;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return text;
  }
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) text.append(buf.data(), got);
  status = pclose(p);
  return text;
}

void determinism(Outcome& out) {
  const std::vector<std::string> commands{
      "hkr-check --dim 1 --arity-max 2",
      "mc-check --seed 5 --family sl2 --forms-vars 1 --order 3",
      "gauge-check --seed 6 --family heisenberg --forms-vars 1 --odd 1 --order 3 --trials 3",
      "twist-check --seed 7 --family affine2 --forms-vars 1 --odd 1 --order 2 --arity-max 3",
      "linfty-verify --family broken-jacobi --forms-vars 0 --arity-max 3",
      "descend-check --seed 8 --family sl2 --forms-vars 2 --order 2 --arity-max 2",
      "ts-normalize --cover-size 2 --n-max 2",
      "cech-check --cover-size 3 --algebra qx2 --n-max 3",
      "double-complex-check --cover-size 2 --cap 3",
      "coordbundle-verify --gen-cap 8 --jet-cap 6 --witt-max 4 --homotopy-gen-cap 3 --homotopy-weight-cap 3",
      "star-product --dim 3 --pi \"x*dy^dz + y*dx^dy\" --a x --b y --max-degree 3",
  };
  std::size_t same = 0;
  for (const auto& c : commands) {
    int s1 = 0, s2 = 0;
    std::string a = run_tool(c, s1);
    std::string b = run_tool(c, s2);
    bool ok = !a.empty() && a == b && s1 == s2;
    if (ok) ++same;
    else out.require(false, c);
  }
  out.detail << " " << same << "/" << commands.size() << " commands byte-identical";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"HKR tables", hkr_tables},
      {"L-infinity axiom suite", linfty_suite},
      {"twist theorems", twist_triples},
      {"gauge orbit preservation", gauge_pairs},
      {"descent", descent},
      {"star product", star_products},
      {"Thom-Sullivan", thom_sullivan_checks},
      {"Cech double complex", double_complex_rows},
      {"coordinate bundle", coordinate_bundle},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    if (!out.pass) ++failed;
    std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first << ", "
              << seconds_since(t0) << "s):" << out.detail.str() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
