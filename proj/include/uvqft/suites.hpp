#pragma once

// Operator-level and symmetry suites, plus the name -> suite registry.

#include <uvqft/anomaly.hpp>
#include <uvqft/checks.hpp>
#include <uvqft/operator_qft.hpp>

namespace uvqft {

namespace detail {

using CS = CouplingSeries;

inline SymElement<CS> lift_element(const SymElement<ExactComplex>& a) { return a.lifted<CS>(); }

/// exp(lam m + lam^2 m') with m, m' random single vertices from `pool`.
inline SymElement<CS> group_like_on(Rng& rng, const RingPtr& ring, const std::vector<Multiset>& pool) {
  const CS lam = CS::variable(ring, ring->names.front());
  SymElement<CS> x;
  x.add(rng.pick(pool), CS::constant(ring, rng.complex()) * lam);
  if (rng.chance(1, 2)) x.add(rng.pick(pool), CS::constant(ring, rng.complex()) * lam * lam);
  return hopf_exp(x);
}

inline std::vector<Multiset> single_vertices(const std::vector<Multiset>& basis) {
  std::vector<Multiset> out;
  for (const auto& m : basis)
    if (m.size() == 1) out.push_back(m);
  return out;
}

/// Small factor for context words: 1 + c m, or a group-like element.
inline SymElement<CS> context_factor(Rng& rng, const RingPtr& ring, const std::vector<Multiset>& pool) {
  if (rng.chance(1, 2)) return group_like_on(rng, ring, pool);
  SymElement<CS> a = SymElement<CS>::one();
  a.add(rng.pick(pool), CS::constant(ring, rng.complex()));
  return a;
}

inline std::vector<ExactComplex> random_cutoff(Rng& rng, int n) {
  std::vector<ExactComplex> f;
  for (int p = 0; p < n; ++p) f.push_back(rng.real(2));
  return f;
}

template <class T>
bool word_fields_ok(const TensorWord<T>& w) {
  for (const auto& f : w.factors)
    if (f.is_zero()) return false;
  return true;
}

}  // namespace detail

// ------------------------------------------------------------ criteria 6 - 14

inline SuiteReport check_locality(const CheckOptions& o) {
  SuiteReport rep("locality", o);
  Rng rng(detail::suite_seed(o, 6));
  const auto ring = make_ring({"lam"}, std::min(o.coupling_order, 2));
  for (int k = 0; k < 100; ++k) {
    const int n = (k % 2 == 0) ? 2 * rng.uniform(0, 1) : 1;
    const auto cs = random_poset(rng, rng.uniform(2, 4), 1, 1, 2);
    const auto basis = spanning_basis(*cs, Truncation{1, 2});
    const auto verts = detail::single_vertices(basis);
    // supports: B and A u C with the required one-sided relation
    SupportSet sb, sac;
    for (int attempt = 0; attempt < 200; ++attempt) {
      sb = detail::random_subset(rng, cs->size());
      sac = detail::random_subset(rng, cs->size());
      if (n % 2 == 0 ? cs->none_leq(sb, sac) : cs->none_leq(sac, sb)) break;
      sb.clear();
    }
    if (sb.empty()) {
      // a maximal (resp. minimal) point against everything else always works
      const SupportSet all = [&] {
        SupportSet s;
        for (PointId p = 0; p < cs->size(); ++p) s.insert(p);
        return s;
      }();
      const SupportSet mins = cs->minimal_points(all);
      const PointId lo = *mins.begin();
      sac = {lo};
      sb.clear();
      for (PointId p = 0; p < cs->size(); ++p)
        if (p != lo && (n % 2 == 0 ? !cs->leq(p, lo) : !cs->leq(lo, p))) sb.insert(p);
      if (sb.empty()) sb = {lo == 0 ? PointId(1) : PointId(0)};
      sac.clear();
      for (PointId p = 0; p < cs->size(); ++p)
        if (!sb.count(p) || cs->size() == 1) sac.insert(p);
      if (!(n % 2 == 0 ? cs->none_leq(sb, sac) : cs->none_leq(sac, sb))) {
        rep.fail("omega vanishes on locality generators", "no admissible supports");
        continue;
      }
    }
    const auto on_ac = detail::supported_in(basis, sac), on_b = detail::single_vertices(detail::supported_in(basis, sb));
    const auto A = detail::lift_element(random_element_on(rng, on_ac, 2));
    const auto C = detail::lift_element(random_element_on(rng, on_ac, 2));
    const auto B = detail::group_like_on(rng, ring, on_b);
    const auto D = detail::group_like_on(rng, ring, verts);
    TensorWord<detail::CS> lower, upper;
    for (int i = 0; i < n; ++i) lower.factors.push_back(detail::context_factor(rng, ring, verts));
    const int ylen = n % 2 + 2 * rng.uniform(0, n % 2 ? 0 : 1);
    for (int i = 0; i < ylen; ++i) upper.factors.push_back(detail::context_factor(rng, ring, verts));
    const auto gen = locality_generator(*cs, A, C, B, D, upper, lower);
    if (!gen) {
      rep.fail("omega vanishes on locality generators", "support condition rejected");
      continue;
    }
    WordEvaluator<ExactComplex> ev(random_measure(rng, cs));
    const auto diff = ev.eval(gen->first) - ev.eval(gen->second);
    rep.record("omega vanishes on locality generators", diff.is_zero(),
               {{"model", detail::model_tag(*cs)}, {"n", n}, {"context", ylen + n + 2}, {"value", diff.str()}});
  }
  return rep;
}

inline SuiteReport check_commutativity(const CheckOptions& o) {
  SuiteReport rep("commutativity", o);
  Rng rng(detail::suite_seed(o, 7));
  using E = ExactComplex;
  for (int k = 0; k < 50; ++k) {
    CausalSetPtr cs;
    SupportSet sv, sw;
    for (;;) {
      cs = random_poset(rng, rng.uniform(2, 4), 1, 1, 2);
      sv = detail::random_subset(rng, cs->size());
      sw.clear();
      for (PointId p = 0; p < cs->size(); ++p) {
        bool ok = !sv.count(p);
        for (PointId q : sv) ok = ok && cs->is_spacelike(p, q);
        if (ok && rng.chance(2, 3)) sw.insert(p);
      }
      if (!sw.empty()) break;
    }
    const auto basis = spanning_basis(*cs, Truncation{2, 3});
    const auto bv = detail::supported_in(basis, sv), bw = detail::supported_in(basis, sw);
    auto pair_word = [&](const std::vector<Multiset>& b) {
      return TensorWord<E>({random_element_on(rng, b, 2), random_element_on(rng, b, 2)});
    };
    const auto V = pair_word(bv), W = pair_word(bw);
    const auto all = spanning_basis(*cs, Truncation{1, 2});
    TensorWord<E> upper, lower;
    const int shape = rng.uniform(0, 2);  // context lengths (0,0), (2,0), (0,2)
    for (int i = 0; i < 2 && shape > 0; ++i)
      (shape == 1 ? upper : lower).factors.push_back(random_element_on(rng, all, 2));
    WordEvaluator<E> ev(random_measure(rng, cs, rng.chance(1, 2) ? CutKind::local : CutKind::hermitian));
    const auto d = commutator_mod_locality(ev, V, W, upper, lower);
    rep.record("spacelike two-factor words commute", d.is_zero(),
               {{"model", detail::model_tag(*cs)},
                {"V", to_string(*cs, V)},
                {"W", to_string(*cs, W)},
                {"context", upper.length() + lower.length()}});
  }
  return rep;
}

inline SuiteReport check_cutkosky(const CheckOptions& o) {
  SuiteReport rep("cutkosky", o);
  Rng rng(detail::suite_seed(o, 8));
  const auto ring = make_ring({"lam"}, std::min(o.coupling_order, 3));
  for (int k = 0; k < 20; ++k) {
    const auto cs = random_poset(rng, rng.uniform(1, 3));
    const auto omega = random_measure(rng, cs, k % 2 ? CutKind::hermitian : CutKind::local);
    const auto A = random_group_like(rng, *cs, ring, Truncation{1, 3}, 2);
    const int pad = 2 * (k % 2);
    std::vector<SymElement<detail::CS>> f{A, A};
    for (int i = 0; i < pad; ++i) f.push_back(SymElement<detail::CS>::one());
    WordEvaluator<ExactComplex> ev(omega);
    const auto v = ev.eval(TensorWord<detail::CS>::written(f));
    rep.record("omega(A (x) A (x) 1...) = 1", v == detail::CS::constant(ring, ExactComplex(1)),
               {{"model", detail::model_tag(*cs)}, {"A", to_string(*cs, A)}, {"ones", pad}, {"value", v.str()}});
  }
  return rep;
}

inline SuiteReport check_hermiticity(const CheckOptions& o) {
  SuiteReport rep("hermiticity", o);
  Rng rng(detail::suite_seed(o, 9));
  using E = ExactComplex;
  CausalSetPtr cs;
  std::unique_ptr<WordEvaluator<E>> ev;
  std::vector<Multiset> basis;
  for (int k = 0; k < 100; ++k) {
    if (k % 10 == 0) {
      cs = random_poset(rng, rng.uniform(1, 3), 1, 1, 2);
      ev = std::make_unique<WordEvaluator<E>>(random_measure(rng, cs, CutKind::hermitian));
      basis = spanning_basis(*cs, Truncation{2, 3});
    }
    const int len = k % 3 == 2 ? 4 : 2;
    TensorWord<E> w;
    for (int i = 0; i < len; ++i) w.factors.push_back(random_element_on(rng, basis, 2));
    const auto r = hermitian_check(*ev, w);
    rep.record("omega(w) = conj(omega(w*))", r.holds,
               {{"model", detail::model_tag(*cs)}, {"word", to_string(*cs, w)}, {"lhs", r.lhs.str()},
                {"rhs", r.rhs.str()}});
  }
  return rep;
}

inline SuiteReport check_positivity(const CheckOptions& o) {
  SuiteReport rep("positivity", o);
  Rng rng(detail::suite_seed(o, 10));
  using E = ExactComplex;
  for (int k = 0; k < 6; ++k) {
    const auto cs = k < 2 ? CausalSet::simple(1, {}, k + 1) : random_poset(rng, k < 4 ? 2 : 3, 1, 1, 2);
    const auto omega = random_measure(rng, cs, CutKind::positive);
    WordEvaluator<E> ev(omega);
    rep.record("omega(1) = 1", ev.eval(ones<E>(2)) == E(1));
    // words [m2, m1] with m empty or a single vertex, at most 3 fields in total
    std::vector<Multiset> factors{Multiset{}};
    for (const auto& m : spanning_basis(*cs, Truncation{1, 3}))
      if (m.size() == 1) factors.push_back(m);
    std::vector<TensorWord<E>> words;
    for (const auto& a : factors)
      for (const auto& b : factors)
        if (field_degree(a) + field_degree(b) <= 3)
          words.push_back(TensorWord<E>::written({SymElement<E>::term(a, E(1)), SymElement<E>::term(b, E(1))}));
    const auto G = gns_gram(ev, words);
    const auto ldl = hermitian_ldl(G);
    rep.record("Gram matrix passes exact LDL", ldl.hermitian && ldl.psd,
               {{"model", detail::model_tag(*cs)}, {"basis", words.size()}, {"rank", ldl.rank},
                {"failure", ldl.failure}});
  }
  return rep;
}

inline SuiteReport check_interacting(const CheckOptions& o) {
  SuiteReport rep("interacting", o);
  Rng rng(detail::suite_seed(o, 14));
  const auto ring = make_ring({"lam"}, std::min(o.coupling_order, 2));
  using E = ExactComplex;
  const auto cs = CausalSet::simple(1, {});
  for (int k = 0; k < 3; ++k) {
    const Rational c = rng.nonzero_rational(), d = rng.nonzero_rational();
    CutPropagator<E> cut(cs);
    cut.set(0, 0, E(c));
    DiagonalData<E> diag;
    diag[{0, 0, 0}] = E(d);
    const auto omega = FeynmanMeasure<E>::from_cut(cut, diag);
    SymElement<detail::CS> L;
    L.add(Multiset{field_power(0, 0, 4)}, detail::CS::variable(ring, "lam"));
    const auto theory = InteractingTheory<E, detail::CS>::from_lagrangian(omega, L);
    auto phi = [](int a) {
      return a == 0 ? SymElement<detail::CS>::one() : SymElement<detail::CS>::vertex(field_power(0, 0, a));
    };
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; a + b <= 4; ++b) {
        const auto v = theory.eval(TensorWord<detail::CS>::written({phi(a), phi(b)}));
        const auto want = oracle::lambda_phi4_two_factor(ring, c, d, a, b);
        rep.record("two-factor moments equal brute-force expansion", v == want,
                   {{"cut", E(c).str()}, {"feynman", E(d).str()}, {"a", a}, {"b", b}, {"value", v.str()}});
      }
  }
  return rep;
}

inline SuiteReport check_covariance(const CheckOptions& o) {
  SuiteReport rep("covariance", o);
  Rng rng(detail::suite_seed(o, 15));
  const auto ring = make_ring({"lam"}, std::min(o.coupling_order, 2));
  using E = ExactComplex;
  const detail::CS lam = detail::CS::variable(ring, "lam");
  for (int k = 0; k < 8; ++k) {
    const bool point = k % 2 == 0;
    const auto cs = point ? CausalSet::simple(1, {}) : chain(2);
    const int power = point ? 4 : 2;
    SymElement<detail::CS> L;
    for (PointId p = 0; p < cs->size(); ++p) L.add(Multiset{field_power(p, 0, power)}, lam);
    const auto theory = InteractingTheory<E, detail::CS>::from_lagrangian(random_measure(rng, cs), L);
    const bool simple_case = k >= 4;
    Renormalization<E>::Data data;
    const auto drawn = random_renormalization(rng, *cs, Truncation{2, 2 * power}, 2, 2, 1, 3);
    for (const auto& [x, c] : drawn.data()) {
      bool keep = true;
      if (simple_case)
        for (Vertex v : x) keep = keep && vertex_field_degree(v) >= 2;
      if (keep) data.emplace(x, c);
    }
    if (data.empty()) data.emplace(make_multiset({field_power(0, 0, 2), field_power(0, 0, 2)}), ExactComplex(Rational(1, 2)));
    const Renormalization<E> rho(data);
    auto phi = [&](PointId p, int a) {
      return a == 0 ? SymElement<detail::CS>::one() : SymElement<detail::CS>::vertex(field_power(p, 0, a));
    };
    const PointId top = cs->size() - 1;
    const std::vector<TensorWord<detail::CS>> words{
        TensorWord<detail::CS>::written({phi(top, 1), phi(0, 1)}),
        TensorWord<detail::CS>::written({phi(top, 2), phi(0, 0)}),
        TensorWord<detail::CS>::written({phi(0, 2), phi(top, 2)})};
    for (const auto& w : words) {
      const auto r = renorm_covariance(rho, theory, w);
      rep.record("values invariant under (omega, L, factors) transform", r.holds,
                 {{"model", detail::model_tag(*cs)}, {"rho", to_string(*cs, rho)}, {"word", to_string(*cs, w)},
                  {"value", r.original.str()}, {"rho_normalized", r.rho_normalized}});
      if (simple_case && r.simple_factors > 0)
        rep.record("simple factors unchanged for simple-operator-preserving rho", r.simple_factors_unchanged,
                   {{"word", to_string(*cs, w)}, {"simple_factors", r.simple_factors}});
    }
  }
  return rep;
}

inline SuiteReport check_cutoff(const CheckOptions& o) {
  SuiteReport rep("cutoff", o);
  Rng rng(detail::suite_seed(o, 16));
  const auto ring = make_ring({"lam"}, std::min(o.coupling_order, 2));
  using E = ExactComplex;
  const detail::CS lam = detail::CS::variable(ring, "lam");
  for (int k = 0; k < 12; ++k) {
    const int n = 2 + k % 2;
    const auto cs = chain(n);
    SymElement<detail::CS> L;
    for (PointId p = 0; p < n; ++p) L.add(Multiset{field_power(p, 0, 2)}, lam);
    const auto theory = InteractingTheory<E, detail::CS>::from_lagrangian(random_measure(rng, cs), L);
    const bool past = k < 6;
    const PointId at = past ? 0 : n - 1;
    auto f = detail::random_cutoff(rng, n), g = detail::random_cutoff(rng, n);
    g[at] = f[at];
    // differ somewhere on the other side so only one identity applies
    const PointId other = past ? n - 1 : 0;
    if (g[other] == f[other]) g[other] = f[other] + E(1);
    const auto basis = single_point_basis(*cs, at, Truncation{1, 2});
    auto factor = [&] {
      SymElement<detail::CS> a = SymElement<detail::CS>::one();
      a.add(rng.pick(basis), detail::CS::constant(ring, rng.complex()));
      return a;
    };
    const auto w = TensorWord<detail::CS>({factor(), factor()});
    const auto r = cutoff_compare(theory, f, g, w);
    const bool right_case = past ? (r.agree_on_past && !r.agree_on_future) : (r.agree_on_future && !r.agree_on_past);
    json detail = {{"model", detail::model_tag(*cs)}, {"word", to_string(*cs, w)}};
    if (r.past_identity) detail["past"] = {r.past_identity->first.str(), r.past_identity->second.str()};
    if (r.future_identity) detail["future"] = {r.future_identity->first.str(), r.future_identity->second.str()};
    rep.record(past ? "cutoffs equal on the past: values agree" : "cutoffs equal on the future: conjugated identity",
               right_case && r.holds, detail);
  }
  return rep;
}

inline SuiteReport check_anomaly(const CheckOptions& o) {
  SuiteReport rep("anomaly", o);
  Rng rng(detail::suite_seed(o, 17));
  using E = ExactComplex;
  const Truncation tr{std::min(o.max_sym_degree, 3), std::min(o.max_field_degree, 4)};
  const Matrix one = identity_matrix(1), minus = Matrix{{E(-1)}};
  struct Case {
    std::string name;
    CausalSetPtr cs;
    std::vector<FieldSymmetry> gens;
    FeynmanMeasure<E> omega;
  };
  auto symmetric_cut = [&](const CausalSetPtr& cs) {
    CutPropagator<E> cut(cs);
    const E diag(rng.nonzero_rational()), off(rng.rational());
    for (int i = 0; i < cs->num_fields(); ++i)
      for (int j = 0; j < cs->num_fields(); ++j) cut.set(i, j, i == j ? diag : off);
    return cut;
  };
  std::vector<Case> cases;
  {
    const auto cs = CausalSet::simple(1, {});
    const auto cut = symmetric_cut(cs);
    Renormalization<E>::Data d;
    d[make_multiset({field_power(0, 0, 1), field_power(0, 0, 2)})] = E(rng.nonzero_rational());
    DiagonalData<E> diag{{{0, 0, 0}, cut.at(0, 0)}};
    cases.push_back({"flip with odd twist", cs, {FieldSymmetry({0}, {minus})},
                     FeynmanMeasure<E>::from_cut(cut, diag, Renormalization<E>(d, tr))});
  }
  {
    const auto cs = CausalSet::simple(2, {});
    const auto cut = symmetric_cut(cs);
    DiagonalData<E> diag{{{0, 0, 0}, E(1)}, {{1, 0, 0}, E(2)}};
    cases.push_back({"swap with non-invariant diagonal", cs, {FieldSymmetry({1, 0}, {one, one})},
                     FeynmanMeasure<E>::from_cut(cut, diag)});
  }
  {
    const auto cs = CausalSet::simple(3, {});
    const auto cut = symmetric_cut(cs);
    DiagonalData<E> diag{{{0, 0, 0}, E(1)}, {{1, 0, 0}, E(2)}, {{2, 0, 0}, E(-1)}};
    cases.push_back({"S3 on three spacelike points", cs,
                     {FieldSymmetry({1, 0, 2}, {one, one, one}), FieldSymmetry({1, 2, 0}, {one, one, one})},
                     FeynmanMeasure<E>::from_cut(cut, diag)});
  }
  {
    const auto cs = CausalSet::simple(2, {});
    const auto cut = symmetric_cut(cs);
    Renormalization<E>::Data d;
    d[make_multiset({field_power(0, 0, 1), field_power(0, 0, 2)})] = E(1);
    DiagonalData<E> diag{{{0, 0, 0}, E(3)}, {{1, 0, 0}, E(1)}};
    cases.push_back({"flip x swap", cs, {FieldSymmetry({0, 1}, {minus, minus}), FieldSymmetry({1, 0}, {one, one})},
                     FeynmanMeasure<E>::from_cut(cut, diag, Renormalization<E>(d, tr))});
  }
  for (const auto& c : cases) {
    try {
      const auto group = group_closure(*c.cs, c.gens);
      if (!group) {
        rep.fail("cocycle identity", "group closure too large");
        continue;
      }
      const auto coc = induced_cocycle(*group, c.omega, tr);
      bool nontrivial = false;
      for (const auto& e : coc.entries) nontrivial = nontrivial || !e.rho.is_identity();
      const auto chk = cocycle_check(coc, *c.cs);
      rep.record("cocycle identity", chk.holds && chk.pairs_checked == group->size() * group->size(),
                 {{"model", c.name}, {"group_order", group->size()}, {"pairs", chk.pairs_checked},
                  {"nontrivial", nontrivial}});
      const auto cb = coboundary_solve(coc, *c.cs, tr);
      rep.record("finite group: coboundary solved", cb.solved, {{"model", c.name}, {"message", cb.message}});
      if (!cb.solved) continue;
      const auto fixed = c.omega.acted_on_by(cb.rho, tr);
      bool invariant = true;
      std::string where;
      for (const auto& g : *group) {
        if (!detail::measures_agree(act_symmetry(g, fixed, tr), fixed, spanning_basis(*c.cs, tr), &where)) {
          invariant = false;
          break;
        }
      }
      rep.record("corrected measure is invariant", invariant, {{"model", c.name}, {"mismatch", where}});
    } catch (const std::exception& e) {
      rep.fail("cocycle identity", std::string(c.name) + ": " + e.what());
    }
  }
  // Lifting an invariant element between the two actions.
  {
    const auto cs = CausalSet::simple(2, {});
    const auto cut = symmetric_cut(cs);
    Renormalization<E>::Data d;
    d[make_multiset({field_power(0, 0, 1), field_power(0, 0, 1)})] = E(rng.nonzero_rational());
    DiagonalData<E> diag{{{0, 0, 0}, cut.at(0, 0)}, {{1, 0, 0}, cut.at(1, 1)}};
    const auto omega = FeynmanMeasure<E>::from_cut(cut, diag, Renormalization<E>(d, tr));
    const auto group = *group_closure(*cs, {FieldSymmetry({1, 0}, {one, one})});
    const auto coc = induced_cocycle(group, omega, tr);
    SymElement<E> a;
    for (PointId p = 0; p < 2; ++p) a.add(make_multiset({field_power(p, 0, 1), field_power(p, 0, 1)}), E(1));
    for (bool finite : {true, false}) {
      const auto r = invariant_lift(a, coc, finite);
      rep.record(finite ? "invariant lift by averaging" : "invariant lift by linear solve",
                 r.ok && r.primitive_rhs && r.averaged == finite,
                 {{"a", to_string(*cs, a)}, {"v", to_string(*cs, r.correction)}, {"error", r.error}});
    }
  }
  return rep;
}

// ------------------------------------------------------------------ registry

struct SuiteEntry {
  std::string name;
  std::string criterion;  // one-line description for the acceptance runner, empty for module suites
  std::function<SuiteReport(const CheckOptions&)> run;
};

inline const std::vector<SuiteEntry>& suite_registry() {
  static const std::vector<SuiteEntry> r{
      {"scalars", "", check_scalars},
      {"causal", "", check_causal},
      {"hopf", "", check_hopf},
      {"wick", "Wick engine equals naive matching enumerator", check_wick},
      {"gaussian", "Gaussian condition on split pairs", check_gaussian},
      {"transitivity", "simple transitivity of the renormalization action", check_transitivity},
      {"factorization", "graded factorization recomposes", check_factorization},
      {"polekill", "pole killing leaves no principal part", check_polekill},
      {"locality", "omega vanishes on the locality ideal", check_locality},
      {"commutativity", "spacelike words commute", check_commutativity},
      {"cutkosky", "omega(A (x) A (x) 1...) = 1 for group-like A", check_cutkosky},
      {"hermiticity", "Hermitian cut gives Hermitian omega", check_hermiticity},
      {"positivity", "PSD cut gives PSD Gram matrices", check_positivity},
      {"interacting", "lambda phi^4 moments match brute force", check_interacting},
      {"covariance", "renormalization covariance of interacting values", check_covariance},
      {"cutoff", "cutoff identities on chains", check_cutoff},
      {"anomaly", "cocycle, coboundary and invariant lift", check_anomaly},
  };
  return r;
}

inline const SuiteEntry* find_suite(const std::string& name) {
  for (const auto& e : suite_registry())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace uvqft
