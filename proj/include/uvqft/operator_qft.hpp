#pragma once

// Operator-level statements: locality generators, spacelike commutators,
// Hermiticity, Gram matrices, interacting theories, the S-matrix, cutoff
// comparisons and renormalization covariance.

#include <uvqft/linear_algebra.hpp>
#include <uvqft/word_measure.hpp>

#include <optional>
#include <string>
#include <vector>

namespace uvqft {

template <class T>
struct WordPair {
  TensorWord<T> first;
  TensorWord<T> second;
};

/// The two words Y (x) ABD (x) DBC (x) X and Y (x) AD (x) DC (x) X, where X has n factors.
/// For n even no point of supp B may be <= a point of supp A u supp C; for n odd, none may be >=.
template <class T>
std::optional<WordPair<T>> locality_generator(const CausalSet& cs, const SymElement<T>& A, const SymElement<T>& C,
                                              const SymElement<T>& B, const SymElement<T>& D,
                                              const TensorWord<T>& upper, const TensorWord<T>& lower) {
  SupportSet ac = A.support();
  for (PointId p : C.support()) ac.insert(p);
  const bool even = lower.length() % 2 == 0;
  const bool ok = even ? cs.none_leq(B.support(), ac) : cs.none_leq(ac, B.support());
  if (!ok) return std::nullopt;
  TensorWord<T> mid1({D * B * C, A * B * D});
  TensorWord<T> mid2({D * C, A * D});
  return WordPair<T>{concat(upper, concat(mid1, lower)), concat(upper, concat(mid2, lower))};
}

/// omega(U (x) V (x) W (x) L) - omega(U (x) W (x) V (x) L).
template <class S, class T>
T commutator_mod_locality(WordEvaluator<S>& ev, const TensorWord<T>& V, const TensorWord<T>& W,
                          const TensorWord<T>& upper, const TensorWord<T>& lower) {
  const auto vw = concat(upper, concat(concat(V, W), lower));
  const auto wv = concat(upper, concat(concat(W, V), lower));
  return ev.eval(vw) - ev.eval(wv);
}

template <class T>
struct HermitianReport {
  T lhs;
  T rhs;
  bool holds = false;
};

/// omega(A_n (x) ... (x) A_1) against conj(omega(A_1* (x) ... (x) A_n*)).
template <class S, class T>
HermitianReport<T> hermitian_check(WordEvaluator<S>& ev, const TensorWord<T>& w) {
  HermitianReport<T> r;
  r.lhs = ev.eval(w);
  TensorWord<T> rev;
  for (const auto& f : w.factors) rev.factors.insert(rev.factors.begin(), star(f));
  r.rhs = conj(ev.eval(rev));
  r.holds = r.lhs == r.rhs;
  return r;
}

/// G_ij = omega(b_i* (x) b_j).
template <class S, class T>
std::vector<std::vector<T>> gns_gram(WordEvaluator<S>& ev, const std::vector<TensorWord<T>>& basis) {
  for (const auto& b : basis)
    if (!b.is_even()) throw std::invalid_argument("Gram basis words must have even length");
  std::vector<std::vector<T>> g(basis.size(), std::vector<T>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto bi = star(basis[i]);
    for (std::size_t j = 0; j < basis.size(); ++j) g[i][j] = ev.eval(concat(bi, basis[j]));
  }
  return g;
}

/// Free measure deformed by the group-like element exp(X) on every factor. For a
/// Lagrangian theory X = i f L_I; covariance produces non-local exponents.
template <class S, class T>
class InteractingTheory {
 public:
  InteractingTheory(FeynmanMeasure<S> omega, SymElement<T> exponent)
      : ev_(std::make_shared<WordEvaluator<S>>(std::move(omega))), exponent_(std::move(exponent)) {
    if (!has_nilpotent_coefficients(exponent_))
      throw std::domain_error("interaction has non-nilpotent coefficients");
    group_like_ = hopf_exp(exponent_);
  }

  /// exp(i f L_I) with L_I local.
  static InteractingTheory from_lagrangian(FeynmanMeasure<S> omega, const SymElement<T>& L,
                                      std::vector<ExactComplex> cutoff = {}) {
    if (!is_local(L)) throw std::invalid_argument("interaction Lagrangian must be local");
    if (!has_nilpotent_coefficients(L)) throw std::domain_error("interaction has non-nilpotent coefficients");
    if (cutoff.empty()) cutoff.assign(omega.model().size(), ExactComplex(1));
    SymElement<T> X = lift<T>(ExactComplex::i()) * apply_cutoff(L, cutoff);
    InteractingTheory t(std::move(omega), X);
    t.lagrangian_ = L;
    t.cutoff_ = cutoff;
    return t;
  }

  WordEvaluator<S>& evaluator() const { return *ev_; }
  const FeynmanMeasure<S>& measure() const { return ev_->measure(); }
  const SymElement<T>& exponent() const { return exponent_; }
  const SymElement<T>& group_like() const { return group_like_; }
  const std::optional<SymElement<T>>& lagrangian() const { return lagrangian_; }
  const std::vector<ExactComplex>& cutoff() const { return cutoff_; }

  InteractingTheory with_cutoff(std::vector<ExactComplex> f) const {
    if (!lagrangian_) throw std::logic_error("cutoffs apply to Lagrangian theories");
    InteractingTheory t = from_lagrangian(measure(), *lagrangian_, std::move(f));
    t.ev_ = ev_;
    return t;
  }

  TensorWord<T> dress(const TensorWord<T>& w) const { return multiply_factors(group_like_, w); }

  T eval(const TensorWord<T>& w) const { return ev_->eval(dress(w)); }

 private:
  std::shared_ptr<WordEvaluator<S>> ev_;
  SymElement<T> exponent_;
  SymElement<T> group_like_;
  std::optional<SymElement<T>> lagrangian_;
  std::vector<ExactComplex> cutoff_;
};

template <class S, class T>
T interacting_eval(const InteractingTheory<S, T>& theory, const TensorWord<T>& w) {
  return theory.eval(w);
}

/// Words for S-matrix elements: S = 1 (x) exp(iL), T(A) = 1 (x) A.
template <class S, class T>
struct SMatrix {
  const InteractingTheory<S, T>& theory;

  TensorWord<T> s() const { return TensorWord<T>({theory.group_like(), SymElement<T>::one()}); }
  TensorWord<T> s_star() const { return star(s()); }
  TensorWord<T> time_ordered(const SymElement<T>& a) const { return TensorWord<T>({a, SymElement<T>::one()}); }
  /// T_L(A) = 1 (x) exp(iL) A.
  TensorWord<T> interacting_time_ordered(const SymElement<T>& a) const {
    return TensorWord<T>({theory.group_like() * a, SymElement<T>::one()});
  }
  T vacuum_amplitude() const { return theory.evaluator().eval(s()); }
  T unitarity() const { return theory.evaluator().eval(concat(s_star(), s())); }
};

template <class S, class T>
SMatrix<S, T> s_matrix(const InteractingTheory<S, T>& theory) {
  return {theory};
}

template <class T>
struct CutoffReport {
  bool applicable = false;
  bool agree_on_past = false;
  bool agree_on_future = false;
  std::optional<std::pair<T, T>> past_identity;    // omega(M_f w), omega(M_g w)
  std::optional<std::pair<T, T>> future_identity;  // omega(M_f w), omega(M_g(E (x) 1 (x) w (x) 1 (x) E))
  bool holds = false;
};

/// Compares the theory with cutoffs f and g on w. If they agree on the past of
/// supp w the values agree; if they agree on the future the g-side is
/// conjugated by E = exp(i (f - g) L) padded with units.
template <class S, class T>
CutoffReport<T> cutoff_compare(const InteractingTheory<S, T>& theory, const std::vector<ExactComplex>& f,
                               const std::vector<ExactComplex>& g, const TensorWord<T>& w) {
  CutoffReport<T> r;
  const CausalSet& cs = theory.measure().model();
  const SupportSet supp = w.support();
  auto agree_on = [&](const SupportSet& s) {
    for (PointId p : s)
      if (!(f.at(p) == g.at(p))) return false;
    return true;
  };
  r.agree_on_past = agree_on(cs.past_of(supp));
  r.agree_on_future = agree_on(cs.future_of(supp));
  r.applicable = r.agree_on_past || r.agree_on_future;
  if (!r.applicable) return r;
  const auto tf = theory.with_cutoff(f);
  const auto tg = theory.with_cutoff(g);
  const T vf = tf.eval(w);
  r.holds = true;
  if (r.agree_on_past) {
    const T vg = tg.eval(w);
    r.past_identity = std::make_pair(vf, vg);
    r.holds = r.holds && vf == vg;
  }
  if (r.agree_on_future) {
    std::vector<ExactComplex> diff(f.size());
    for (std::size_t p = 0; p < f.size(); ++p) diff[p] = f[p] - g[p];
    const SymElement<T> E = hopf_exp(lift<T>(ExactComplex::i()) * apply_cutoff(*theory.lagrangian(), diff));
    const SymElement<T> one = SymElement<T>::one();
    TensorWord<T> padded = concat(TensorWord<T>({one, E}), concat(w, TensorWord<T>({E, one})));
    const T vg = tg.eval(padded);
    r.future_identity = std::make_pair(vf, vg);
    r.holds = r.holds && vf == vg;
  }
  return r;
}

template <class T>
struct CovarianceReport {
  T original;
  T transformed;
  bool holds = false;
  bool rho_normalized = false;       // no degree-one components
  bool simple_factors_unchanged = true;
  std::size_t simple_factors = 0;
  SymElement<T> new_exponent;        // iL' = log(rho(exp(iL)))
};

/// A simple element: a combination of single vertices with one field each.
template <class T>
bool is_simple(const SymElement<T>& a) {
  for (const auto& kv : a.terms())
    if (kv.first.size() != 1 || vertex_field_degree(kv.first.front()) != 1) return false;
  return !a.is_zero();
}

template <class S, class T>
bool is_renormalization_simple_case(const Renormalization<S>& rho, const SymElement<T>& a) {
  return is_simple_operator_preserving(rho) && is_simple(a);
}

/// Transforms (omega, iL, factors) by rho: omega' = omega o rho^-1,
/// iL' = log(rho(exp(iL))), A' = exp(-iL') rho(exp(iL) A), and compares values on w.
template <class S, class T>
CovarianceReport<T> renorm_covariance(const Renormalization<S>& rho, const InteractingTheory<S, T>& theory,
                                      const TensorWord<T>& w) {
  CovarianceReport<T> r;
  const CausalSet& cs = theory.measure().model();
  r.rho_normalized = rho.data().empty() || rho.order() >= 2;
  r.original = theory.eval(w);
  const auto dressed = theory.dress(w);
  std::vector<SymElement<T>> moved;
  Truncation need{0, 0};
  for (const auto& f : dressed.factors) {
    moved.push_back(rho.act(f));
    need.max_sym_degree = std::max(need.max_sym_degree, std::max(1, f.max_sym_degree()));
    need.max_field_degree = std::max(need.max_field_degree, f.max_field_degree());
  }
  const SymElement<T> G = rho.act(theory.group_like());
  const SymElement<T> logG = hopf_log(G);
  r.new_exponent = logG;
  const SymElement<T> Ginv = hopf_exp(-logG);
  const auto rho_inv = renorm_invert(rho, cs, need);
  const FeynmanMeasure<S> omega_prime = theory.measure().acted_on_by(rho_inv, need);
  InteractingTheory<S, T> transformed(omega_prime, logG);
  TensorWord<T> wprime;
  for (std::size_t k = 0; k < w.factors.size(); ++k) {
    SymElement<T> a = Ginv * moved[k];
    if (is_renormalization_simple_case(rho, w.factors[k])) {
      ++r.simple_factors;
      if (!(a == w.factors[k])) r.simple_factors_unchanged = false;
    }
    wprime.factors.push_back(std::move(a));
  }
  r.transformed = transformed.eval(wprime);
  r.holds = r.original == r.transformed;
  return r;
}

}  // namespace uvqft
