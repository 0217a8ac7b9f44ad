#pragma once

// Feynman measures: the Wick functional of a Feynman propagator composed with a
// renormalization twist, and the Gaussian factorization check.

#include <uvqft/propagator.hpp>
#include <uvqft/renormalization.hpp>
#include <uvqft/wick.hpp>

#include <memory>
#include <string>

namespace uvqft {

template <class S>
class FeynmanMeasure {
 public:
  FeynmanMeasure(CutPropagator<S> cut, FeynmanPropagator<S> feynman, Renormalization<S> twist = {})
      : cut_(std::make_shared<const CutPropagator<S>>(std::move(cut))),
        feyn_(std::make_shared<const FeynmanPropagator<S>>(std::move(feynman))),
        twist_(std::move(twist)),
        state_(std::make_shared<State>(*feyn_)) {
    if (!(*cut_->causal_set() == *feyn_->causal_set()))
      throw std::invalid_argument("cut and Feynman propagators live on different models");
  }

  /// Wick measure with the Feynman propagator built from the cut and a diagonal.
  static FeynmanMeasure from_cut(const CutPropagator<S>& cut, const DiagonalData<S>& diagonal,
                                 Renormalization<S> twist = {}) {
    return FeynmanMeasure(cut, build_feynman_propagator(cut, diagonal), std::move(twist));
  }
  /// The diagonal is the symmetric part of the cut at coincident points.
  static FeynmanMeasure hermitian_wick(const CutPropagator<S>& cut, Renormalization<S> twist = {}) {
    return from_cut(cut, symmetric_cut_diagonal(cut), std::move(twist));
  }

  const CausalSetPtr& causal_set() const { return cut_->causal_set(); }
  const CausalSet& model() const { return *cut_->causal_set(); }
  const CutPropagator<S>& cut() const { return *cut_; }
  const FeynmanPropagator<S>& feynman() const { return *feyn_; }
  const Renormalization<S>& twist() const { return twist_; }

  S eval(const Multiset& m) const {
    auto it = state_->memo.find(m);
    if (it != state_->memo.end()) return it->second;
    S v;
    if (twist_.is_identity()) {
      v = state_->wick.eval(m);
    } else {
      for (const auto& [k, c] : twist_.act_basis(m)) {
        const S w = state_->wick.eval(k);
        if (!is_zero(w)) v += c * w;
      }
    }
    state_->memo.emplace(m, v);
    return v;
  }

  template <class T>
  T eval(const SymElement<T>& a) const {
    T total;
    for (const auto& [m, c] : a.terms()) {
      const S v = eval(m);
      if (!is_zero(v)) total += c * lift<T>(v);
    }
    return total;
  }

  /// (rho . omega)(A) = omega(rho(A)): the twist becomes twist o rho.
  FeynmanMeasure acted_on_by(const Renormalization<S>& rho, Truncation tr) const {
    return FeynmanMeasure(*cut_, *feyn_, renorm_compose(twist_, rho, model(), tr));
  }

  FeynmanMeasure with_twist(Renormalization<S> t) const { return FeynmanMeasure(*cut_, *feyn_, std::move(t)); }

  template <class U>
  FeynmanMeasure<U> lifted() const {
    return FeynmanMeasure<U>(cut_->template lifted<U>(), feyn_->template lifted<U>(), twist_.template lifted<U>());
  }

 private:
  struct State {
    explicit State(const FeynmanPropagator<S>& f) : wick(f) {}
    WickEngine<S> wick;
    std::map<Multiset, S> memo;
  };

  std::shared_ptr<const CutPropagator<S>> cut_;
  std::shared_ptr<const FeynmanPropagator<S>> feyn_;
  Renormalization<S> twist_;
  std::shared_ptr<State> state_;
};

template <class S, class T>
T measure_eval(const FeynmanMeasure<S>& omega, const SymElement<T>& a) {
  return omega.eval(a);
}

template <class S>
FeynmanMeasure<S> renorm_act_measure(const Renormalization<S>& rho, const FeynmanMeasure<S>& omega, Truncation tr) {
  return omega.acted_on_by(rho, tr);
}

template <class T>
struct GaussianResult {
  bool applicable = false;
  bool holds = false;
  T lhs;
  T rhs;
};

/// omega(AB) against sum omega(A') Delta(A'', B'') omega(B'), valid when no point of
/// supp A is <= a point of supp B.
template <class S, class T>
GaussianResult<T> gaussian_check(const FeynmanMeasure<S>& omega, const SymElement<T>& a, const SymElement<T>& b) {
  GaussianResult<T> r;
  const auto& cs = omega.model();
  if (!cs.none_leq(a.support(), b.support())) return r;
  r.applicable = true;
  SymElement<T> a0 = a, b0 = b;
  a0.retruncate({});
  b0.retruncate({});
  r.lhs = omega.eval(a0 * b0);
  BijectionSum<S> cross(omega.cut());
  for (const auto& [ma, ca] : a.terms()) {
    const auto sa = coaction_split(ma);
    for (const auto& [mb, cb] : b.terms()) {
      const auto sb = coaction_split(mb);
      S acc;
      for (const auto& ta : sa) {
        const S wa = omega.eval(ta.omega_part);
        if (is_zero(wa)) continue;
        const auto fa = field_counts(cs, ta.field_part);
        for (const auto& tb : sb) {
          const S wb = omega.eval(tb.omega_part);
          if (is_zero(wb)) continue;
          const S d = cross(fa, field_counts(cs, tb.field_part));
          if (is_zero(d)) continue;
          acc += mul_int(wa * d * wb, ta.weight * tb.weight);
        }
      }
      if (!is_zero(acc)) r.rhs += ca * cb * lift<T>(acc);
    }
  }
  r.holds = r.lhs == r.rhs;
  return r;
}

}  // namespace uvqft
