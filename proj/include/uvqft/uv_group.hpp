#pragma once

// Stage-by-stage constructions in the ultraviolet group: the renormalization
// relating two measures, factorization along the filtration, and pole killing.

#include <uvqft/measure.hpp>

#include <functional>
#include <string>
#include <vector>

namespace uvqft {

class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class S>
struct StageSolve {
  std::vector<Renormalization<S>> components;  // g_0, g_1, ...: g_n carries data of size n+1 only
  Renormalization<S> rho;                      // g_0 o g_1 o ... as maps on the algebra
  bool forced = true;                           // every stage pivot was the density value 1
  std::size_t single_point_checks = 0;
  std::size_t multi_point_checks = 0;
};

namespace detail {

// Terms of g_0(g_1(...g_{n-1}(m))).
template <class S>
std::map<Multiset, S> apply_chain(const std::vector<Renormalization<S>>& stages, const Multiset& m) {
  std::map<Multiset, S> cur{{m, S(1)}};
  for (auto g = stages.rbegin(); g != stages.rend(); ++g) {
    if (g->is_identity()) continue;
    std::map<Multiset, S> next;
    for (const auto& [k, c] : cur)
      for (const auto& [k2, v] : g->act_basis(k)) {
        auto [it, ins] = next.emplace(k2, c * v);
        if (!ins) {
          it->second += c * v;
          if (is_zero(it->second)) next.erase(it);
        }
      }
    cur = std::move(next);
  }
  return cur;
}

template <class S>
std::vector<Multiset> multi_point_of_size(const CausalSet& cs, Truncation tr, int size) {
  std::vector<Multiset> out;
  Truncation t{size, tr.max_field_degree};
  for (auto& m : spanning_basis(cs, t))
    if (static_cast<int>(m.size()) == size && !is_single_point(m)) out.push_back(std::move(m));
  return out;
}

// Shared stage loop. `target(x, current)` returns c(x) given mu(g_partial(x)).
// `precheck(x, mu_x)` audits a multi-point x before the stage's solve.
template <class S>
StageSolve<S> stage_loop(const FeynmanMeasure<S>& omega1, Truncation tr,
                         const std::function<S(const Multiset&, const S&)>& target,
                         const std::function<void(const Multiset&, const S&)>& precheck) {
  const CausalSet& cs = omega1.model();
  StageSolve<S> out;
  std::vector<Renormalization<S>> stages;
  std::map<Multiset, S> mu_cache;  // valid for the current list of stages
  auto mu = [&](const Multiset& m) {
    auto it = mu_cache.find(m);
    if (it != mu_cache.end()) return it->second;
    S v;
    for (const auto& [k, c] : apply_chain(stages, m)) {
      const S w = omega1.eval(k);
      if (!is_zero(w)) v += c * w;
    }
    mu_cache.emplace(m, v);
    return v;
  };
  const int D = bounded(tr.max_sym_degree, 0);
  for (int n = 0; n < D; ++n) {
    for (const Multiset& x : multi_point_of_size<S>(cs, tr, n + 1)) {
      precheck(x, mu(x));
      ++out.multi_point_checks;
    }
    typename Renormalization<S>::Data d;
    for (PointId p = 0; p < cs.size(); ++p) {
      if (!(mu({density(p)}) == S(1))) out.forced = false;
      for (const Multiset& x : single_point_basis(cs, p, tr)) {
        if (static_cast<int>(x.size()) != n + 1) continue;
        if (x.size() == 1 && is_density(x.front())) continue;
        Renormalization<S> partial(d, tr);
        S val;
        for (const auto& [k, c] : partial.act_basis(x)) {
          const S w = mu(k);
          if (!is_zero(w)) val += c * w;
        }
        S c = target(x, val);
        ++out.single_point_checks;
        if (!is_zero(c)) d.emplace(x, std::move(c));
      }
    }
    stages.emplace_back(std::move(d), tr);
    mu_cache.clear();
  }
  out.components = stages;
  Renormalization<S> rho;
  for (int k = static_cast<int>(stages.size()) - 1; k >= 0; --k) rho = renorm_compose(stages[k], rho, cs, tr);
  out.rho = rho.is_identity() ? Renormalization<S>() : rho;
  return out;
}

}  // namespace detail

/// rho with omega1(rho(A)) = omega2(A) on everything through tr.
template <class S>
StageSolve<S> find_renormalization_stages(const FeynmanMeasure<S>& omega1, const FeynmanMeasure<S>& omega2,
                                          Truncation tr) {
  if (!(omega1.cut() == omega2.cut())) throw std::invalid_argument("measures have different cut propagators");
  const CausalSet& cs = omega1.model();
  return detail::stage_loop<S>(
      omega1, tr, [&](const Multiset& x, const S& cur) { return omega2.eval(x) - cur; },
      [&](const Multiset& x, const S& mu_x) {
        if (!(mu_x == omega2.eval(x)))
          throw InvariantViolation("measures differ on the multi-point element " + multiset_to_string(cs, x) +
                                   " after lower stages; the difference is not single-point supported");
      });
}

template <class S>
Renormalization<S> find_renormalization(const FeynmanMeasure<S>& omega1, const FeynmanMeasure<S>& omega2,
                                        Truncation tr) {
  return find_renormalization_stages(omega1, omega2, tr).rho;
}

/// rho = g_0 o g_1 o ... with g_n carrying components of size n+1 only.
template <class S>
std::vector<Renormalization<S>> factorize(const Renormalization<S>& rho, const CausalSet& cs, Truncation tr) {
  std::vector<Renormalization<S>> out;
  Renormalization<S> r = rho.restricted(tr);
  const int D = bounded(tr.max_sym_degree, 0);
  for (int n = 0; n < D; ++n) {
    Renormalization<S> g = r.degree_component(n + 1).with_domain(tr);
    out.push_back(g);
    if (!g.is_identity()) r = renorm_compose(renorm_invert(g, cs, tr), r, cs, tr);
  }
  return out;
}

template <class S>
Renormalization<S> recompose(const std::vector<Renormalization<S>>& gs, const CausalSet& cs, Truncation tr) {
  Renormalization<S> r;
  for (int k = static_cast<int>(gs.size()) - 1; k >= 0; --k) r = renorm_compose(gs[k], r, cs, tr);
  return r;
}

/// Finite part hook for pole killing; minimal subtraction returns zero.
template <class S>
using SubtractionHook = std::function<S(const Multiset&)>;

template <class S>
struct PoleKillResult {
  StageSolve<S> stages;
  FeynmanMeasure<S> finite;
};

template <class S>
PoleKillResult<S> pole_kill(const FeynmanMeasure<S>& omega, Truncation tr, const SubtractionHook<S>& hook = {}) {
  const CausalSet& cs = omega.model();
  auto stages = detail::stage_loop<S>(
      omega, tr,
      [&](const Multiset& x, const S& cur) {
        S c = -cur.principal_part();
        if (hook) c += hook(x);
        return c;
      },
      [&](const Multiset& x, const S& mu_x) {
        if (!mu_x.is_pole_free())
          throw InvariantViolation("singular part on the multi-point element " + multiset_to_string(cs, x) +
                                   " is not single-point supported");
      });
  FeynmanMeasure<S> fin = omega.acted_on_by(stages.rho, tr);
  return {std::move(stages), std::move(fin)};
}

}  // namespace uvqft
