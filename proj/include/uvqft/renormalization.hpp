#pragma once

// Renormalizations: point-local component data c acting on the symmetric
// algebra by block substitution.

#include <uvqft/basis.hpp>
#include <uvqft/sym_element.hpp>

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace uvqft {

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class S>
class Renormalization {
 public:
  using Data = std::map<Multiset, S>;

  Renormalization() = default;  // identity

  /// Data on single-point multisets. The degree-one value on a bare density is
  /// frozen to 1; `domain` says where the data is complete (unbounded: absent = 0).
  explicit Renormalization(Data data, Truncation domain = Truncation::unbounded()) : domain_(domain) {
    for (auto& [m, c] : data) {
      if (m.empty()) throw std::invalid_argument("renormalization data on the empty multiset");
      if (!is_single_point(m)) throw std::invalid_argument("renormalization data must be single-point (locality)");
      if (m.size() == 1 && is_density(m.front())) {
        if (!(c == S(1))) throw std::invalid_argument("degree-one density component must be the identity");
        continue;
      }
      if (!is_zero(c)) data_.emplace(m, std::move(c));
    }
  }

  const Data& data() const { return data_; }
  const Truncation& domain() const { return domain_; }
  bool is_identity() const { return data_.empty(); }

  /// c(X) for a single-point multiset.
  S component(const Multiset& x) const {
    if (x.size() == 1 && is_density(x.front())) return S(1);
    if (!domain_.admits(x)) throw DomainError("renormalization data requested outside its domain");
    auto it = data_.find(x);
    return it == data_.end() ? S() : it->second;
  }

  /// Terms of rho(M) for a basis multiset M.
  const std::map<Multiset, S>& act_basis(const Multiset& m) const {
    auto it = act_cache_->find(m);
    if (it != act_cache_->end()) return it->second;
    std::map<Multiset, S> out;
    if (data_.empty()) {
      out.emplace(m, S(1));
    } else {
      const int n = static_cast<int>(m.size());
      std::vector<int> block(n, 0);
      partitions(m, block, 0, 0, out);
    }
    return act_cache_->emplace(m, std::move(out)).first->second;
  }

  template <class T>
  SymElement<T> act(const SymElement<T>& a) const {
    SymElement<T> r(a.truncation());
    for (const auto& [m, c] : a.terms())
      for (const auto& [k, v] : act_basis(m)) r.add(k, c * lift<T>(v));
    return r;
  }

  /// rho restricted to components of symmetric degree exactly m (degree-one densities stay frozen).
  Renormalization degree_component(int m) const {
    Data d;
    for (const auto& [k, c] : data_)
      if (static_cast<int>(k.size()) == m) d.emplace(k, c);
    return Renormalization(std::move(d), domain_);
  }

  Renormalization restricted(Truncation tr) const {
    Data d;
    for (const auto& [k, c] : data_)
      if (tr.admits(k)) d.emplace(k, c);
    return Renormalization(std::move(d), meet(domain_, tr));
  }

  Renormalization with_domain(Truncation tr) const {
    Renormalization r = *this;
    r.domain_ = tr;
    r.act_cache_ = std::make_shared<std::map<Multiset, std::map<Multiset, S>>>();
    return r;
  }

  template <class U>
  Renormalization<U> lifted() const {
    typename Renormalization<U>::Data d;
    for (const auto& [k, c] : data_) d.emplace(k, lift<U>(c));
    return Renormalization<U>(std::move(d), domain_);
  }

  /// Lowest symmetric degree of a non-identity component; INT_MAX for the identity.
  int order() const {
    int m = INT_MAX;
    for (const auto& kv : data_) m = std::min(m, static_cast<int>(kv.first.size()));
    return m;
  }

  friend bool operator==(const Renormalization& a, const Renormalization& b) {
    if (a.data_.size() != b.data_.size()) return false;
    auto it = b.data_.begin();
    for (const auto& [k, c] : a.data_) {
      if (it->first != k || !(it->second == c)) return false;
      ++it;
    }
    return true;
  }

 private:
  // Block transform t(B): zero unless B sits at one point; otherwise the sum over
  // coaction splits of c(omega part) times the residual fields as one vertex.
  const std::map<Vertex, S>& block_transform(const Multiset& b) const {
    auto it = block_cache_->find(b);
    if (it != block_cache_->end()) return it->second;
    std::map<Vertex, S> out;
    if (is_single_point(b)) {
      for (const auto& t : coaction_split(b)) {
        S c = component(t.omega_part);
        if (is_zero(c)) continue;
        Vertex res = density(vertex_point(b.front()));
        for (Vertex v : t.field_part) res = vertex_mul(res, v);
        auto [pos, ins] = out.emplace(res, mul_int(c, t.weight));
        if (!ins) {
          pos->second += mul_int(c, t.weight);
          if (is_zero(pos->second)) out.erase(pos);
        }
      }
    }
    return block_cache_->emplace(b, std::move(out)).first->second;
  }

  // Restricted growth strings enumerate set partitions of the positions of m.
  void partitions(const Multiset& m, std::vector<int>& block, int i, int nblocks, std::map<Multiset, S>& out) const {
    const int n = static_cast<int>(m.size());
    if (i == n) {
      std::vector<Multiset> blocks(nblocks);
      for (int k = 0; k < n; ++k) blocks[block[k]].push_back(m[k]);
      std::vector<const std::map<Vertex, S>*> ts;
      for (auto& b : blocks) {
        const auto& t = block_transform(b);  // positions are sorted so b is sorted
        if (t.empty()) return;
        ts.push_back(&t);
      }
      combine(ts, 0, {}, S(1), out);
      return;
    }
    for (int k = 0; k <= nblocks; ++k) {
      block[i] = k;
      partitions(m, block, i + 1, std::max(nblocks, k + 1), out);
    }
  }

  void combine(const std::vector<const std::map<Vertex, S>*>& ts, std::size_t i, Multiset cur, const S& c,
               std::map<Multiset, S>& out) const {
    if (i == ts.size()) {
      std::sort(cur.begin(), cur.end());
      auto [it, ins] = out.emplace(std::move(cur), c);
      if (!ins) {
        it->second += c;
        if (is_zero(it->second)) out.erase(it);
      }
      return;
    }
    for (const auto& [v, w] : *ts[i]) {
      Multiset next = cur;
      next.push_back(v);
      combine(ts, i + 1, std::move(next), c * w, out);
    }
  }

  Data data_;
  Truncation domain_;
  std::shared_ptr<std::map<Multiset, std::map<Multiset, S>>> act_cache_ =
      std::make_shared<std::map<Multiset, std::map<Multiset, S>>>();
  std::shared_ptr<std::map<Multiset, std::map<Vertex, S>>> block_cache_ =
      std::make_shared<std::map<Multiset, std::map<Vertex, S>>>();
};

template <class S, class T>
SymElement<T> renorm_act_sym(const Renormalization<S>& rho, const SymElement<T>& a) {
  return rho.act(a);
}

/// Coefficient of the bare density at the (single) point of the result.
template <class S>
S density_coefficient(const std::map<Multiset, S>& terms, PointId p) {
  auto it = terms.find(Multiset{density(p)});
  return it == terms.end() ? S() : it->second;
}

template <class S>
S density_coefficient(const SymElement<S>& a, PointId p) {
  return a.coefficient(Multiset{density(p)});
}

/// Data of rho2 o rho1 (first rho1, then rho2) on every single-point multiset within tr.
template <class S>
Renormalization<S> renorm_compose(const Renormalization<S>& rho2, const Renormalization<S>& rho1,
                                  const CausalSet& cs, Truncation tr) {
  if (rho1.is_identity()) return rho2.restricted(meet(rho2.domain(), tr));
  if (rho2.is_identity()) return rho1.restricted(meet(rho1.domain(), tr));
  if (!rho1.domain().contains(tr) || !rho2.domain().contains(tr))
    throw DomainError("composition truncation exceeds the factors' domains");
  typename Renormalization<S>::Data d;
  for (PointId p = 0; p < cs.size(); ++p)
    for (const Multiset& x : single_point_basis(cs, p, tr)) {
      if (x.size() == 1 && is_density(x.front())) continue;
      S c;
      for (const auto& [k, v] : rho1.act_basis(x)) {
        const S w = density_coefficient(rho2.act_basis(k), p);
        if (!is_zero(w)) c += v * w;
      }
      if (!is_zero(c)) d.emplace(x, c);
    }
  return Renormalization<S>(std::move(d), tr);
}

/// Inverse through tr, built along the (size, field degree) order: the unknown
/// c(X) enters rho(sigma(X)) only through the term c(X) * density.
template <class S>
Renormalization<S> renorm_invert(const Renormalization<S>& rho, const CausalSet& cs, Truncation tr) {
  if (rho.is_identity()) return {};
  if (!rho.domain().contains(tr)) throw DomainError("inverse truncation exceeds the domain");
  typename Renormalization<S>::Data d;
  for (PointId p = 0; p < cs.size(); ++p)
    for (const Multiset& x : single_point_basis(cs, p, tr)) {
      if (x.size() == 1 && is_density(x.front())) continue;
      Renormalization<S> partial(d, tr);
      S val;
      for (const auto& [k, v] : partial.act_basis(x)) {
        const S w = density_coefficient(rho.act_basis(k), p);
        if (!is_zero(w)) val += v * w;
      }
      S c = -val;
      if (!is_zero(c)) d.emplace(x, c);
    }
  return Renormalization<S>(std::move(d), tr);
}

/// Commutator a b a^-1 b^-1 through tr.
template <class S>
Renormalization<S> renorm_commutator(const Renormalization<S>& a, const Renormalization<S>& b, const CausalSet& cs,
                                     Truncation tr) {
  auto ai = renorm_invert(a, cs, tr);
  auto bi = renorm_invert(b, cs, tr);
  return renorm_compose(renorm_compose(a, b, cs, tr), renorm_compose(ai, bi, cs, tr), cs, tr);
}

/// rho preserves the subgroup fixing simple operators: c vanishes on single-field
/// vertices of degree one, and on any block of size >= 2 containing a vertex of field degree <= 1.
template <class S>
bool is_simple_operator_preserving(const Renormalization<S>& rho) {
  for (const auto& [k, c] : rho.data()) {
    if (k.size() == 1 && vertex_field_degree(k.front()) == 1) return false;
    if (k.size() >= 2)
      for (Vertex v : k)
        if (vertex_field_degree(v) <= 1) return false;
  }
  return true;
}

/// Real form: components of odd size real, even size imaginary.
template <class S>
bool is_real_renormalization(const Renormalization<S>& rho) {
  for (const auto& [k, c] : rho.data()) {
    const S cc = conj(c);
    if (k.size() % 2 ? !(cc == c) : !(cc == -c)) return false;
  }
  return true;
}

template <class S>
std::string to_string(const CausalSet& cs, const Renormalization<S>& rho) {
  if (rho.is_identity()) return "identity";
  std::string out;
  for (const auto& [k, c] : rho.data()) {
    if (!out.empty()) out += "; ";
    out += "c(" + multiset_to_string(cs, k) + ") = " + to_string(c);
  }
  return out;
}

}  // namespace uvqft
