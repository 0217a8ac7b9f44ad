#pragma once

// Truncated symmetric algebra on vertex monomials with its primitive coproduct,
// the field coaction, the star involution and exp/log of nilpotent elements.

#include <uvqft/scalar.hpp>
#include <uvqft/vertex.hpp>

#include <climits>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace uvqft {

struct Truncation {
  int max_sym_degree = INT_MAX;
  int max_field_degree = INT_MAX;

  static Truncation unbounded() { return {}; }
  bool admits(int sym, int fields) const { return sym <= max_sym_degree && fields <= max_field_degree; }
  bool admits(const Multiset& m) const { return admits(static_cast<int>(m.size()), field_degree(m)); }
  bool is_unbounded() const { return max_sym_degree == INT_MAX && max_field_degree == INT_MAX; }
  bool contains(const Truncation& o) const {
    return o.max_sym_degree <= max_sym_degree && o.max_field_degree <= max_field_degree;
  }
  friend Truncation meet(const Truncation& a, const Truncation& b) {
    return {std::min(a.max_sym_degree, b.max_sym_degree), std::min(a.max_field_degree, b.max_field_degree)};
  }
  friend bool operator==(const Truncation&, const Truncation&) = default;
};

template <class T>
using TensorSquare = std::map<std::pair<Multiset, Multiset>, T>;

template <class T>
class SymElement {
 public:
  using Terms = std::map<Multiset, T>;

  SymElement() = default;
  explicit SymElement(Truncation tr) : trunc_(tr) {}

  static SymElement one(Truncation tr = {}) { return term({}, T(1), tr); }
  static SymElement term(const Multiset& m, const T& c, Truncation tr = {}) {
    SymElement e(tr);
    e.add(m, c);
    return e;
  }
  static SymElement vertex(Vertex v, const T& c = T(1), Truncation tr = {}) { return term({v}, c, tr); }

  const Terms& terms() const { return terms_; }
  const Truncation& truncation() const { return trunc_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  T coefficient(const Multiset& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? T() : it->second;
  }

  /// Adds c*m, dropping terms outside the truncation.
  void add(const Multiset& m, const T& c) {
    if (is_zero_scalar(c) || !trunc_.admits(m)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (is_zero_scalar(it->second)) terms_.erase(it);
    }
  }

  SymElement& retruncate(Truncation tr) {
    trunc_ = tr;
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (!tr.admits(it->first)) it = terms_.erase(it);
      else ++it;
    }
    return *this;
  }

  SymElement& operator+=(const SymElement& o) {
    trunc_ = meet(trunc_, o.trunc_);
    retruncate(trunc_);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  SymElement& operator-=(const SymElement& o) {
    trunc_ = meet(trunc_, o.trunc_);
    retruncate(trunc_);
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  friend SymElement operator+(SymElement a, const SymElement& b) { return a += b; }
  friend SymElement operator-(SymElement a, const SymElement& b) { return a -= b; }
  friend SymElement operator-(const SymElement& a) {
    SymElement r(a.trunc_);
    for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
    return r;
  }

  friend SymElement operator*(const T& s, const SymElement& a) {
    SymElement r(a.trunc_);
    for (const auto& [m, c] : a.terms_) r.add(m, s * c);
    return r;
  }

  /// Commutative product: multiset union, truncated to the meet of truncations.
  friend SymElement operator*(const SymElement& a, const SymElement& b) {
    SymElement r(meet(a.trunc_, b.trunc_));
    for (const auto& [ma, ca] : a.terms_) {
      const int sa = static_cast<int>(ma.size()), fa = field_degree(ma);
      for (const auto& [mb, cb] : b.terms_) {
        if (!r.trunc_.admits(sa + static_cast<int>(mb.size()), fa + field_degree(mb))) continue;
        r.add(multiset_union(ma, mb), ca * cb);
      }
    }
    return r;
  }

  friend bool operator==(const SymElement& a, const SymElement& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [m, c] : a.terms_) {
      if (it->first != m || !(it->second == c)) return false;
      ++it;
    }
    return true;
  }

  T counit() const { return coefficient({}); }

  SupportSet support() const {
    SupportSet s;
    for (const auto& kv : terms_)
      for (Vertex v : kv.first) s.insert(vertex_point(v));
    return s;
  }

  int max_sym_degree() const {
    int d = 0;
    for (const auto& kv : terms_) d = std::max(d, static_cast<int>(kv.first.size()));
    return d;
  }
  int max_field_degree() const {
    int d = 0;
    for (const auto& kv : terms_) d = std::max(d, field_degree(kv.first));
    return d;
  }

  template <class U>
  SymElement<U> lifted() const {
    SymElement<U> r(trunc_);
    for (const auto& [m, c] : terms_) r.add(m, lift<U>(c));
    return r;
  }

  template <class F>
  SymElement map_coefficients(F&& f) const {
    SymElement r(trunc_);
    for (const auto& [m, c] : terms_) r.add(m, f(m, c));
    return r;
  }

  /// Part of symmetric degree exactly m.
  SymElement degree_part(int m) const {
    SymElement r(trunc_);
    for (const auto& [k, c] : terms_)
      if (static_cast<int>(k.size()) == m) r.terms_.emplace(k, c);
    return r;
  }

 private:
  static bool is_zero_scalar(const T& c) {
    using uvqft::is_zero;
    return is_zero(c);
  }

  Terms terms_;
  Truncation trunc_;
};

template <class T>
SymElement<T> sym_product(const SymElement<T>& a, const SymElement<T>& b) {
  return a * b;
}

template <class T>
SymElement<T> sym_power(const SymElement<T>& a, int n) {
  SymElement<T> r = SymElement<T>::one(a.truncation());
  for (int i = 0; i < n; ++i) r = r * a;
  return r;
}

/// Coproduct of a basis multiset: every vertex primitive, extended multiplicatively.
template <class T>
void coproduct_into(const Multiset& m, const T& c, TensorSquare<T>& out) {
  const auto rs = runs(m);
  std::vector<int> left(rs.size(), 0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long mult) {
    if (i == rs.size()) {
      Multiset a, b;
      for (std::size_t k = 0; k < rs.size(); ++k) {
        a.insert(a.end(), left[k], rs[k].first);
        b.insert(b.end(), rs[k].second - left[k], rs[k].first);
      }
      T v = mul_int(c, mult);
      auto [it, ins] = out.emplace(std::make_pair(std::move(a), std::move(b)), v);
      if (!ins) {
        it->second += v;
        if (is_zero(it->second)) out.erase(it);
      }
      return;
    }
    for (int j = 0; j <= rs[i].second; ++j) {
      left[i] = j;
      rec(i + 1, mult * binomial(rs[i].second, j));
    }
  };
  rec(0, 1);
}

template <class T>
TensorSquare<T> coproduct(const SymElement<T>& a) {
  TensorSquare<T> out;
  for (const auto& [m, c] : a.terms()) coproduct_into(m, c, out);
  return out;
}

/// a (x) b restricted to pairs whose combined degrees fit tr.
template <class T>
TensorSquare<T> tensor_product(const SymElement<T>& a, const SymElement<T>& b, Truncation tr = {}) {
  TensorSquare<T> out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      if (!tr.admits(static_cast<int>(ma.size() + mb.size()), field_degree(ma) + field_degree(mb))) continue;
      T v = ca * cb;
      if (is_zero(v)) continue;
      auto [it, ins] = out.emplace(std::make_pair(ma, mb), v);
      if (!ins) {
        it->second += v;
        if (is_zero(it->second)) out.erase(it);
      }
    }
  return out;
}

template <class T>
TensorSquare<T> tensor_restrict(TensorSquare<T> t, Truncation tr) {
  for (auto it = t.begin(); it != t.end();) {
    const auto& [a, b] = it->first;
    if (!tr.admits(static_cast<int>(a.size() + b.size()), field_degree(a) + field_degree(b))) it = t.erase(it);
    else ++it;
  }
  return t;
}

template <class T>
bool tensor_equal(const TensorSquare<T>& a, const TensorSquare<T>& b) {
  if (a.size() != b.size()) return false;
  auto it = b.begin();
  for (const auto& [k, v] : a) {
    if (it->first != k || !(it->second == v)) return false;
    ++it;
  }
  return true;
}

/// One term of the field coaction: omega part, residual field part, binomial weight.
struct CoactionTerm {
  Multiset omega_part;
  Multiset field_part;  // vertices at the same points, read as field monomials
  long weight;
};

/// Per species: phi^k -> sum_j C(k,j) phi^j (x) phi^(k-j), both parts at the vertex's point.
inline std::vector<CoactionTerm> coaction_split(Vertex v) {
  std::vector<CoactionTerm> out;
  std::vector<int> e(kMaxSpecies), j(kMaxSpecies, 0);
  for (int s = 0; s < kMaxSpecies; ++s) e[s] = vertex_exp(v, s);
  const PointId p = vertex_point(v);
  std::function<void(int, long)> rec = [&](int s, long w) {
    if (s == kMaxSpecies) {
      std::vector<int> rest(kMaxSpecies);
      for (int k = 0; k < kMaxSpecies; ++k) rest[k] = e[k] - j[k];
      out.push_back({{make_vertex(p, j)}, {make_vertex(p, rest)}, w});
      return;
    }
    for (int t = 0; t <= e[s]; ++t) {
      j[s] = t;
      rec(s + 1, w * binomial(e[s], t));
    }
    j[s] = 0;
  };
  rec(0, 1);
  return out;
}

/// Coaction of a multiset: independent splits of each factor, merged.
inline std::vector<CoactionTerm> coaction_split(const Multiset& m) {
  std::map<std::pair<Multiset, Multiset>, long> acc;
  std::vector<std::vector<CoactionTerm>> per;
  for (Vertex v : m) per.push_back(coaction_split(v));
  std::function<void(std::size_t, Multiset, Multiset, long)> rec = [&](std::size_t i, Multiset a, Multiset b,
                                                                       long w) {
    if (i == per.size()) {
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      acc[{a, b}] += w;
      return;
    }
    for (const auto& t : per[i]) {
      Multiset a2 = a, b2 = b;
      a2.push_back(t.omega_part.front());
      b2.push_back(t.field_part.front());
      rec(i + 1, std::move(a2), std::move(b2), w * t.weight);
    }
  };
  rec(0, {}, {}, 1);
  std::vector<CoactionTerm> out;
  for (auto& [k, w] : acc) out.push_back({k.first, k.second, w});
  return out;
}

/// Conjugate scalars and multiply the symmetric-degree-m part by (-1)^m.
template <class T>
SymElement<T> star(const SymElement<T>& a) {
  SymElement<T> r(a.truncation());
  for (const auto& [m, c] : a.terms()) r.add(m, m.size() % 2 ? -conj(c) : conj(c));
  return r;
}

template <class T>
bool has_nilpotent_coefficients(const SymElement<T>& a) {
  for (const auto& kv : a.terms())
    if (!is_nilpotent(kv.second)) return false;
  return true;
}

/// exp(a) = sum a^n/n!; the coefficients of a must be nilpotent.
template <class T>
SymElement<T> hopf_exp(const SymElement<T>& a) {
  if (!has_nilpotent_coefficients(a)) throw std::domain_error("hopf_exp: non-nilpotent coefficients");
  SymElement<T> sum = SymElement<T>::one(a.truncation());
  SymElement<T> term = sum;
  for (int n = 1; n <= 4096; ++n) {
    term = term * a;
    if (term.is_zero()) break;
    term = term.map_coefficients([n](const Multiset&, const T& c) { return div_int(c, n); });
    sum += term;
  }
  return sum;
}

/// log(g) = sum (-1)^(n+1) (g-1)^n / n; requires g - 1 to have nilpotent coefficients.
template <class T>
SymElement<T> hopf_log(const SymElement<T>& g) {
  SymElement<T> u = g - SymElement<T>::one(g.truncation());
  if (!has_nilpotent_coefficients(u)) throw std::domain_error("hopf_log: argument is not 1 + nilpotent");
  SymElement<T> sum(g.truncation());
  SymElement<T> power = SymElement<T>::one(g.truncation());
  for (int n = 1; n <= 4096; ++n) {
    power = power * u;
    if (power.is_zero()) break;
    SymElement<T> t = power.map_coefficients([n](const Multiset&, const T& c) { return div_int(c, n); });
    if (n % 2 == 0) sum -= t;
    else sum += t;
  }
  return sum;
}

/// Delta(g) = g (x) g and counit(g) = 1 inside the truncation of g.
template <class T>
bool is_group_like(const SymElement<T>& g) {
  if (!(g.counit() == T(1))) return false;
  auto lhs = tensor_restrict(coproduct(g), g.truncation());
  auto rhs = tensor_product(g, g, g.truncation());
  return tensor_equal(lhs, rhs);
}

/// Elements of the form sum c_v v (symmetric degree one).
template <class T>
bool is_local(const SymElement<T>& a) {
  for (const auto& kv : a.terms())
    if (kv.first.size() != 1) return false;
  return true;
}

/// Algebra map induced by multiplying every vertex at p by f(p).
template <class T, class F>
SymElement<T> apply_cutoff(const SymElement<T>& a, const std::vector<F>& f) {
  SymElement<T> r(a.truncation());
  for (const auto& [m, c] : a.terms()) {
    T w = c;
    for (Vertex v : m) w = w * lift<T>(f.at(vertex_point(v)));
    r.add(m, w);
  }
  return r;
}

template <class T>
std::string to_string(const CausalSet& cs, const SymElement<T>& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : a.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c) + ")*" + multiset_to_string(cs, m);
  }
  return out;
}

}  // namespace uvqft
