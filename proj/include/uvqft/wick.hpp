#pragma once

// Wick sums: the sum over perfect matchings of all fields in a multiset of the
// product of Feynman propagators of each pair.

#include <uvqft/propagator.hpp>
#include <uvqft/sym_element.hpp>

#include <string>
#include <unordered_map>

namespace uvqft {

template <class S>
class WickEngine {
 public:
  explicit WickEngine(const Propagator<S>& w) : w_(w) {}

  /// Matchings of a field-count vector. The first remaining field pairs with
  /// every later slot (itself included), weighted by multiplicity.
  S eval_counts(const std::vector<std::uint8_t>& counts) {
    int total = 0;
    for (auto c : counts) total += c;
    if (total % 2) return S();
    std::string key(counts.begin(), counts.end());
    return rec(key);
  }

  S eval(const Multiset& m) { return eval_counts(field_counts(*w_.causal_set(), m)); }

  template <class T>
  T eval(const SymElement<T>& a) {
    T total;
    for (const auto& [m, c] : a.terms()) {
      const S v = eval(m);
      if (!is_zero(v)) total += c * lift<T>(v);
    }
    return total;
  }

  std::size_t cache_size() const { return memo_.size(); }

 private:
  S rec(std::string& key) {
    const int n = static_cast<int>(key.size());
    int i = 0;
    while (i < n && key[i] == 0) ++i;
    if (i == n) return S(1);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    S total;
    --key[i];
    for (int j = i; j < n; ++j) {
      const int c = static_cast<unsigned char>(key[j]);
      if (c == 0) continue;
      const S& wij = w_.at(i, j);
      if (is_zero(wij)) continue;
      --key[j];
      total += mul_int(wij * rec(key), c);
      ++key[j];
    }
    ++key[i];
    memo_.emplace(key, total);
    return total;
  }

  const Propagator<S>& w_;
  std::unordered_map<std::string, S> memo_;
};

template <class S>
S wick_eval(const FeynmanPropagator<S>& f, const Multiset& m) {
  return WickEngine<S>(f).eval(m);
}

template <class S, class T>
T wick_eval(const FeynmanPropagator<S>& f, const SymElement<T>& a) {
  return WickEngine<S>(f).template eval<T>(a);
}

}  // namespace uvqft
