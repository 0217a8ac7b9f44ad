#pragma once

// Extension of a Feynman measure to words. Position 1 uses the measure itself;
// position k+1 uses a functional f_k fixed by requiring that adjacent group-like
// pairs g (x) g cancel. Fields joined across factors use the cut propagator with
// the higher position as first argument.

#include <uvqft/measure.hpp>
#include <uvqft/tensor_word.hpp>

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace uvqft {

template <class S>
class WordEvaluator {
 public:
  explicit WordEvaluator(FeynmanMeasure<S> omega)
      : omega_(std::move(omega)), cs_(omega_.causal_set()), nf_(cs_->num_fields()) {}

  const FeynmanMeasure<S>& measure() const { return omega_; }

  /// f_0 = omega; for k >= 1, f_k(empty) = 1 and for M nonempty
  /// sum over sub-multisets M1 of M of C(M;M1) [f_k on M - M1 above f_{k-1} on M1] = 0.
  S functional(int k, const Multiset& m) {
    if (k == 0) return omega_.eval(m);
    if (m.empty()) return S(1);
    if (static_cast<int>(fk_.size()) < k) fk_.resize(k);
    {
      auto it = fk_[k - 1].find(m);
      if (it != fk_[k - 1].end()) return it->second;
    }
    S total;
    const auto rs = runs(m);
    std::vector<int> take(rs.size(), 0);
    // Enumerate nonempty M1 by multiplicity vectors.
    std::function<void(std::size_t, long, bool)> rec = [&](std::size_t i, long weight, bool any) {
      if (i == rs.size()) {
        if (!any) return;
        Multiset lower, upper;
        for (std::size_t r = 0; r < rs.size(); ++r) {
          lower.insert(lower.end(), take[r], rs[r].first);
          upper.insert(upper.end(), rs[r].second - take[r], rs[r].first);
        }
        const S v = pair_value(k, upper, lower);
        if (!is_zero(v)) total += mul_int(v, weight);
        return;
      }
      for (int t = 0; t <= rs[i].second; ++t) {
        take[i] = t;
        rec(i + 1, weight * binomial(rs[i].second, t), any || t > 0);
      }
    };
    rec(0, 1, false);
    S v = -total;
    fk_[k - 1].emplace(m, v);
    return v;
  }

  /// Value on a word of basis multisets (index = position - 1).
  S eval_basis(const std::vector<Multiset>& word) {
    auto it = word_memo_.find(word);
    if (it != word_memo_.end()) return it->second;
    const std::size_t n = word.size();
    std::vector<const std::vector<Split>*> splits(n);
    for (std::size_t i = 0; i < n; ++i) splits[i] = &splits_of(word[i]);
    S total;
    std::vector<std::uint8_t> counts(n * nf_, 0);
    std::function<void(std::size_t, const S&)> rec = [&](std::size_t i, const S& acc) {
      if (i == n) {
        const S c = cross(counts, n);
        if (!is_zero(c)) total += acc * c;
        return;
      }
      for (const Split& sp : *splits[i]) {
        const S f = functional(static_cast<int>(i), sp.residual);
        if (is_zero(f)) continue;
        std::copy(sp.fields.begin(), sp.fields.end(), counts.begin() + i * nf_);
        rec(i + 1, acc * mul_int(f, sp.weight));
      }
      std::fill(counts.begin() + i * nf_, counts.begin() + (i + 1) * nf_, 0);
    };
    rec(0, S(1));
    word_memo_.emplace(word, total);
    return total;
  }

  /// Multilinear extension to words with T coefficients; any length.
  template <class T>
  T eval_any(const TensorWord<T>& w) {
    T total;
    const std::size_t n = w.factors.size();
    std::vector<Multiset> key(n);
    std::function<void(std::size_t, const T&)> rec = [&](std::size_t i, const T& coeff) {
      if (i == n) {
        const S v = eval_basis(key);
        if (!is_zero(v)) total += coeff * lift<T>(v);
        return;
      }
      for (const auto& [m, c] : w.factors[i].terms()) {
        T next = coeff * c;
        if (is_zero(next)) continue;
        key[i] = m;
        rec(i + 1, next);
      }
    };
    rec(0, T(1));
    return total;
  }

  /// Evaluation on the even subalgebra.
  template <class T>
  T eval(const TensorWord<T>& w) {
    if (!w.is_even()) throw std::invalid_argument("words must have an even number of factors");
    return eval_any(w);
  }

 private:
  struct Split {
    Multiset residual;                 // omega part, fed to the position's functional
    std::vector<std::uint8_t> fields;  // field counts joined to other factors
    long weight;
  };

  const std::vector<Split>& splits_of(const Multiset& m) {
    auto it = split_memo_.find(m);
    if (it != split_memo_.end()) return it->second;
    std::vector<Split> out;
    for (auto& t : coaction_split(m)) out.push_back({t.omega_part, field_counts(*cs_, t.field_part), t.weight});
    return split_memo_.emplace(m, std::move(out)).first->second;
  }

  // Two factors: `upper` at the higher position with f_k, `lower` with f_{k-1}.
  S pair_value(int k, const Multiset& upper, const Multiset& lower) {
    S total;
    const auto& su = splits_of(upper);
    const auto& sl = splits_of(lower);
    BijectionSum<S>& bij = bijection();
    for (const Split& a : su) {
      const S fa = functional(k, a.residual);
      if (is_zero(fa)) continue;
      for (const Split& b : sl) {
        const S d = bij(a.fields, b.fields);
        if (is_zero(d)) continue;
        const S fb = functional(k - 1, b.residual);
        if (is_zero(fb)) continue;
        total += mul_int(fa * d * fb, a.weight * b.weight);
      }
    }
    return total;
  }

  BijectionSum<S>& bijection() {
    if (!bij_) bij_ = std::make_unique<BijectionSum<S>>(omega_.cut());
    return *bij_;
  }

  // Perfect matchings of the fields left over in each factor, pairs only between
  // different factors, weighted by cut(higher position field, lower position field).
  S cross(const std::vector<std::uint8_t>& counts, std::size_t n) {
    int total = 0;
    std::vector<int> per(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (int f = 0; f < nf_; ++f) per[i] += counts[i * nf_ + f];
    for (int p : per) total += p;
    if (total == 0) return S(1);
    if (total % 2) return S();
    for (int p : per)
      if (2 * p > total) return S();
    std::string key(counts.begin(), counts.end());
    return cross_rec(key, n);
  }

  S cross_rec(std::string& key, std::size_t n) {
    const int len = static_cast<int>(key.size());
    int a = 0;
    while (a < len && key[a] == 0) ++a;
    if (a == len) return S(1);
    auto it = cross_memo_.find(key);
    if (it != cross_memo_.end()) return it->second;
    const int fa = a / nf_, ia = a % nf_;
    S total;
    --key[a];
    for (int b = a + 1; b < len; ++b) {
      const int c = static_cast<unsigned char>(key[b]);
      if (c == 0) continue;
      const int fb = b / nf_, ib = b % nf_;
      if (fb == fa) continue;
      // b is at a higher position than a.
      const S& w = omega_.cut().at(ib, ia);
      if (is_zero(w)) continue;
      --key[b];
      total += mul_int(w * cross_rec(key, n), c);
      ++key[b];
    }
    ++key[a];
    cross_memo_.emplace(key, total);
    return total;
  }

  FeynmanMeasure<S> omega_;
  CausalSetPtr cs_;
  int nf_;
  std::vector<std::map<Multiset, S>> fk_;
  std::map<Multiset, std::vector<Split>> split_memo_;
  std::map<std::vector<Multiset>, S> word_memo_;
  std::unordered_map<std::string, S> cross_memo_;
  std::unique_ptr<BijectionSum<S>> bij_;
};

template <class S, class T>
T omega_tensor(const FeynmanMeasure<S>& omega, const TensorWord<T>& w) {
  WordEvaluator<S> ev(omega);
  return ev.eval(w);
}

}  // namespace uvqft
