#pragma once

// Words A_n (x) ... (x) A_1 in the tensor algebra over the symmetric algebra.

#include <uvqft/sym_element.hpp>

#include <algorithm>
#include <vector>

namespace uvqft {

template <class T>
struct TensorWord {
  std::vector<SymElement<T>> factors;  // factors[k] sits at position k+1; position 1 is rightmost

  TensorWord() = default;
  explicit TensorWord(std::vector<SymElement<T>> by_position) : factors(std::move(by_position)) {}

  /// Build from the written order A_n, ..., A_1.
  static TensorWord written(std::vector<SymElement<T>> left_to_right) {
    std::reverse(left_to_right.begin(), left_to_right.end());
    return TensorWord(std::move(left_to_right));
  }

  std::size_t length() const { return factors.size(); }
  bool is_even() const { return factors.size() % 2 == 0; }
  const SymElement<T>& at_position(std::size_t p) const { return factors.at(p - 1); }

  SupportSet support() const {
    SupportSet s;
    for (const auto& f : factors)
      for (PointId p : f.support()) s.insert(p);
    return s;
  }

  template <class U>
  TensorWord<U> lifted() const {
    TensorWord<U> w;
    for (const auto& f : factors) w.factors.push_back(f.template lifted<U>());
    return w;
  }
};

/// upper (x) lower: the factors of `lower` take the lowest positions.
template <class T>
TensorWord<T> concat(const TensorWord<T>& upper, const TensorWord<T>& lower) {
  TensorWord<T> w = lower;
  for (const auto& f : upper.factors) w.factors.push_back(f);
  return w;
}

/// (A_n (x) ... (x) A_1)* = A_1* (x) ... (x) A_n*.
template <class T>
TensorWord<T> star(const TensorWord<T>& w) {
  TensorWord<T> r;
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) r.factors.push_back(star(*it));
  return r;
}

template <class T>
TensorWord<T> ones(std::size_t n, Truncation tr = {}) {
  return TensorWord<T>(std::vector<SymElement<T>>(n, SymElement<T>::one(tr)));
}

/// Left-multiplies every factor by g.
template <class T>
TensorWord<T> multiply_factors(const SymElement<T>& g, const TensorWord<T>& w) {
  TensorWord<T> r;
  for (const auto& f : w.factors) r.factors.push_back(g * f);
  return r;
}

template <class T>
std::string to_string(const CausalSet& cs, const TensorWord<T>& w) {
  std::string out = "[";
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
    if (it != w.factors.rbegin()) out += ", ";
    out += to_string(cs, *it);
  }
  return out + "]";
}

}  // namespace uvqft
