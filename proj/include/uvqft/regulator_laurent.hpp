#pragma once

// Laurent series in a single regulator eps with coupling-series coefficients.

#include <uvqft/coupling_series.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace uvqft {

class RegulatorLaurent {
 public:
  RegulatorLaurent() = default;
  RegulatorLaurent(const CouplingSeries& s) {  // NOLINT(google-explicit-constructor)
    if (!s.is_zero()) coeffs_[0] = s;
  }
  RegulatorLaurent(const ExactComplex& c) : RegulatorLaurent(CouplingSeries(c)) {}  // NOLINT
  RegulatorLaurent(long c) : RegulatorLaurent(CouplingSeries(c)) {}                  // NOLINT
  RegulatorLaurent(int c) : RegulatorLaurent(CouplingSeries(c)) {}                   // NOLINT

  static RegulatorLaurent eps_power(int k, const CouplingSeries& c = CouplingSeries(1)) {
    RegulatorLaurent r;
    if (!c.is_zero()) r.coeffs_[k] = c;
    return r;
  }

  /// Optional upper bound: coefficients of eps^k for k > max_order are unknown and dropped.
  /// nullopt means the series is exact (a Laurent polynomial).
  const std::optional<int>& max_order() const { return max_order_; }
  RegulatorLaurent& truncate_above(int k) {
    max_order_ = max_order_ ? std::min(*max_order_, k) : k;
    for (auto it = coeffs_.upper_bound(*max_order_); it != coeffs_.end();) it = coeffs_.erase(it);
    return *this;
  }

  const std::map<int, CouplingSeries>& coefficients() const { return coeffs_; }
  CouplingSeries coefficient(int k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? CouplingSeries() : it->second;
  }

  bool is_zero() const { return coeffs_.empty(); }
  int valuation() const { return coeffs_.empty() ? std::numeric_limits<int>::max() : coeffs_.begin()->first; }
  int pole_order() const { return coeffs_.empty() ? 0 : std::max(0, -coeffs_.begin()->first); }
  bool is_pole_free() const { return coeffs_.empty() || coeffs_.begin()->first >= 0; }

  RegulatorLaurent principal_part() const {
    RegulatorLaurent r;
    for (const auto& [k, c] : coeffs_)
      if (k < 0) r.coeffs_.emplace(k, c);
    return r;
  }
  RegulatorLaurent finite_part() const {
    RegulatorLaurent r;
    r.max_order_ = max_order_;
    for (const auto& [k, c] : coeffs_)
      if (k >= 0) r.coeffs_.emplace(k, c);
    return r;
  }

  RegulatorLaurent conj() const {
    RegulatorLaurent r;
    r.max_order_ = max_order_;
    for (const auto& [k, c] : coeffs_) r.coeffs_.emplace(k, c.conj());
    return r;
  }

  RegulatorLaurent& operator+=(const RegulatorLaurent& o) {
    max_order_ = min_opt(max_order_, o.max_order_);
    for (const auto& [k, c] : o.coeffs_) accumulate(k, c);
    clip();
    return *this;
  }
  RegulatorLaurent& operator-=(const RegulatorLaurent& o) {
    max_order_ = min_opt(max_order_, o.max_order_);
    for (const auto& [k, c] : o.coeffs_) accumulate(k, -c);
    clip();
    return *this;
  }
  friend RegulatorLaurent operator+(RegulatorLaurent a, const RegulatorLaurent& b) { return a += b; }
  friend RegulatorLaurent operator-(RegulatorLaurent a, const RegulatorLaurent& b) { return a -= b; }
  friend RegulatorLaurent operator-(const RegulatorLaurent& a) {
    RegulatorLaurent r = a;
    for (auto& kv : r.coeffs_) kv.second = -kv.second;
    return r;
  }

  friend RegulatorLaurent operator*(const RegulatorLaurent& a, const RegulatorLaurent& b) {
    RegulatorLaurent r;
    // Known precision of a product: min(prec_a + val_b, prec_b + val_a).
    std::optional<int> pa, pb;
    if (a.max_order_ && !b.coeffs_.empty()) pa = *a.max_order_ + b.valuation();
    if (b.max_order_ && !a.coeffs_.empty()) pb = *b.max_order_ + a.valuation();
    r.max_order_ = min_opt(pa, pb);
    if (a.coeffs_.empty() || b.coeffs_.empty()) {
      r.max_order_ = std::nullopt;
      return r;
    }
    for (const auto& [ka, ca] : a.coeffs_)
      for (const auto& [kb, cb] : b.coeffs_) {
        if (r.max_order_ && ka + kb > *r.max_order_) continue;
        r.accumulate(ka + kb, ca * cb);
      }
    return r;
  }
  RegulatorLaurent& operator*=(const RegulatorLaurent& o) { return *this = *this * o; }
  RegulatorLaurent& operator*=(const ExactComplex& c) {
    if (c.is_zero()) {
      coeffs_.clear();
      return *this;
    }
    for (auto& kv : coeffs_) kv.second *= c;
    return *this;
  }

  /// Division is supported only by series with an invertible leading coefficient
  /// times a power of eps; the quotient of exact polynomials is generally not exact,
  /// so it is only allowed when the divisor is a monomial in eps.
  friend RegulatorLaurent operator/(const RegulatorLaurent& a, const RegulatorLaurent& b) {
    if (b.coeffs_.size() != 1)
      throw std::domain_error("Laurent division only supported by eps-monomials");
    const auto& [k, c] = *b.coeffs_.begin();
    CouplingSeries inv = c.inverse();
    RegulatorLaurent r;
    r.max_order_ = a.max_order_ ? std::optional<int>(*a.max_order_ - k) : std::nullopt;
    for (const auto& [ka, ca] : a.coeffs_) r.accumulate(ka - k, ca * inv);
    return r;
  }
  RegulatorLaurent& operator/=(const RegulatorLaurent& o) { return *this = *this / o; }

  friend bool operator==(const RegulatorLaurent& a, const RegulatorLaurent& b) {
    RegulatorLaurent d = a;
    d -= b;
    return d.is_zero();
  }

  std::string str() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : coeffs_) {
      if (!out.empty()) out += " + ";
      std::string s = c.str();
      if (k == 0) {
        out += "(" + s + ")";
      } else {
        out += "(" + s + ")*eps";
        if (k != 1) out += "^" + std::to_string(k);
      }
    }
    if (coeffs_.size() == 1 && coeffs_.begin()->first == 0) return coeffs_.begin()->second.str();
    return out;
  }

 private:
  static std::optional<int> min_opt(std::optional<int> a, std::optional<int> b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
  }

  void clip() {
    if (!max_order_) return;
    for (auto it = coeffs_.upper_bound(*max_order_); it != coeffs_.end();) it = coeffs_.erase(it);
  }

  void accumulate(int k, const CouplingSeries& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs_.emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  std::map<int, CouplingSeries> coeffs_;
  std::optional<int> max_order_;
};

inline bool is_zero(const RegulatorLaurent& a) { return a.is_zero(); }
inline RegulatorLaurent conj(const RegulatorLaurent& a) { return a.conj(); }
inline std::string to_string(const RegulatorLaurent& a) { return a.str(); }
inline RegulatorLaurent mul_int(RegulatorLaurent a, long k) { return a *= ExactComplex(k); }
inline RegulatorLaurent div_int(RegulatorLaurent a, long k) {
  if (k == 0) throw std::domain_error("division by zero");
  return a *= ExactComplex(Rational(1, k));
}
// Nilpotent means every eps-coefficient lies in the coupling ideal.
inline bool is_nilpotent(const RegulatorLaurent& a) {
  for (const auto& kv : a.coefficients())
    if (!kv.second.constant_term().is_zero()) return false;
  return true;
}
inline ExactComplex constant_term(const RegulatorLaurent& a) {
  for (const auto& [k, c] : a.coefficients())
    if (k != 0 && !c.constant_term().is_zero())
      throw std::domain_error("constant term undefined: eps-dependent coupling-free part");
  return a.coefficient(0).constant_term();
}

/// Split into the principal part (negative powers) and the finite part.
inline std::pair<RegulatorLaurent, RegulatorLaurent> laurent_split(const RegulatorLaurent& a) {
  return {a.principal_part(), a.finite_part()};
}

}  // namespace uvqft
