#pragma once

// Truncated multivariate power series in the coupling constants.

#include <uvqft/exact_complex.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace uvqft {

struct CouplingRing {
  std::vector<std::string> names;
  int order = 0;  // total degree K; products drop anything above it

  int index_of(const std::string& n) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return static_cast<int>(i);
    return -1;
  }

  friend bool operator==(const CouplingRing&, const CouplingRing&) = default;
};

using RingPtr = std::shared_ptr<const CouplingRing>;

inline RingPtr make_ring(std::vector<std::string> names, int order) {
  if (order < 0) throw std::invalid_argument("coupling order must be non-negative");
  return std::make_shared<const CouplingRing>(CouplingRing{std::move(names), order});
}

/// Series with an optional ring. A null ring marks a pure constant that
/// adapts to whatever ring it is combined with.
class CouplingSeries {
 public:
  using Exponents = std::vector<int>;

  CouplingSeries() = default;
  CouplingSeries(const ExactComplex& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_[{}] = c;
  }
  CouplingSeries(long c) : CouplingSeries(ExactComplex(c)) {}  // NOLINT
  CouplingSeries(int c) : CouplingSeries(ExactComplex(c)) {}   // NOLINT

  static CouplingSeries constant(RingPtr ring, const ExactComplex& c) {
    CouplingSeries s;
    s.ring_ = std::move(ring);
    if (!c.is_zero()) s.terms_[Exponents(s.nvars(), 0)] = c;
    return s;
  }

  static CouplingSeries variable(const RingPtr& ring, const std::string& name) {
    const int k = ring->index_of(name);
    if (k < 0) throw std::invalid_argument("unknown coupling '" + name + "'");
    CouplingSeries s;
    s.ring_ = ring;
    Exponents e(ring->names.size(), 0);
    e[k] = 1;
    if (ring->order >= 1) s.terms_[e] = ExactComplex(1);
    return s;
  }

  const RingPtr& ring() const { return ring_; }
  const std::map<Exponents, ExactComplex>& terms() const { return terms_; }
  std::size_t nvars() const { return ring_ ? ring_->names.size() : 0; }

  bool is_zero() const { return terms_.empty(); }

  ExactComplex constant_term() const {
    for (const auto& [e, c] : terms_)
      if (total(e) == 0) return c;
    return {};
  }

  ExactComplex coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? ExactComplex() : it->second;
  }

  // Coefficients of total degree d, summed into a map keyed by exponent tuple.
  std::map<Exponents, ExactComplex> degree_part(int d) const {
    std::map<Exponents, ExactComplex> out;
    for (const auto& [e, c] : terms_)
      if (total(e) == d) out.emplace(e, c);
    return out;
  }

  int max_degree() const {
    int m = -1;
    for (const auto& kv : terms_) m = std::max(m, total(kv.first));
    return m;
  }

  CouplingSeries conj() const {
    CouplingSeries s;
    s.ring_ = ring_;
    for (const auto& [e, c] : terms_) s.terms_.emplace(e, c.conj());
    return s;
  }

  CouplingSeries& operator+=(const CouplingSeries& o) {
    adopt(o.ring_);
    for (const auto& [e, c] : o.terms_) accumulate(pad(e), c);
    return *this;
  }
  CouplingSeries& operator-=(const CouplingSeries& o) {
    adopt(o.ring_);
    for (const auto& [e, c] : o.terms_) accumulate(pad(e), -c);
    return *this;
  }
  CouplingSeries& operator*=(const CouplingSeries& o) {
    *this = *this * o;
    return *this;
  }
  CouplingSeries& operator*=(const ExactComplex& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& kv : terms_) kv.second *= c;
    return *this;
  }

  friend CouplingSeries operator+(CouplingSeries a, const CouplingSeries& b) { return a += b; }
  friend CouplingSeries operator-(CouplingSeries a, const CouplingSeries& b) { return a -= b; }
  friend CouplingSeries operator-(const CouplingSeries& a) {
    CouplingSeries s = a;
    for (auto& kv : s.terms_) kv.second = -kv.second;
    return s;
  }

  friend CouplingSeries operator*(const CouplingSeries& a, const CouplingSeries& b) {
    CouplingSeries out;
    out.ring_ = merge_rings(a.ring_, b.ring_);
    if (a.terms_.empty() || b.terms_.empty()) return out;
    const int K = out.ring_ ? out.ring_->order : 0;
    const bool bounded = static_cast<bool>(out.ring_);
    for (const auto& [ea, ca] : a.terms_) {
      Exponents pa = out.pad(ea);
      const int da = total(pa);
      for (const auto& [eb, cb] : b.terms_) {
        Exponents pb = out.pad(eb);
        if (bounded && da + total(pb) > K) continue;
        for (std::size_t i = 0; i < pa.size(); ++i) pb[i] += pa[i];
        out.accumulate(pb, ca * cb);
      }
    }
    return out;
  }

  friend CouplingSeries operator/(const CouplingSeries& a, const CouplingSeries& b) {
    return a * b.inverse();
  }
  CouplingSeries& operator/=(const CouplingSeries& o) { return *this = *this / o; }

  /// Multiplicative inverse; needs an invertible constant term.
  CouplingSeries inverse() const {
    const ExactComplex c0 = constant_term();
    if (c0.is_zero()) throw std::domain_error("series with zero constant term is not invertible");
    // 1/(c0(1+u)) = (1/c0) Σ (-u)^n ; u nilpotent under truncation.
    CouplingSeries u = *this;
    u *= ExactComplex(1) / c0;
    u -= CouplingSeries::constant(ring_, 1);
    CouplingSeries term = CouplingSeries::constant(ring_, 1);
    CouplingSeries sum = term;
    const int K = ring_ ? ring_->order : 0;
    for (int n = 1; n <= K; ++n) {
      term = term * (-u);
      if (term.is_zero()) break;
      sum += term;
    }
    sum *= ExactComplex(1) / c0;
    return sum;
  }

  friend bool operator==(const CouplingSeries& a, const CouplingSeries& b) {
    if (a.ring_ && b.ring_ && a.ring_ != b.ring_ && *a.ring_ != *b.ring_) return false;
    CouplingSeries d = a;
    d -= b;
    return d.is_zero();
  }

  /// Sum of "coeff*name^e" terms, graded by total degree.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Exponents, ExactComplex>> ordered(terms_.begin(), terms_.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
      const int tx = total(x.first), ty = total(y.first);
      if (tx != ty) return tx < ty;
      return x.first > y.first;
    });
    std::string out;
    bool first = true;
    for (const auto& [e, c] : ordered) {
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += ring_->names[i];
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      std::string coeff;
      bool negative = false;
      if (c.is_real()) {
        negative = sgn(c.re()) < 0;
        coeff = rational_to_string(abs(c.re()));
      } else if (sgn(c.re()) == 0) {
        negative = sgn(c.im()) < 0;
        coeff = rational_to_string(abs(c.im())) + "i";
      } else {
        coeff = "(" + c.str() + ")";
      }
      std::string piece;
      if (mono.empty()) piece = coeff;
      else if (coeff == "1") piece = mono;
      else piece = coeff + "*" + mono;
      if (first) out += negative ? "-" + piece : piece;
      else out += negative ? " - " + piece : " + " + piece;
      first = false;
    }
    return out;
  }

  static int total(const Exponents& e) {
    int t = 0;
    for (int v : e) t += v;
    return t;
  }

 private:
  static RingPtr merge_rings(const RingPtr& a, const RingPtr& b) {
    if (!a) return b;
    if (!b) return a;
    if (a == b || !(*a != *b)) return a;
    throw std::invalid_argument("coupling series over different rings");
  }

  void adopt(const RingPtr& r) {
    RingPtr merged = merge_rings(ring_, r);
    if (merged == ring_) return;
    std::map<Exponents, ExactComplex> moved;
    ring_ = merged;
    for (auto& [e, c] : terms_) moved.emplace(pad(e), c);
    terms_ = std::move(moved);
  }

  Exponents pad(const Exponents& e) const {
    if (e.size() == nvars()) return e;
    Exponents p(nvars(), 0);
    for (std::size_t i = 0; i < e.size() && i < p.size(); ++i) p[i] = e[i];
    return p;
  }

  void accumulate(const Exponents& e, const ExactComplex& c) {
    if (c.is_zero()) return;
    if (ring_ && total(e) > ring_->order) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  RingPtr ring_;
  std::map<Exponents, ExactComplex> terms_;
};

inline bool is_zero(const CouplingSeries& s) { return s.is_zero(); }
inline CouplingSeries conj(const CouplingSeries& s) { return s.conj(); }
inline std::string to_string(const CouplingSeries& s) { return s.str(); }
inline CouplingSeries mul_int(CouplingSeries s, long k) { return s *= ExactComplex(k); }
inline CouplingSeries div_int(CouplingSeries s, long k) {
  if (k == 0) throw std::domain_error("division by zero");
  return s *= ExactComplex(Rational(1, k));
}
inline bool is_nilpotent(const CouplingSeries& s) { return s.constant_term().is_zero(); }
inline ExactComplex constant_term(const CouplingSeries& s) { return s.constant_term(); }

/// exp of a series with vanishing constant term.
inline CouplingSeries series_exp(const CouplingSeries& a) {
  if (!a.constant_term().is_zero())
    throw std::domain_error("series_exp: non-nilpotent exponent (nonzero constant term)");
  CouplingSeries sum = CouplingSeries::constant(a.ring(), 1);
  CouplingSeries term = sum;
  const int K = a.ring() ? a.ring()->order : 0;
  for (int n = 1; n <= K; ++n) {
    term = div_int(term * a, n);
    if (term.is_zero()) break;
    sum += term;
  }
  return sum;
}

/// log of a series with constant term one.
inline CouplingSeries series_log(const CouplingSeries& a) {
  if (!(a.constant_term() == ExactComplex(1)))
    throw std::domain_error("series_log: constant term must be 1");
  CouplingSeries u = a - CouplingSeries::constant(a.ring(), 1);
  CouplingSeries sum = CouplingSeries::constant(a.ring(), 0);
  CouplingSeries power = CouplingSeries::constant(a.ring(), 1);
  const int K = a.ring() ? a.ring()->order : 0;
  for (int n = 1; n <= K; ++n) {
    power = power * u;
    if (power.is_zero()) break;
    CouplingSeries t = div_int(power, n);
    if (n % 2 == 0) sum -= t;
    else sum += t;
  }
  return sum;
}

}  // namespace uvqft
