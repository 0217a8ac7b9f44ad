#pragma once

// Text syntax for scalars, symmetric-algebra elements and words.
//
//   scalar : 3, 1/2, 0.25, 3/4i, i, lam, eps, with + - * / ^ and parentheses;
//            a digit literal a/b is one token and a trailing i makes it imaginary
//   vertex : phi[x]^3, (phi^2*psi)[x], dens[x]
//   element: sums of products of scalars and vertices, exp(...), (...)^n
//   word   : [A_n, ..., A_1], position 1 rightmost
//
// Everything parses into Laurent-valued elements and is lowered afterwards.

#include <uvqft/regulator_laurent.hpp>
#include <uvqft/tensor_word.hpp>

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace uvqft {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

using LaurentElement = SymElement<RegulatorLaurent>;

class ExpressionParser {
 public:
  ExpressionParser(const CausalSet& cs, RingPtr ring, Truncation tr = {}) : cs_(cs), ring_(std::move(ring)), tr_(tr) {}

  LaurentElement element(const std::string& text) {
    src_ = text;
    pos_ = 0;
    LaurentElement e = sum();
    skip();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

  RegulatorLaurent scalar(const std::string& text) {
    const LaurentElement e = element(text);
    for (const auto& kv : e.terms())
      if (!kv.first.empty()) throw ParseError("expected a scalar, found fields", 0);
    return e.counit();
  }

  TensorWord<RegulatorLaurent> word(const std::string& text) {
    std::size_t a = text.find_first_not_of(" \t\n");
    std::size_t b = text.find_last_not_of(" \t\n");
    if (a == std::string::npos || text[a] != '[' || text[b] != ']') throw ParseError("a word is written [A, ..., B]", 0);
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (std::size_t k = a + 1; k < b; ++k) {
      const char c = text[k];
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') --depth;
      if (c == ',' && depth == 0) {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);
    std::vector<LaurentElement> written;
    for (const auto& p : parts) written.push_back(element(p));
    return TensorWord<RegulatorLaurent>::written(std::move(written));
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool peek(char c) {
    skip();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  std::string ident() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
    if (start == pos_ || std::isdigit(static_cast<unsigned char>(src_[start]))) fail("expected a name");
    return src_.substr(start, pos_ - start);
  }

  int integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return std::stoi(src_.substr(start, pos_ - start));
  }

  LaurentElement constant(const RegulatorLaurent& c) const {
    LaurentElement e(tr_);
    e.add(Multiset{}, c);
    return e;
  }

  LaurentElement sum() {
    LaurentElement acc = product();
    for (;;) {
      if (accept('+'))
        acc += product();
      else if (accept('-'))
        acc -= product();
      else
        return acc;
    }
  }

  LaurentElement product() {
    LaurentElement acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        const LaurentElement d = unary();
        if (d.terms().size() != 1 || !d.terms().begin()->first.empty()) fail("can only divide by scalars");
        const RegulatorLaurent inv = RegulatorLaurent(1) / d.counit();
        acc = acc.map_coefficients([&](const Multiset&, const RegulatorLaurent& c) { return c * inv; });
      } else {
        return acc;
      }
    }
  }

  LaurentElement unary() {
    if (accept('-')) return constant(RegulatorLaurent(-1)) * unary();
    if (accept('+')) return unary();
    return power();
  }

  LaurentElement power() {
    LaurentElement base = atom();
    if (accept('^')) {
      const bool neg = accept('-');
      const int n = integer();
      if (neg) {
        if (base.terms().size() != 1 || !base.terms().begin()->first.empty()) fail("negative powers need a scalar");
        RegulatorLaurent b = RegulatorLaurent(1) / base.counit(), r(1);
        for (int k = 0; k < n; ++k) r *= b;
        return constant(r);
      }
      return sym_power(base, n);
    }
    return base;
  }

  static LaurentElement sym_power(const LaurentElement& a, int n) {
    LaurentElement r = LaurentElement::one(a.truncation());
    for (int k = 0; k < n; ++k) r = r * a;
    return r;
  }

  LaurentElement number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    std::string digits = src_.substr(start, pos_ - start);
    Rational q(digits);
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      const std::size_t fs = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      const std::string frac = src_.substr(fs, pos_ - fs);
      if (!frac.empty()) {
        mpz_class den = 1;
        for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
        q += Rational(mpz_class(frac), den);
        q.canonicalize();
      }
    }
    auto digit_at = [&](std::size_t k) { return k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k])); };
    if (pos_ < src_.size() && src_[pos_] == '/' && digit_at(pos_ + 1)) {
      ++pos_;
      const std::size_t ds = pos_;
      while (digit_at(pos_)) ++pos_;
      const mpz_class den(src_.substr(ds, pos_ - ds));
      if (den == 0) fail("division by zero");
      q /= Rational(den);
      q.canonicalize();
    }
    const bool imag = pos_ < src_.size() && src_[pos_] == 'i' &&
                      !(pos_ + 1 < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_ + 1])) || src_[pos_ + 1] == '_'));
    if (imag) {
      ++pos_;
      return constant(RegulatorLaurent(ExactComplex(Rational(0), q)));
    }
    return constant(RegulatorLaurent(ExactComplex(q)));
  }

  // (phi^2*psi)[x] starting after '('; restores the position and returns nullopt otherwise.
  std::optional<LaurentElement> species_group() {
    const std::size_t save = pos_;
    std::vector<std::pair<std::string, int>> factors;
    try {
      do {
        std::string s = ident();
        int k = 1;
        if (accept('^')) k = integer();
        factors.emplace_back(s, k);
      } while (accept('*'));
      expect(')');
      if (!peek('[')) throw ParseError("", pos_);
    } catch (const ParseError&) {
      pos_ = save;
      return std::nullopt;
    }
    const PointId p = point_ref();
    std::vector<int> e(kMaxSpecies, 0);
    for (const auto& [s, k] : factors) {
      const int idx = cs_.species_index(p, s);
      if (idx < 0) fail("no species '" + s + "' at " + cs_.name(p));
      e[idx] += k;
    }
    LaurentElement v(tr_);
    v.add(Multiset{make_vertex(p, e)}, RegulatorLaurent(1));
    return v;
  }

  PointId point_ref() {
    expect('[');
    const std::string name = ident();
    expect(']');
    if (!cs_.has_point(name)) fail("unknown point '" + name + "'");
    return cs_.point(name);
  }

  LaurentElement atom() {
    skip();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (c == '(') {
      ++pos_;
      if (auto g = species_group()) return *g;
      LaurentElement e = sum();
      expect(')');
      return e;
    }
    const std::string name = ident();
    if (peek('[')) {
      const PointId p = point_ref();
      LaurentElement v(tr_);
      if (name == "dens") {
        v.add(Multiset{density(p)}, RegulatorLaurent(1));
        return v;
      }
      const int idx = cs_.species_index(p, name);
      if (idx < 0) fail("no species '" + name + "' at " + cs_.name(p));
      v.add(Multiset{field_power(p, idx, 1)}, RegulatorLaurent(1));
      // phi[x]^k is one vertex with exponent k, not a product of k vertices.
      if (accept('^')) {
        const int k = integer();
        LaurentElement w(tr_);
        if (k == 0)
          w.add(Multiset{density(p)}, RegulatorLaurent(1));
        else
          w.add(Multiset{field_power(p, idx, k)}, RegulatorLaurent(1));
        return w;
      }
      return v;
    }
    if (name == "exp") {
      expect('(');
      LaurentElement e = sum();
      expect(')');
      if (!has_nilpotent_coefficients(e)) fail("exp needs nilpotent coefficients");
      return hopf_exp(e);
    }
    if (name == "i") return constant(RegulatorLaurent(ExactComplex::i()));
    if (name == "eps") return constant(RegulatorLaurent::eps_power(1));
    if (ring_ && ring_->index_of(name) >= 0) return constant(RegulatorLaurent(CouplingSeries::variable(ring_, name)));
    fail("unknown name '" + name + "'");
  }

  const CausalSet& cs_;
  RingPtr ring_;
  Truncation tr_;
  std::string src_;
  std::size_t pos_ = 0;
};

// Lowering along the scalar tower.

inline std::optional<CouplingSeries> lower_to_series(const RegulatorLaurent& x) {
  if (x.is_zero()) return CouplingSeries();
  for (const auto& kv : x.coefficients())
    if (kv.first != 0) return std::nullopt;
  return x.coefficient(0);
}

inline std::optional<ExactComplex> lower_to_exact(const CouplingSeries& x) {
  for (const auto& kv : x.terms())
    for (int e : kv.first)
      if (e != 0) return std::nullopt;
  return x.constant_term();
}

inline std::optional<ExactComplex> lower_to_exact(const RegulatorLaurent& x) {
  auto s = lower_to_series(x);
  if (!s) return std::nullopt;
  return lower_to_exact(*s);
}

template <class S>
std::optional<S> lower_scalar(const RegulatorLaurent& x) {
  if constexpr (std::is_same_v<S, RegulatorLaurent>)
    return x;
  else if constexpr (std::is_same_v<S, CouplingSeries>)
    return lower_to_series(x);
  else
    return lower_to_exact(x);
}

template <class S>
std::optional<SymElement<S>> lower_element(const LaurentElement& a) {
  SymElement<S> r(a.truncation());
  for (const auto& [m, c] : a.terms()) {
    auto v = lower_scalar<S>(c);
    if (!v) return std::nullopt;
    r.add(m, *v);
  }
  return r;
}

template <class S>
std::optional<TensorWord<S>> lower_word(const TensorWord<RegulatorLaurent>& w) {
  TensorWord<S> r;
  for (const auto& f : w.factors) {
    auto v = lower_element<S>(f);
    if (!v) return std::nullopt;
    r.factors.push_back(std::move(*v));
  }
  return r;
}

}  // namespace uvqft
