#pragma once

// Gaussian rationals: the exact base field of every functional in the engine.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace uvqft {

using Rational = mpq_class;

inline std::string rational_to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

class ExactComplex {
 public:
  ExactComplex() : re_(0), im_(0) {}
  ExactComplex(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  ExactComplex(int v) : re_(v), im_(0) {}   // NOLINT(google-explicit-constructor)
  ExactComplex(Rational re) : re_(std::move(re)), im_(0) { re_.canonicalize(); }  // NOLINT
  ExactComplex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static ExactComplex i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  ExactComplex conj() const { return {re_, -im_}; }

  ExactComplex& operator+=(const ExactComplex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  ExactComplex& operator-=(const ExactComplex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  ExactComplex& operator*=(const ExactComplex& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
      re_ *= o.re_;
      return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  ExactComplex& operator/=(const ExactComplex& o) {
    if (o.is_zero()) throw std::domain_error("ExactComplex: division by zero");
    Rational n = o.re_ * o.re_ + o.im_ * o.im_;
    Rational r = (re_ * o.re_ + im_ * o.im_) / n;
    Rational m = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  ExactComplex& operator*=(long k) {
    re_ *= k;
    im_ *= k;
    return *this;
  }

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator/(ExactComplex a, const ExactComplex& b) { return a /= b; }
  friend ExactComplex operator-(const ExactComplex& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  // Lexicographic (re, im); only used for canonical ordering, not as a field order.
  friend bool lex_less(const ExactComplex& a, const ExactComplex& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

  /// Renders as "a/b", "c/di" or "a/b+c/di"; the imaginary coefficient is always written.
  std::string str() const {
    const bool has_im = sgn(im_) != 0;
    if (!has_im) return rational_to_string(re_);
    std::string out;
    if (sgn(re_) != 0) {
      out = rational_to_string(re_);
      out += sgn(im_) > 0 ? "+" : "-";
      out += rational_to_string(abs(im_));
    } else {
      out = rational_to_string(im_);
    }
    out += "i";
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const ExactComplex& z) { return os << z.str(); }

 private:
  Rational re_;
  Rational im_;
};

inline bool is_zero(const ExactComplex& z) { return z.is_zero(); }
inline ExactComplex conj(const ExactComplex& z) { return z.conj(); }
inline std::string to_string(const ExactComplex& z) { return z.str(); }
inline ExactComplex mul_int(ExactComplex z, long k) { return z *= k; }
inline ExactComplex div_int(const ExactComplex& z, long k) {
  if (k == 0) throw std::domain_error("division by zero");
  return {z.re() / k, z.im() / k};
}
// A field element is nilpotent only when it vanishes.
inline bool is_nilpotent(const ExactComplex& z) { return z.is_zero(); }
inline ExactComplex constant_term(const ExactComplex& z) { return z; }

}  // namespace uvqft
