#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <regex>
#include <string>
#include <string_view>

#include "leibniz/errors.hpp"

namespace leibniz {

using Rational = mpq_class;

/// Exact Gaussian rational re + im*i. Both parts are kept in lowest terms
/// with positive denominators, so equality is structural.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(long long v) : re_(static_cast<long>(v)) {}  // NOLINT
  Scalar(const Rational& re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Scalar frac(long num, long den) {
    if (den == 0) throw InputError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return Scalar(q);
  }
  static Scalar i() { return Scalar(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return sgn(im_) == 0 && re_ == 1; }

  Scalar conj() const { return Scalar(re_, -im_); }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  Scalar operator-() const { return Scalar(-re_, -im_); }

  Scalar& operator+=(const Scalar& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    if (is_real() && o.is_real()) {
      re_ *= o.re_;
      return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    if (o.is_real()) {
      re_ /= o.re_;
      if (sgn(im_) != 0) im_ /= o.re_;
      return *this;
    }
    Rational n = o.norm();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Total order (real part first). Used for deterministic containers only;
  /// it is not a field order.
  friend bool canonical_less(const Scalar& a, const Scalar& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

  /// Canonical text form: `a/b`, `a/b+c/di`, `a/b-c/di`, unit denominators
  /// and unit imaginary coefficients omitted (`2`, `-i`, `1/2-i`).
  std::string str() const {
    if (is_real()) return re_.get_str();
    std::string im_abs;
    Rational a = abs(im_);
    if (a != 1) im_abs = a.get_str();
    if (sgn(re_) == 0) return (sgn(im_) < 0 ? "-" : "") + im_abs + "i";
    return re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + im_abs + "i";
  }

  static Scalar parse(std::string_view text) {
    std::string s;
    for (char c : text)
      if (c != ' ') s.push_back(c);
    if (s.empty()) throw InputError("empty scalar literal");
    if (s.back() != 'i') return Scalar(parse_rational(s, text));
    s.pop_back();
    // Split at the last sign that is not the leading one.
    size_t split = std::string::npos;
    for (size_t k = s.size(); k-- > 1;) {
      if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
        split = k;
        break;
      }
    }
    std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
    std::string im_part = split == std::string::npos ? s : s.substr(split);
    Rational re = re_part.empty() ? Rational(0) : parse_rational(re_part, text);
    Rational im;
    if (im_part.empty() || im_part == "+")
      im = 1;
    else if (im_part == "-")
      im = -1;
    else
      im = parse_rational(im_part, text);
    return Scalar(re, im);
  }

 private:
  static Rational parse_rational(const std::string& s, std::string_view whole) {
    static const std::regex kRational(R"([+-]?[0-9]+(/[0-9]+)?)");
    if (!std::regex_match(s, kRational))
      throw InputError("malformed scalar '" + std::string(whole) + "'");
    std::string body = s[0] == '+' ? s.substr(1) : s;
    auto slash = body.find('/');
    if (slash != std::string::npos && mpz_class(body.substr(slash + 1)) == 0)
      throw InputError("zero denominator in '" + std::string(whole) + "'");
    Rational q(body, 10);
    q.canonicalize();
    return q;
  }

  Rational re_{0};
  Rational im_{0};
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.str();
}

}  // namespace leibniz
