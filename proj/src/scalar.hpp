#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <string>

#include "errors.hpp"

namespace invconn {

using Rational = boost::multiprecision::cpp_rational;

// A field element that is either an exact Gaussian rational (re + im*i with
// rational parts) or a complex double.  Arithmetic stays exact as long as both
// operands are exact; any floating operand demotes the result.  Exact zero
// tests are decidable only in exact mode; floating comparisons are the
// caller's business (tolerances live at call sites).
class Scalar {
 public:
  Scalar() : exact_(true) {}
  Scalar(int n) : exact_(true), re_(n) {}
  Scalar(long n) : exact_(true), re_(n) {}
  Scalar(const Rational& re) : exact_(true), re_(re) {}
  Scalar(const Rational& re, const Rational& im)
      : exact_(true), re_(re), im_(im) {}

  static Scalar floating(std::complex<double> z) {
    Scalar s;
    s.exact_ = false;
    s.fl_ = z;
    return s;
  }
  static Scalar floating(double re, double im = 0.0) {
    return floating(std::complex<double>(re, im));
  }
  // The exact imaginary unit.
  static Scalar i() { return Scalar(Rational(0), Rational(1)); }

  bool exact() const { return exact_; }
  bool is_zero() const {
    return exact_ ? (re_ == 0 && im_ == 0) : (fl_ == std::complex<double>());
  }
  bool is_real() const { return exact_ ? im_ == 0 : fl_.imag() == 0.0; }

  const Rational& exact_re() const {
    require_exact();
    return re_;
  }
  const Rational& exact_im() const {
    require_exact();
    return im_;
  }

  std::complex<double> approx() const {
    if (!exact_) return fl_;
    return {re_.convert_to<double>(), im_.convert_to<double>()};
  }
  double abs() const { return std::abs(approx()); }

  Scalar conj() const {
    if (exact_) return Scalar(re_, -im_);
    return floating(std::conj(fl_));
  }
  Scalar real_part() const {
    if (exact_) return Scalar(re_);
    return floating(fl_.real());
  }
  Scalar imag_part() const {
    if (exact_) return Scalar(im_);
    return floating(fl_.imag());
  }

  Scalar operator-() const {
    if (exact_) return Scalar(-re_, -im_);
    return floating(-fl_);
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar(a.re_ + b.re_, a.im_ + b.im_);
    return floating(a.approx() + b.approx());
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    return a + (-b);
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_)
      return Scalar(a.re_ * b.re_ - a.im_ * b.im_,
                    a.re_ * b.im_ + a.im_ * b.re_);
    return floating(a.approx() * b.approx());
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) fail(ErrorKind::Input, "scalar division by zero");
    if (a.exact_ && b.exact_) {
      Rational n = b.re_ * b.re_ + b.im_ * b.im_;
      return Scalar((a.re_ * b.re_ + a.im_ * b.im_) / n,
                    (a.im_ * b.re_ - a.re_ * b.im_) / n);
    }
    return floating(a.approx() / b.approx());
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  // Structural equality: exact vs exact compares rationals, floating vs
  // floating compares bit-equal doubles, mixed compares approximations.
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return a.re_ == b.re_ && a.im_ == b.im_;
    return a.approx() == b.approx();
  }

  std::string str() const;

 private:
  void require_exact() const {
    if (!exact_) fail(ErrorKind::Input, "exact value required in float mode");
  }
  bool exact_ = true;
  Rational re_, im_;
  std::complex<double> fl_;
};

// Parses "p/q" or "p"; rejects anything else.
Rational parse_rational(const std::string& text);

}  // namespace invconn
