#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace ratiolim {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// A complex number m * 2^exponent, used to carry magnitudes far outside the
/// double range (big exact terms, renormalized float terms).
struct ScaledComplex {
  Complex mantissa;
  long exponent2 = 0;

  bool is_zero() const { return mantissa == Complex{}; }
  /// Natural log of the modulus; -inf for zero.
  double log_abs() const;
};

/// Gaussian rational re + im*i with exact arithmetic.
class ExactComplex {
 public:
  ExactComplex() = default;
  ExactComplex(Rational re, Rational im = Rational(0));
  ExactComplex(long re) : ExactComplex(Rational(re)) {}
  ExactComplex(int re) : ExactComplex(Rational(re)) {}

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  ExactComplex conj() const { return {re_, -im_}; }
  /// re^2 + im^2
  Rational norm() const { return re_ * re_ + im_ * im_; }

  ExactComplex& operator+=(const ExactComplex& rhs);
  ExactComplex& operator-=(const ExactComplex& rhs);
  ExactComplex& operator*=(const ExactComplex& rhs);
  /// Throws Error(division_by_zero) when rhs is zero.
  ExactComplex& operator/=(const ExactComplex& rhs);

  friend ExactComplex operator+(ExactComplex lhs, const ExactComplex& rhs) { return lhs += rhs; }
  friend ExactComplex operator-(ExactComplex lhs, const ExactComplex& rhs) { return lhs -= rhs; }
  friend ExactComplex operator*(ExactComplex lhs, const ExactComplex& rhs) { return lhs *= rhs; }
  friend ExactComplex operator/(ExactComplex lhs, const ExactComplex& rhs) { return lhs /= rhs; }
  ExactComplex operator-() const { return {-re_, -im_}; }

  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Nearest double; overflows to inf for huge values, use to_scaled() then.
  Complex to_complex() const;
  ScaledComplex to_scaled() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Canonical literal: "3", "-1/2", "2i", "3/2-1/3i", "1+1i".
std::string to_string(const ExactComplex& z);
std::string to_string(const Rational& q);

/// Exact rational value of a finite double.
Rational rational_from_double(double x);
ExactComplex exact_from_complex(Complex z);

/// (a / b) as a double complex, valid even when a and b are far beyond the
/// double range.  b must be nonzero.
Complex scaled_ratio(const ScaledComplex& a, const ScaledComplex& b);

}  // namespace ratiolim
