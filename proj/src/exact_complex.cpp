#include "ratiolim/exact_complex.hpp"

#include <cmath>
#include <numbers>

#include "ratiolim/error.hpp"

namespace ratiolim {

namespace {

struct ScaledReal {
  double mantissa = 0.0;
  long exponent2 = 0;
};

ScaledReal scale_rational(const Rational& q) {
  if (sgn(q) == 0) return {};
  long en = 0;
  long ed = 0;
  const double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  const double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return {mn / md, en - ed};
}

}  // namespace

double ScaledComplex::log_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(mantissa)) + static_cast<double>(exponent2) * std::numbers::ln2;
}

ExactComplex::ExactComplex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

ExactComplex& ExactComplex::operator+=(const ExactComplex& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

ExactComplex& ExactComplex::operator-=(const ExactComplex& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

ExactComplex& ExactComplex::operator*=(const ExactComplex& rhs) {
  if (is_real() && rhs.is_real()) {
    re_ *= rhs.re_;
    return *this;
  }
  Rational re = re_ * rhs.re_ - im_ * rhs.im_;
  Rational im = re_ * rhs.im_ + im_ * rhs.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ExactComplex& ExactComplex::operator/=(const ExactComplex& rhs) {
  if (rhs.is_zero()) throw Error(ErrorCode::division_by_zero, "exact division by zero");
  if (rhs.is_real()) {
    re_ /= rhs.re_;
    im_ /= rhs.re_;
    return *this;
  }
  const Rational den = rhs.norm();
  Rational re = (re_ * rhs.re_ + im_ * rhs.im_) / den;
  Rational im = (im_ * rhs.re_ - re_ * rhs.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Complex ExactComplex::to_complex() const { return {re_.get_d(), im_.get_d()}; }

ScaledComplex ExactComplex::to_scaled() const {
  const ScaledReal r = scale_rational(re_);
  const ScaledReal i = scale_rational(im_);
  if (r.mantissa == 0.0 && i.mantissa == 0.0) return {};
  long e = 0;
  if (r.mantissa == 0.0) {
    e = i.exponent2;
  } else if (i.mantissa == 0.0) {
    e = r.exponent2;
  } else {
    e = std::max(r.exponent2, i.exponent2);
  }
  const auto shift = [e](const ScaledReal& s) {
    return s.mantissa == 0.0 ? 0.0 : std::ldexp(s.mantissa, static_cast<int>(s.exponent2 - e));
  };
  return {Complex{shift(r), shift(i)}, e};
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const ExactComplex& z) {
  if (z.is_real()) return to_string(z.re());
  std::string im = to_string(z.im()) + "i";
  if (sgn(z.re()) == 0) return im;
  std::string out = to_string(z.re());
  if (sgn(z.im()) > 0) out += '+';
  return out + im;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::invalid_argument, "non-finite value has no exact form");
  Rational q(x);
  q.canonicalize();
  return q;
}

ExactComplex exact_from_complex(Complex z) {
  return {rational_from_double(z.real()), rational_from_double(z.imag())};
}

Complex scaled_ratio(const ScaledComplex& a, const ScaledComplex& b) {
  if (b.is_zero()) throw Error(ErrorCode::division_by_zero, "ratio with zero denominator");
  if (a.is_zero()) return {};
  const Complex q = a.mantissa / b.mantissa;
  const long shift = a.exponent2 - b.exponent2;
  const int s = static_cast<int>(std::clamp(shift, -4000L, 4000L));
  return {std::ldexp(q.real(), s), std::ldexp(q.imag(), s)};
}

}  // namespace ratiolim
