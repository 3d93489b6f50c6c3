#pragma once

// Independent reference implementations used to derive expected values.
// Nothing here calls into the library under test.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace oracle {

struct GaussQ {
  mpq_class re{0};
  mpq_class im{0};

  friend GaussQ operator+(const GaussQ& a, const GaussQ& b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussQ operator*(const GaussQ& a, const GaussQ& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const GaussQ& a, const GaussQ& b) { return a.re == b.re && a.im == b.im; }
  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

// Terms F_{-n+1} .. F_last by direct textbook evaluation.
inline std::vector<GaussQ> generate(const std::vector<GaussQ>& b, const std::vector<GaussQ>& a, int last) {
  const std::size_t n = b.size();
  std::vector<GaussQ> f(a);
  for (int k = 1; k <= last; ++k) {
    GaussQ next;
    for (std::size_t j = 1; j <= n; ++j) next = next + b[j - 1] * f[f.size() - j];
    f.push_back(next);
  }
  return f;
}

inline mpz_class fibonacci(int k) {
  mpz_class out;
  mpz_fib_ui(out.get_mpz_t(), static_cast<unsigned long>(k));
  return out;
}

// Largest positive root of x^n - sum b_j x^{n-j} for nonnegative b with at
// least one positive entry, by plain bisection in long double.
inline long double positive_root(const std::vector<long double>& b) {
  const auto f = [&](long double x) {
    long double s = 1.0L;
    long double p = 1.0L;
    for (long double bj : b) {
      p /= x;
      s -= bj * p;
    }
    return s;  // increasing in x for x > 0
  };
  long double lo = 1e-9L;
  long double hi = 1.0L;
  for (long double bj : b) hi += std::fabs(bj);
  for (int i = 0; i < 400; ++i) {
    const long double mid = (lo + hi) / 2;
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

// gcd by trial division over candidate divisors.
inline long naive_gcd(const std::vector<int>& xs) {
  if (xs.empty()) return 0;
  int best = 1;
  const int top = *std::min_element(xs.begin(), xs.end());
  for (int d = 1; d <= top; ++d) {
    bool all = true;
    for (int x : xs) all = all && x % d == 0;
    if (all) best = d;
  }
  return best;
}

// Ascending coefficients of prod (x - r_i).
inline std::vector<std::complex<long double>> expand_roots(const std::vector<std::complex<long double>>& roots) {
  std::vector<std::complex<long double>> c{1.0L};
  for (const auto& r : roots) {
    std::vector<std::complex<long double>> next(c.size() + 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

// Ascending integer coefficients of prod (x - r_i) for integer roots.
inline std::vector<long> expand_integer_roots(const std::vector<long>& roots) {
  std::vector<long> c{1};
  for (long r : roots) {
    std::vector<long> next(c.size() + 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

}  // namespace oracle
