#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "ratiolim/charpoly.hpp"

using namespace ratiolim;
using namespace testing_helpers;

namespace {

MonicPolynomial exact_poly(std::initializer_list<long> ascending) {
  ExactPolynomial c(ascending.begin(), ascending.end());
  return MonicPolynomial::from_coefficients(c);
}

MonicPolynomial integer_poly(const std::vector<long>& ascending) {
  return MonicPolynomial::from_coefficients(ExactPolynomial(ascending.begin(), ascending.end()));
}

std::vector<std::complex<long double>> expanded(const RootSet& roots) {
  std::vector<std::complex<long double>> all;
  for (const Root& r : roots.roots) {
    for (int i = 0; i < r.multiplicity; ++i) all.emplace_back(r.value.real(), r.value.imag());
  }
  return oracle::expand_roots(all);
}

}  // namespace

TEST(CharPoly, Examples) {
  const auto coeffs = [](const MonicPolynomial& p) {
    return std::vector<ExactComplex>(p.exact_coefficients().begin(), p.exact_coefficients().end());
  };
  EXPECT_EQ(coeffs(MonicPolynomial::from_recurrence(rec({1, 1}))), exact_list({-1, -1, 1}));
  EXPECT_EQ(coeffs(MonicPolynomial::from_recurrence(rec({4, -2, -3}))), exact_list({3, 2, -4, 1}));
  EXPECT_EQ(coeffs(MonicPolynomial::from_recurrence(rec({0, 1}))), exact_list({-1, 0, 1}));
  EXPECT_EQ(MonicPolynomial::from_recurrence(rec({0, 1})).degree(), 2);
}

TEST(FindRoots, Quadratic) {
  const RootSet rs = find_roots(MonicPolynomial::from_recurrence(rec({1, 1})));
  ASSERT_EQ(rs.roots.size(), 2u);
  EXPECT_NEAR(rs.roots[0].value.real(), 1.618033988749895, 1e-15);
  EXPECT_NEAR(rs.roots[1].value.real(), -0.6180339887498949, 1e-15);
  EXPECT_EQ(rs.roots[0].value.imag(), 0.0);
  EXPECT_EQ(rs.roots[0].multiplicity, 1);
  EXPECT_EQ(rs.roots[1].multiplicity, 1);
}

TEST(FindRoots, TribonacciAgainstBisectionOracle) {
  const long double oracle_root = oracle::positive_root({1, 1, 1});
  EXPECT_NEAR(static_cast<double>(oracle_root), 1.8392867552141612, 1e-15);
  const RootSet rs = find_roots(MonicPolynomial::from_recurrence(rec({1, 1, 1})));
  EXPECT_NEAR(rs.roots[0].value.real(), static_cast<double>(oracle_root), 1e-15);
}

TEST(FindRoots, DoubleRoot) {
  const RootSet rs = find_roots(exact_poly({1, -2, 1}));
  ASSERT_EQ(rs.roots.size(), 1u);
  EXPECT_EQ(rs.roots[0].multiplicity, 2);
  EXPECT_NEAR(std::abs(rs.roots[0].value - Complex(1.0)), 0.0, 1e-12);
}

TEST(FindRoots, HighMultiplicityClusters) {
  // (x - 2)^5 (x + 1)^2
  const auto c = oracle::expand_integer_roots({2, 2, 2, 2, 2, -1, -1});
  const RootSet rs = find_roots(integer_poly(c));
  ASSERT_EQ(rs.roots.size(), 2u);
  EXPECT_EQ(rs.roots[0].multiplicity, 5);
  EXPECT_EQ(rs.roots[1].multiplicity, 2);
  EXPECT_NEAR(rs.roots[0].value.real(), 2.0, 1e-9);
}

TEST(FindRoots, ComplexCoefficients) {
  // (x - i)(x - 2 + i) = x^2 - 2x + 1 - 2i ... built from the root oracle.
  const auto c = oracle::expand_roots({{0.0L, 1.0L}, {2.0L, -1.0L}});
  std::vector<Complex> asc;
  for (const auto& z : c) asc.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  const RootSet rs = find_roots(MonicPolynomial::from_coefficients(asc));
  ASSERT_EQ(rs.roots.size(), 2u);
  EXPECT_NEAR(std::abs(rs.roots[0].value - Complex(2, -1)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(rs.roots[1].value - Complex(0, 1)), 0.0, 1e-12);
}

TEST(SquareFree, Examples) {
  using Profile = std::vector<std::pair<int, int>>;
  EXPECT_EQ(exact_multiplicity_structure(exact_poly({1, -2, 1})), (Profile{{1, 2}}));
  EXPECT_EQ(exact_multiplicity_structure(exact_poly({-1, -1, 1})), (Profile{{2, 1}}));
  // (x - 1)^3 (x + 1), checked by expansion first.
  EXPECT_EQ(oracle::expand_integer_roots({1, 1, 1, -1}), (std::vector<long>{-1, 2, 0, -2, 1}));
  EXPECT_EQ(exact_multiplicity_structure(exact_poly({-1, 2, 0, -2, 1})), (Profile{{1, 3}, {1, 1}}));
}

TEST(SquareFree, GaussianCoefficients) {
  // (x - i)^2 (x - 1)
  ExactPolynomial c{ExactComplex(1)};
  for (const ExactComplex& r : {ExactComplex(0, 1), ExactComplex(0, 1), ExactComplex(1)}) {
    ExactPolynomial next(c.size() + 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = next;
  }
  using Profile = std::vector<std::pair<int, int>>;
  EXPECT_EQ(exact_multiplicity_structure(MonicPolynomial::from_coefficients(c)), (Profile{{1, 2}, {1, 1}}));
}

TEST(Dominance, Examples) {
  const DominanceReport fib = classify_dominance(find_roots(MonicPolynomial::from_recurrence(rec({1, 1}))));
  EXPECT_TRUE(fib.is_asymptotically_simple);
  EXPECT_NEAR(fib.lambda0->real(), 1.6180339887, 1e-10);
  EXPECT_EQ(fib.nu, 1);

  const DominanceReport pm = classify_dominance(find_roots(MonicPolynomial::from_recurrence(rec({0, 1}))));
  EXPECT_FALSE(pm.is_asymptotically_simple);
  EXPECT_EQ(pm.max_modulus_roots.size(), 2u);
  EXPECT_FALSE(pm.lambda0.has_value());

  const DominanceReport deg = classify_dominance(find_roots(MonicPolynomial::from_recurrence(rec({4, -2, -3}))));
  EXPECT_TRUE(deg.is_asymptotically_simple);
  EXPECT_NEAR(deg.lambda0->real(), 3.0, 1e-12);
  EXPECT_EQ(deg.nu, 1);
}

TEST(Dominance, HigherMultiplicityWinsATie) {
  // (x - 2)^2 (x + 2): two max-modulus roots, only one of maximal multiplicity.
  const DominanceReport d = classify_dominance(find_roots(integer_poly(oracle::expand_integer_roots({2, 2, -2}))));
  EXPECT_TRUE(d.is_asymptotically_simple);
  EXPECT_EQ(d.nu, 2);
  EXPECT_NEAR(d.lambda0->real(), 2.0, 1e-7);
}

TEST(Dominance, NearTieIsNotSimple) {
  // Moduli 2 and 2(1 + 1e-8): distinct at tie_tol 1e-9, tied at 1e-6.
  const auto c = oracle::expand_roots({{2.0L, 0.0L}, {-2.00000002L, 0.0L}});
  std::vector<Complex> asc;
  for (const auto& z : c) asc.emplace_back(static_cast<double>(z.real()), 0.0);
  const DominanceReport d = classify_dominance(find_roots(MonicPolynomial::from_coefficients(asc)));
  EXPECT_TRUE(d.near_tie);
  EXPECT_FALSE(d.is_asymptotically_simple);
}

TEST(ExactRootNear, RecoversRationalRoot) {
  const MonicPolynomial p = MonicPolynomial::from_recurrence(rec({4, -2, -3}));
  EXPECT_EQ(exact_root_near(p, Complex(3.0000000000001, 0)), ExactComplex(3));
  EXPECT_FALSE(exact_root_near(p, Complex(1.618033988749895, 0)).has_value());
}

// ---- properties --------------------------------------------------------------------

TEST(FindRootsProperty, ReconstructionConservationConjugatesProduct) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = static_cast<int>(oracle::uniform(rng, 2, 8));
    std::vector<long> b;
    for (int i = 0; i < n; ++i) b.push_back(oracle::uniform(rng, -5, 5));
    if (b.back() == 0) b.back() = oracle::uniform(rng, 0, 1) ? 5 : -5;
    const Recurrence r = Recurrence::create(std::vector<ExactComplex>(b.begin(), b.end()));
    const MonicPolynomial p = MonicPolynomial::from_recurrence(r);
    const RootSet rs = find_roots(p);

    ASSERT_EQ(rs.total_multiplicity(), n) << "trial " << trial;
    const auto rebuilt = expanded(rs);
    for (int j = 0; j <= n; ++j) {
      const Complex c = p.coefficient(j);
      const std::complex<long double> got = rebuilt[static_cast<std::size_t>(j)];
      const double err = std::abs(Complex(static_cast<double>(got.real()), static_cast<double>(got.imag())) - c);
      ASSERT_LE(err, 1e-8 * (1 + std::abs(c))) << "trial " << trial << " coefficient " << j;
    }

    for (std::size_t i = 1; i < rs.roots.size(); ++i) {
      ASSERT_GE(std::abs(rs.roots[i - 1].value) + 1e-12, std::abs(rs.roots[i].value));
    }

    std::complex<long double> product = 1.0L;
    for (const Root& root : rs.roots) {
      ASSERT_GT(std::abs(root.value), 0.0);
      // Conjugate closure.
      const bool has_conj = std::any_of(rs.roots.begin(), rs.roots.end(), [&](const Root& other) {
        return other.multiplicity == root.multiplicity &&
               std::abs(other.value - std::conj(root.value)) <= std::max(rs.cluster_radius, 1e-9);
      });
      ASSERT_TRUE(has_conj) << "trial " << trial;
      for (int m = 0; m < root.multiplicity; ++m) product *= std::complex<long double>(root.value.real(), root.value.imag());
    }
    ASSERT_NEAR(static_cast<double>(std::abs(product)), std::abs(static_cast<double>(b.back())),
                1e-6 * std::abs(static_cast<double>(b.back())));
  }
}

TEST(FindRootsProperty, NumericMultiplicityMatchesExact) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 300; ++trial) {
    const int degree = static_cast<int>(oracle::uniform(rng, 2, 6));
    std::vector<long> roots;
    for (int i = 0; i < degree; ++i) {
      long r = oracle::uniform(rng, -4, 4);
      if (r == 0) r = 1;
      // Encourage repeats.
      if (!roots.empty() && oracle::uniform(rng, 0, 2) == 0) r = roots.back();
      roots.push_back(r);
    }
    const MonicPolynomial p = integer_poly(oracle::expand_integer_roots(roots));
    const auto numeric = multiplicity_profile(find_roots(p));
    const auto exact = multiplicity_profile(exact_multiplicity_structure(p));
    ASSERT_EQ(numeric, exact) << "trial " << trial;

    std::map<long, int> counts;
    for (long r : roots) ++counts[r];
    std::map<int, int> expected;
    for (const auto& [root, m] : counts) ++expected[m];
    std::vector<std::pair<int, int>> expected_profile(expected.rbegin(), expected.rend());
    ASSERT_EQ(exact, expected_profile) << "trial " << trial;
  }
}
