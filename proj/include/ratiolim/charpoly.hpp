#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ratiolim/exact_complex.hpp"
#include "ratiolim/recurrence.hpp"

namespace ratiolim {

/// Coefficients in ascending order, c_0 first.
using ExactPolynomial = std::vector<ExactComplex>;

/// p(x) = x^n + c_{n-1} x^{n-1} + ... + c_0, built in the recurrence form
/// x^n - b_1 x^{n-1} - ... - b_n, so c_{n-i} = -b_i and c_0 = -b_n != 0.
class MonicPolynomial {
 public:
  static MonicPolynomial from_recurrence(const Recurrence& rec);
  /// Ascending coefficients of a monic polynomial; the trailing 1 is required.
  static MonicPolynomial from_coefficients(std::vector<Complex> ascending);
  static MonicPolynomial from_coefficients(ExactPolynomial ascending);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Ascending coefficients including the leading 1.
  std::span<const Complex> coefficients() const { return coeffs_; }
  Complex coefficient(int j) const { return coeffs_[static_cast<std::size_t>(j)]; }
  bool is_exact() const { return exact_.has_value(); }
  const ExactPolynomial& exact_coefficients() const;

  Complex evaluate(Complex z) const;
  /// p(z) and p'(z) in one Horner pass.
  std::pair<Complex, Complex> evaluate_with_derivative(Complex z) const;
  /// Running error bound for Horner evaluation at z.
  double evaluation_error_bound(Complex z) const;

 private:
  std::vector<Complex> coeffs_;
  std::optional<ExactPolynomial> exact_;
};

struct Root {
  Complex value;
  int multiplicity = 1;
};

struct RootSet {
  /// Distinct roots, non-increasing modulus.
  std::vector<Root> roots;
  /// max |p(lambda)| / (sum |c_j| |lambda|^j) over reported roots.
  double residual_bound = 0.0;
  /// Every cluster member lies within this distance of its reported root.
  double cluster_radius = 0.0;
  int iterations = 0;

  int total_multiplicity() const;
};

struct RootOptions {
  /// Relative residual accepted for a reported root.
  double residual_tol = 1e-10;
  int max_iterations = 1000;
  /// Base cluster radius relative to 1 + max modulus.
  double cluster_scale = 1e-7;
};

/// All roots of `poly` with multiplicities (Aberth-Ehrlich iteration from a
/// circle at the Cauchy bound, then clustering).  Throws Error(no_convergence).
RootSet find_roots(const MonicPolynomial& poly, const RootOptions& opts = {});

struct SquareFreeFactor {
  ExactPolynomial factor;  // monic, ascending
  int multiplicity;
};

/// Square-free decomposition p = prod f_i^i (Yun), exact.
std::vector<SquareFreeFactor> square_free_decomposition(const ExactPolynomial& poly);

/// (factor degree, multiplicity) pairs, sorted by multiplicity descending.
std::vector<std::pair<int, int>> exact_multiplicity_structure(const MonicPolynomial& poly);

/// Number of distinct roots per multiplicity, from either side.
std::vector<std::pair<int, int>> multiplicity_profile(const RootSet& roots);
std::vector<std::pair<int, int>> multiplicity_profile(const std::vector<std::pair<int, int>>& structure);

/// An exact Gaussian-rational root within `approx`'s neighbourhood, if one
/// exists with small denominators.  Verified by exact evaluation.
std::optional<ExactComplex> exact_root_near(const MonicPolynomial& poly, Complex approx);

struct DominanceReport {
  double max_modulus = 0.0;
  std::vector<Root> max_modulus_roots;
  bool is_asymptotically_simple = false;
  std::optional<Complex> lambda0;
  std::optional<int> nu;
  double tie_tolerance = 0.0;
  /// Set when a root just outside the tie band would change the verdict.
  bool near_tie = false;
};

struct DominanceOptions {
  double tie_tol = 1e-9;
  /// Roots within this relative band are re-examined for a near tie.
  double near_tie_tol = 1e-6;
};

DominanceReport classify_dominance(const RootSet& roots, const DominanceOptions& opts = {});

}  // namespace ratiolim
