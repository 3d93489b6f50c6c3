#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratiolim/charpoly.hpp"
#include "ratiolim/recurrence.hpp"

namespace ratiolim {

enum class RatioStatus { converged, not_converged, no_nonzero_tail };

struct RatioOptions {
  double tol = 1e-10;
  int max_k = 10000;
  int stability_window = 8;
};

/// Measured limit of F_{k+1} / F_k.  Ratios are only formed where both terms
/// are nonzero; convergence needs max(`stability_window`, n) consecutive steps with
/// |r_{k+1} - r_k| <= tol * max(1, |r_k|).
struct RatioEstimate {
  std::optional<Complex> value;
  RatioStatus status = RatioStatus::not_converged;
  /// Index k of the final ratio F_{k+1}/F_k when converged.
  std::optional<int> k_converged;
  double last_residual = std::numeric_limits<double>::infinity();
  std::vector<int> skipped_zero_indices;
  std::optional<int> empirical_k0;
  Mode mode = Mode::floating;
  /// Last generated index.
  int horizon = 0;
};

RatioEstimate estimate_ratio_limit(const Recurrence& rec, const InitialConditions& init,
                                   const RatioOptions& opts = {}, Mode mode = Mode::floating);

/// F_{k+1}/F_k at a single index, exact or float generation.  Absent if F_k is zero.
std::optional<Complex> ratio_at(const Recurrence& rec, const InitialConditions& init, int k, Mode mode);

/// F^a_k rebuilt from the fundamental sequence (initial conditions 0,...,0,1):
///   a_0 F0_k + sum_{i=1}^{n-1} a_{-i} sum_{j=1}^{n-i} b_{i+j} F0_{k-j}.
/// Requires k >= 1.
ExactComplex decompose_via_fundamental_exact(const Recurrence& rec, const InitialConditions& init, int k);
Complex decompose_via_fundamental(const Recurrence& rec, const InitialConditions& init, int k);

inline constexpr double kDefaultDegeneracyTol = 1e-9;

/// N and D of the closed-form ratio limit at phi0:
///   D = a_0 + sum_i a_{-i} sum_j b_{i+j} phi0^{-j},  N = phi0 * D (term by term).
/// value = N / D unless D is degenerate relative to its term scale.
struct LimitExpression {
  Complex numerator;
  Complex denominator;
  std::optional<Complex> value;
};

LimitExpression limit_expression(const Recurrence& rec, const InitialConditions& init, Complex phi0,
                                 double degeneracy_tol = kDefaultDegeneracyTol);

struct DegeneracyReport {
  Complex denominator;
  Complex numerator;
  /// |D| / (|a_0| + sum_i |a_{-i}| sum_j |b_{i+j}| |lambda0|^{-j})
  double relative_magnitude = 0.0;
  bool degenerate = false;
  /// D was evaluated exactly (exact inputs and an exact lambda0).
  bool exact = false;
  std::optional<ExactComplex> exact_denominator;
};

/// When `exact_lambda0` is given and the inputs are exact, D is computed in
/// exact arithmetic and degenerate means D == 0.
DegeneracyReport degeneracy_check(const Recurrence& rec, const InitialConditions& init, Complex lambda0,
                                  double tol = kDefaultDegeneracyTol,
                                  const std::optional<ExactComplex>& exact_lambda0 = std::nullopt);

enum class Trend { vanishing, stabilizing, inconclusive };

/// Samples of |F_k / (k^(nu-1) lambda0^k)|, computed in log space.
struct Condition11Report {
  std::vector<std::pair<int, double>> samples;
  Trend trend = Trend::inconclusive;
  double final_magnitude = 0.0;
  Mode mode = Mode::floating;
};

/// 1, 2, 4, ..., plus the horizon itself.
std::vector<int> default_condition11_samples(int horizon);

Condition11Report condition_11_estimate(const Recurrence& rec, const InitialConditions& init, Complex lambda0,
                                        int nu, const std::vector<int>& sample_ks, Mode mode);

/// Trend rules: vanishing if the last sample is <= 1e-6 of the first;
/// stabilizing if the last two samples agree to 5%; otherwise inconclusive.
Trend classify_trend(const std::vector<std::pair<int, double>>& samples);

std::string to_string(RatioStatus status);
std::string to_string(Trend trend);

}  // namespace ratiolim
