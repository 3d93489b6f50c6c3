#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ratiolim/exact_complex.hpp"

namespace ratiolim {

enum class Mode { exact, floating };

/// Order-n linear recurrence F_k = b_1 F_{k-1} + ... + b_n F_{k-n}.
///
/// Weights are either exact Gaussian rationals (the float view is derived
/// from them) or plain doubles.  The order is at least 2 and b_n != 0.
class Recurrence {
 public:
  /// Throws Error(rejected_order) for fewer than two weights and
  /// Error(rejected_last_weight_zero) when b_n = 0.
  static Recurrence create(std::vector<ExactComplex> weights);
  static Recurrence create(std::vector<Complex> weights);

  int order() const { return static_cast<int>(weights_.size()); }
  bool is_exact() const { return exact_.has_value(); }

  /// b_1..b_n; weight(i) is 1-based like the recurrence.
  std::span<const Complex> weights() const { return weights_; }
  Complex weight(int i) const { return weights_[static_cast<std::size_t>(i - 1)]; }
  std::span<const ExactComplex> exact_weights() const;
  const ExactComplex& exact_weight(int i) const { return exact_weights()[static_cast<std::size_t>(i - 1)]; }

 private:
  Recurrence() = default;

  std::vector<Complex> weights_;
  std::optional<std::vector<ExactComplex>> exact_;
};

/// Initial conditions a = (a_{-n+1}, ..., a_0), not all zero.
class InitialConditions {
 public:
  /// Throws Error(rejected_length) or Error(rejected_trivial).
  static InitialConditions create(const Recurrence& rec, std::vector<ExactComplex> values);
  static InitialConditions create(const Recurrence& rec, std::vector<Complex> values);
  /// (0, ..., 0, 1)
  static InitialConditions fundamental(const Recurrence& rec);

  int size() const { return static_cast<int>(values_.size()); }
  bool is_exact() const { return exact_.has_value(); }

  /// Values in storage order a_{-n+1}, ..., a_0.
  std::span<const Complex> values() const { return values_; }
  std::span<const ExactComplex> exact_values() const;

  /// a_k for k in [-n+1, 0].
  Complex at(int k) const { return values_[static_cast<std::size_t>(k + size() - 1)]; }
  const ExactComplex& exact_at(int k) const { return exact_values()[static_cast<std::size_t>(k + size() - 1)]; }

 private:
  InitialConditions() = default;

  std::vector<Complex> values_;
  std::optional<std::vector<ExactComplex>> exact_;
};

/// Whether exact generation is possible for this pair.
bool exact_capable(const Recurrence& rec, const InitialConditions& init);

/// Terms F_k for k = start_index .. last_index(), addressed by the
/// recurrence's own index (start_index = -n+1).
///
/// Float terms are stored as mantissas with a per-term natural-log scale:
/// the true value of F_k is mantissa(k) * exp(log_scale(k)).  The scale only
/// changes when the rolling n-term window is renormalized, so all stored
/// mantissas stay within [0, 1e100].
class SequenceWindow {
 public:
  Mode mode() const { return mode_; }
  int start_index() const { return start_index_; }
  int last_index() const { return start_index_ + static_cast<int>(size()) - 1; }
  std::size_t size() const { return zero_.size(); }
  bool contains(int k) const { return k >= start_index_ && k <= last_index(); }

  /// Zero test: exact equality in exact mode, relative threshold in float mode.
  bool is_zero(int k) const { return zero_[offset(k)]; }

  /// Exact mode only.
  const ExactComplex& exact_term(int k) const { return exact_[offset(k)]; }
  const std::vector<ExactComplex>& exact_terms() const { return exact_; }

  /// Float mode: stored mantissa and its natural-log scale.
  Complex mantissa(int k) const { return mantissa_[offset(k)]; }
  double log_scale(int k) const { return log_scale_[offset(k)]; }
  /// Scale of the current rolling window (float mode), 0 in exact mode.
  double scale_exponent() const { return scale_exponent_; }

  /// F_k in scaled form (either mode).
  ScaledComplex scaled(int k) const;
  /// F_k as a double, inf/0 if outside the double range.
  Complex value(int k) const;
  /// Natural log of |F_k|, -inf for zero.
  double log_abs(int k) const;
  /// F_{k+1} / F_k; F_k must be nonzero.
  Complex ratio(int k) const;

 private:
  friend class SequenceGenerator;

  std::size_t offset(int k) const { return static_cast<std::size_t>(k - start_index_); }

  Mode mode_ = Mode::floating;
  int start_index_ = 0;
  std::vector<ExactComplex> exact_;
  std::vector<Complex> mantissa_;
  std::vector<double> log_scale_;
  std::vector<bool> zero_;
  double scale_exponent_ = 0.0;
};

/// Incremental generator; extend() appends terms in place so callers can
/// stop as soon as they have seen enough.
class SequenceGenerator {
 public:
  static constexpr double renormalize_above = 1e50;
  static constexpr double renormalize_below = 1e-50;
  static constexpr double zero_threshold = 1e-12;

  /// Throws Error(invalid_argument) for exact mode on inexact inputs.
  SequenceGenerator(const Recurrence& rec, const InitialConditions& init, Mode mode);

  /// Generate through index `last` (inclusive).
  void extend_to(int last);
  const SequenceWindow& window() const { return window_; }

 private:
  void push_float(Complex value);
  bool float_zero(Complex value) const;

  std::vector<Complex> weights_;
  std::vector<ExactComplex> exact_weights_;
  std::vector<Complex> rolling_;  // last n mantissas at the current scale
  SequenceWindow window_;
};

/// Terms F_{-n+1} .. F_count.  Requires count >= 1.
SequenceWindow generate(const Recurrence& rec, const InitialConditions& init, int count, Mode mode);

struct ZeroRunReport {
  int longest_zero_run = 0;
  /// Minimal k0 such that every generated F_k with k > k0 is nonzero; absent
  /// when the final generated term is zero.
  std::optional<int> first_index_after_which_all_nonzero;
  std::vector<int> zero_indices;
};

/// Throws Error(zero_run_bound_violated) if n consecutive zeros appear, which
/// cannot happen for b_n != 0 and nontrivial initial conditions.
ZeroRunReport zero_run_stats(const SequenceWindow& win, int n);

struct ShiftedHead {
  InitialConditions init;
  /// Index k' of the first nonzero term; F'_j = F_{j + k' + n - 1}.
  int first_nonzero_index;
  int shift() const { return first_nonzero_index + init.size() - 1; }
};

/// Re-anchors the sequence so that a'_{-n+1} is nonzero.
ShiftedHead shift_to_nonzero_head(const Recurrence& rec, const InitialConditions& init, Mode mode);

}  // namespace ratiolim
