#include "ratiolim/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ratiolim/error.hpp"

namespace ratiolim {

namespace {

std::vector<Complex> to_float(std::span<const ExactComplex> values) {
  std::vector<Complex> out;
  out.reserve(values.size());
  for (const ExactComplex& v : values) out.push_back(v.to_complex());
  return out;
}

void check_finite(std::span<const Complex> values) {
  for (const Complex& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorCode::invalid_argument, "non-finite scalar");
    }
  }
}

void check_order(std::size_t n) {
  if (n < 2) {
    throw Error(ErrorCode::rejected_order,
                "a recurrence needs at least 2 weights, got " + std::to_string(n));
  }
}

[[noreturn]] void reject_last_weight() {
  throw Error(ErrorCode::rejected_last_weight_zero, "the last weight b_n must be nonzero");
}

void check_length(const Recurrence& rec, std::size_t len) {
  if (static_cast<int>(len) != rec.order()) {
    throw Error(ErrorCode::rejected_length, "expected " + std::to_string(rec.order()) +
                                                " initial values, got " + std::to_string(len));
  }
}

[[noreturn]] void reject_trivial() {
  throw Error(ErrorCode::rejected_trivial, "initial conditions must not all be zero");
}

}  // namespace

Recurrence Recurrence::create(std::vector<ExactComplex> weights) {
  check_order(weights.size());
  if (weights.back().is_zero()) reject_last_weight();
  Recurrence rec;
  rec.weights_ = to_float(weights);
  rec.exact_ = std::move(weights);
  return rec;
}

Recurrence Recurrence::create(std::vector<Complex> weights) {
  check_order(weights.size());
  check_finite(weights);
  if (std::abs(weights.back()) == 0.0) reject_last_weight();
  Recurrence rec;
  rec.weights_ = std::move(weights);
  return rec;
}

std::span<const ExactComplex> Recurrence::exact_weights() const {
  if (!exact_) throw Error(ErrorCode::invalid_argument, "recurrence has no exact weights");
  return *exact_;
}

InitialConditions InitialConditions::create(const Recurrence& rec, std::vector<ExactComplex> values) {
  check_length(rec, values.size());
  if (std::all_of(values.begin(), values.end(), [](const ExactComplex& v) { return v.is_zero(); })) {
    reject_trivial();
  }
  InitialConditions init;
  init.values_ = to_float(values);
  init.exact_ = std::move(values);
  return init;
}

InitialConditions InitialConditions::create(const Recurrence& rec, std::vector<Complex> values) {
  check_length(rec, values.size());
  check_finite(values);
  if (std::all_of(values.begin(), values.end(), [](Complex v) { return v == Complex{}; })) {
    reject_trivial();
  }
  InitialConditions init;
  init.values_ = std::move(values);
  return init;
}

InitialConditions InitialConditions::fundamental(const Recurrence& rec) {
  std::vector<ExactComplex> values(static_cast<std::size_t>(rec.order()));
  values.back() = ExactComplex(1);
  return create(rec, std::move(values));
}

std::span<const ExactComplex> InitialConditions::exact_values() const {
  if (!exact_) throw Error(ErrorCode::invalid_argument, "initial conditions have no exact values");
  return *exact_;
}

bool exact_capable(const Recurrence& rec, const InitialConditions& init) {
  return rec.is_exact() && init.is_exact();
}

ScaledComplex SequenceWindow::scaled(int k) const {
  if (mode_ == Mode::exact) return exact_term(k).to_scaled();
  const Complex m = mantissa(k);
  if (m == Complex{}) return {};
  const double bits = log_scale(k) / std::numbers::ln2;
  const double whole = std::floor(bits);
  const double frac = std::exp2(bits - whole);
  return {m * frac, static_cast<long>(whole)};
}

Complex SequenceWindow::value(int k) const {
  if (mode_ == Mode::exact) return exact_term(k).to_complex();
  return mantissa(k) * std::exp(log_scale(k));
}

double SequenceWindow::log_abs(int k) const {
  if (mode_ == Mode::exact) return exact_term(k).to_scaled().log_abs();
  const double m = std::abs(mantissa(k));
  if (m == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(m) + log_scale(k);
}

Complex SequenceWindow::ratio(int k) const {
  if (mode_ == Mode::exact) return scaled_ratio(exact_term(k + 1).to_scaled(), exact_term(k).to_scaled());
  const Complex den = mantissa(k);
  if (den == Complex{}) throw Error(ErrorCode::division_by_zero, "ratio with zero denominator");
  return mantissa(k + 1) / den * std::exp(log_scale(k + 1) - log_scale(k));
}

SequenceGenerator::SequenceGenerator(const Recurrence& rec, const InitialConditions& init, Mode mode) {
  const int n = rec.order();
  if (init.size() != n) check_length(rec, static_cast<std::size_t>(init.size()));
  window_.mode_ = mode;
  window_.start_index_ = -n + 1;
  if (mode == Mode::exact) {
    if (!exact_capable(rec, init)) {
      throw Error(ErrorCode::invalid_argument, "exact generation needs exact weights and initial conditions");
    }
    exact_weights_.assign(rec.exact_weights().begin(), rec.exact_weights().end());
    for (const ExactComplex& a : init.exact_values()) {
      window_.exact_.push_back(a);
      window_.zero_.push_back(a.is_zero());
    }
    return;
  }
  weights_.assign(rec.weights().begin(), rec.weights().end());
  double max_abs = 0.0;
  for (const Complex& a : init.values()) max_abs = std::max(max_abs, std::abs(a));
  for (const Complex& a : init.values()) {
    window_.mantissa_.push_back(a);
    window_.log_scale_.push_back(0.0);
    window_.zero_.push_back(std::abs(a) <= zero_threshold * max_abs);
    rolling_.push_back(a);
  }
  // Bring tiny or huge initial conditions into range before the first step.
  if (max_abs > renormalize_above || max_abs < renormalize_below) {
    for (Complex& w : rolling_) w /= max_abs;
    window_.scale_exponent_ += std::log(max_abs);
  }
}

bool SequenceGenerator::float_zero(Complex value) const {
  double max_abs = std::abs(value);
  for (const Complex& w : rolling_) max_abs = std::max(max_abs, std::abs(w));
  return std::abs(value) <= zero_threshold * max_abs;
}

void SequenceGenerator::push_float(Complex value) {
  // rolling_ still holds the previous n terms; the window for the zero test
  // is the newest n terms, i.e. drop the oldest and add `value`.
  rolling_.erase(rolling_.begin());
  const bool zero = float_zero(value);
  rolling_.push_back(value);
  window_.mantissa_.push_back(value);
  window_.log_scale_.push_back(window_.scale_exponent_);
  window_.zero_.push_back(zero);

  double max_abs = 0.0;
  for (const Complex& w : rolling_) max_abs = std::max(max_abs, std::abs(w));
  if (max_abs > renormalize_above || (max_abs > 0.0 && max_abs < renormalize_below)) {
    for (Complex& w : rolling_) w /= max_abs;
    window_.scale_exponent_ += std::log(max_abs);
  }
}

void SequenceGenerator::extend_to(int last) {
  if (window_.mode_ == Mode::exact) {
    const auto n = exact_weights_.size();
    auto& terms = window_.exact_;
    terms.reserve(static_cast<std::size_t>(last - window_.start_index_ + 1));
    while (window_.last_index() < last) {
      const std::size_t top = terms.size();
      ExactComplex next;
      for (std::size_t i = 1; i <= n; ++i) {
        const ExactComplex& b = exact_weights_[i - 1];
        if (b.is_zero()) continue;
        next += b * terms[top - i];
      }
      window_.zero_.push_back(next.is_zero());
      terms.push_back(std::move(next));
    }
    return;
  }
  const auto n = weights_.size();
  while (window_.last_index() < last) {
    Complex next{};
    for (std::size_t i = 1; i <= n; ++i) next += weights_[i - 1] * rolling_[n - i];
    push_float(next);
  }
}

SequenceWindow generate(const Recurrence& rec, const InitialConditions& init, int count, Mode mode) {
  if (count < 1) throw Error(ErrorCode::invalid_argument, "count must be at least 1");
  SequenceGenerator gen(rec, init, mode);
  gen.extend_to(count);
  return gen.window();
}

ZeroRunReport zero_run_stats(const SequenceWindow& win, int n) {
  ZeroRunReport report;
  int run = 0;
  for (int k = win.start_index(); k <= win.last_index(); ++k) {
    if (win.is_zero(k)) {
      report.zero_indices.push_back(k);
      ++run;
      report.longest_zero_run = std::max(report.longest_zero_run, run);
    } else {
      run = 0;
    }
  }
  if (report.longest_zero_run >= n) {
    throw Error(ErrorCode::zero_run_bound_violated,
                "found " + std::to_string(report.longest_zero_run) + " consecutive zero terms for order " +
                    std::to_string(n));
  }
  if (win.size() > 0 && !win.is_zero(win.last_index())) {
    report.first_index_after_which_all_nonzero =
        report.zero_indices.empty() ? win.start_index() - 1 : report.zero_indices.back();
  }
  return report;
}

ShiftedHead shift_to_nonzero_head(const Recurrence& rec, const InitialConditions& init, Mode mode) {
  const int n = rec.order();
  const SequenceWindow win = generate(rec, init, n - 1, mode);
  int first = win.start_index();
  while (first <= 0 && win.is_zero(first)) ++first;
  if (mode == Mode::exact) {
    std::vector<ExactComplex> values;
    for (int k = first; k < first + n; ++k) values.push_back(win.exact_term(k));
    return {InitialConditions::create(rec, std::move(values)), first};
  }
  std::vector<Complex> values;
  for (int k = first; k < first + n; ++k) values.push_back(win.value(k));
  return {InitialConditions::create(rec, std::move(values)), first};
}

}  // namespace ratiolim
