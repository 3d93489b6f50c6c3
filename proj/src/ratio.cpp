#include "ratiolim/ratio.hpp"

#include <algorithm>
#include <cmath>

#include "ratiolim/error.hpp"

namespace ratiolim {

RatioEstimate estimate_ratio_limit(const Recurrence& rec, const InitialConditions& init, const RatioOptions& opts,
                                   Mode mode) {
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::invalid_argument, "ratio tolerance must be positive");
  if (opts.max_k < 4 * rec.order()) throw Error(ErrorCode::invalid_argument, "max_k must be at least 4n");
  if (opts.stability_window < 1) throw Error(ErrorCode::invalid_argument, "stability window must be positive");

  RatioEstimate est;
  est.mode = mode;
  SequenceGenerator gen(rec, init, mode);
  const SequenceWindow& win = gen.window();

  // A stretch of n equal ratios is an exact eigen-sequence from then on;
  // shorter stretches can occur by accident (e.g. 1, 1, 2, 4, ... for n-bonacci).
  const int required = std::max(opts.stability_window, rec.order());
  constexpr int kChunk = 64;
  std::optional<Complex> prev;
  int prev_k = 0;
  int streak = 0;
  int k = win.start_index();
  bool converged = false;
  while (!converged && k < opts.max_k) {
    gen.extend_to(std::min(opts.max_k, k + kChunk));
    for (; k < win.last_index(); ++k) {
      if (win.is_zero(k)) {
        est.skipped_zero_indices.push_back(k);
        streak = 0;
        prev.reset();
        continue;
      }
      if (win.is_zero(k + 1)) continue;
      const Complex r = win.ratio(k);
      if (prev && prev_k == k - 1) {
        const double diff = std::abs(r - *prev) / std::max(1.0, std::abs(*prev));
        est.last_residual = diff;
        streak = diff <= opts.tol ? streak + 1 : 0;
      } else {
        streak = 0;
      }
      prev = r;
      prev_k = k;
      if (streak >= required) {
        converged = true;
        est.k_converged = k;
        break;
      }
    }
  }
  if (!converged && win.is_zero(win.last_index())) est.skipped_zero_indices.push_back(win.last_index());

  est.horizon = win.last_index();
  est.empirical_k0 = zero_run_stats(win, rec.order()).first_index_after_which_all_nonzero;
  if (converged) {
    est.status = RatioStatus::converged;
    est.value = prev;
  } else if (!prev) {
    // Not a single ratio of two adjacent nonzero terms in the horizon.
    const bool any_nonzero_after_init = [&] {
      for (int j = 1; j <= win.last_index(); ++j) {
        if (!win.is_zero(j)) return true;
      }
      return false;
    }();
    est.status = any_nonzero_after_init ? RatioStatus::not_converged : RatioStatus::no_nonzero_tail;
  } else {
    est.status = RatioStatus::not_converged;
    est.value = prev;
  }
  return est;
}

std::optional<Complex> ratio_at(const Recurrence& rec, const InitialConditions& init, int k, Mode mode) {
  const SequenceWindow win = generate(rec, init, std::max(1, k + 1), mode);
  if (win.is_zero(k)) return std::nullopt;
  return win.ratio(k);
}

namespace {

template <class Scalar, class WeightFn, class InitFn, class FundFn>
Scalar decompose(int n, int k, WeightFn b, InitFn a, FundFn f0) {
  Scalar sum = a(0) * f0(k);
  for (int i = 1; i <= n - 1; ++i) {
    Scalar inner{};
    for (int j = 1; j <= n - i; ++j) inner += b(i + j) * f0(k - j);
    sum += a(-i) * inner;
  }
  return sum;
}

void check_decompose_index(int k) {
  if (k < 1) throw Error(ErrorCode::invalid_argument, "decomposition index must be at least 1");
}

}  // namespace

ExactComplex decompose_via_fundamental_exact(const Recurrence& rec, const InitialConditions& init, int k) {
  check_decompose_index(k);
  const SequenceWindow f0 = generate(rec, InitialConditions::fundamental(rec), k, Mode::exact);
  return decompose<ExactComplex>(
      rec.order(), k, [&](int i) -> const ExactComplex& { return rec.exact_weight(i); },
      [&](int i) -> const ExactComplex& { return init.exact_at(i); },
      [&](int i) -> const ExactComplex& { return f0.exact_term(i); });
}

Complex decompose_via_fundamental(const Recurrence& rec, const InitialConditions& init, int k) {
  check_decompose_index(k);
  const SequenceWindow f0 = generate(rec, InitialConditions::fundamental(rec), k, Mode::floating);
  return decompose<Complex>(
      rec.order(), k, [&](int i) { return rec.weight(i); }, [&](int i) { return init.at(i); },
      [&](int i) { return f0.value(i); });
}

namespace {

struct Closed {
  Complex numerator;
  Complex denominator;
  double scale = 0.0;
};

Closed closed_form(const Recurrence& rec, const InitialConditions& init, Complex phi0) {
  if (std::abs(phi0) == 0.0) throw Error(ErrorCode::invalid_argument, "limit expression needs phi0 != 0");
  const int n = rec.order();
  std::vector<Complex> inv_pow(static_cast<std::size_t>(n + 1), Complex(1.0));
  for (int j = 1; j <= n; ++j) inv_pow[static_cast<std::size_t>(j)] = inv_pow[static_cast<std::size_t>(j - 1)] / phi0;
  const double inv_abs = 1.0 / std::abs(phi0);

  Closed out;
  out.numerator = init.at(0) * phi0;
  out.denominator = init.at(0);
  out.scale = std::abs(init.at(0));
  for (int i = 1; i <= n - 1; ++i) {
    Complex num{};
    Complex den{};
    double scale = 0.0;
    for (int j = 1; j <= n - i; ++j) {
      const Complex b = rec.weight(i + j);
      // phi0^{-j+1} for the numerator, phi0^{-j} for the denominator.
      num += b * inv_pow[static_cast<std::size_t>(j - 1)];
      den += b * inv_pow[static_cast<std::size_t>(j)];
      scale += std::abs(b) * std::pow(inv_abs, j);
    }
    out.numerator += init.at(-i) * num;
    out.denominator += init.at(-i) * den;
    out.scale += std::abs(init.at(-i)) * scale;
  }
  return out;
}

ExactComplex exact_denominator(const Recurrence& rec, const InitialConditions& init, const ExactComplex& lambda0) {
  const int n = rec.order();
  const ExactComplex inv = ExactComplex(1) / lambda0;
  ExactComplex d = init.exact_at(0);
  for (int i = 1; i <= n - 1; ++i) {
    ExactComplex inner;
    ExactComplex power = ExactComplex(1);
    for (int j = 1; j <= n - i; ++j) {
      power *= inv;
      inner += rec.exact_weight(i + j) * power;
    }
    d += init.exact_at(-i) * inner;
  }
  return d;
}

}  // namespace

LimitExpression limit_expression(const Recurrence& rec, const InitialConditions& init, Complex phi0,
                                 double degeneracy_tol) {
  const Closed c = closed_form(rec, init, phi0);
  LimitExpression out{c.numerator, c.denominator, std::nullopt};
  if (std::abs(c.denominator) > degeneracy_tol * c.scale) out.value = c.numerator / c.denominator;
  return out;
}

DegeneracyReport degeneracy_check(const Recurrence& rec, const InitialConditions& init, Complex lambda0, double tol,
                                  const std::optional<ExactComplex>& exact_lambda0) {
  const Closed c = closed_form(rec, init, lambda0);
  DegeneracyReport report;
  report.denominator = c.denominator;
  report.numerator = c.numerator;
  if (exact_lambda0 && exact_capable(rec, init) && !exact_lambda0->is_zero()) {
    const ExactComplex d = exact_denominator(rec, init, *exact_lambda0);
    report.exact = true;
    report.denominator = d.to_complex();
    report.numerator = (d * *exact_lambda0).to_complex();
    report.relative_magnitude = std::abs(report.denominator) / c.scale;
    report.degenerate = d.is_zero();
    report.exact_denominator = d;
    return report;
  }
  report.relative_magnitude = std::abs(c.denominator) / c.scale;
  report.degenerate = report.relative_magnitude <= tol;
  return report;
}

std::vector<int> default_condition11_samples(int horizon) {
  std::vector<int> out;
  for (int k = 1; k < horizon; k *= 2) out.push_back(k);
  if (horizon >= 1) out.push_back(horizon);
  return out;
}

Trend classify_trend(const std::vector<std::pair<int, double>>& samples) {
  if (samples.size() < 2) return Trend::inconclusive;
  const double first = samples.front().second;
  const double last = samples.back().second;
  const double before = samples[samples.size() - 2].second;
  if (first > 0.0 && last <= 1e-6 * first && first >= 10.0 * last) return Trend::vanishing;
  if (last > 0.0 && std::abs(last - before) <= 0.05 * last) return Trend::stabilizing;
  return Trend::inconclusive;
}

Condition11Report condition_11_estimate(const Recurrence& rec, const InitialConditions& init, Complex lambda0,
                                        int nu, const std::vector<int>& sample_ks, Mode mode) {
  if (std::abs(lambda0) == 0.0) throw Error(ErrorCode::invalid_argument, "lambda0 must be nonzero");
  if (nu < 1) throw Error(ErrorCode::invalid_argument, "nu must be at least 1");
  if (sample_ks.empty()) throw Error(ErrorCode::invalid_argument, "no sample indices");
  for (std::size_t i = 0; i < sample_ks.size(); ++i) {
    if (sample_ks[i] < 1 || (i > 0 && sample_ks[i] <= sample_ks[i - 1])) {
      throw Error(ErrorCode::invalid_argument, "sample indices must be positive and increasing");
    }
  }
  Condition11Report report;
  report.mode = mode;
  const SequenceWindow win = generate(rec, init, sample_ks.back(), mode);
  const double log_lambda = std::log(std::abs(lambda0));
  for (int k : sample_ks) {
    const double log_f = win.log_abs(k);
    const double log_mag = log_f - (nu - 1) * std::log(static_cast<double>(k)) - k * log_lambda;
    report.samples.emplace_back(k, std::isinf(log_f) ? 0.0 : std::exp(log_mag));
  }
  report.final_magnitude = report.samples.back().second;
  report.trend = classify_trend(report.samples);
  return report;
}

std::string to_string(RatioStatus status) {
  switch (status) {
    case RatioStatus::converged: return "Converged";
    case RatioStatus::not_converged: return "NotConverged";
    case RatioStatus::no_nonzero_tail: return "NoNonzeroTail";
  }
  return "Unknown";
}

std::string to_string(Trend trend) {
  switch (trend) {
    case Trend::vanishing: return "Vanishing";
    case Trend::stabilizing: return "Stabilizing";
    case Trend::inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

}  // namespace ratiolim
