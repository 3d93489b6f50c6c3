#include "ratiolim/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ratiolim/error.hpp"

namespace ratiolim {

long index_gcd(const std::vector<int>& indices) {
  long g = 0;
  for (int j : indices) g = std::gcd(g, static_cast<long>(j));
  return g;
}

double positive_root_by_bisection(const Recurrence& rec) {
  const int n = rec.order();
  const auto f = [&](double x) {
    // x^n - sum b_j x^{n-j} divided by x^n: 1 - sum b_j x^{-j}, decreasing in x > 0.
    double s = 1.0;
    double inv = 1.0;
    for (int j = 1; j <= n; ++j) {
      inv /= x;
      s -= rec.weight(j).real() * inv;
    }
    return s;
  };
  double lo = 0.0;
  double hi = 1.0;
  for (int j = 1; j <= n; ++j) hi = std::max(hi, 1.0 + rec.weight(j).real());
  lo = std::numeric_limits<double>::min();
  while (f(lo) >= 0.0) lo /= 2.0;  // f -> -inf as x -> 0+
  for (int iter = 0; iter < 2000 && hi - lo > 0.0; ++iter) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + (hi - lo) / 2.0;
}

CriterionResult ostrowski_check(const Recurrence& rec) {
  CriterionResult out;
  out.name = CriterionName::ostrowski;
  double max_abs = 0.0;
  for (const Complex& b : rec.weights()) max_abs = std::max(max_abs, std::abs(b));
  const double noise = kWeightNoise * max_abs;

  OstrowskiDetail detail;
  for (int j = 1; j <= rec.order(); ++j) {
    const Complex b = rec.weight(j);
    if (std::abs(b.imag()) > noise) {
      out.status = CriterionStatus::not_applicable;
      out.reason = "weight b_" + std::to_string(j) + " has a nonzero imaginary part";
      return out;
    }
    if (b.real() < -noise) {
      out.status = CriterionStatus::not_applicable;
      out.reason = "weight b_" + std::to_string(j) + " is negative";
      return out;
    }
    if (b.real() > noise) detail.positive_indices.push_back(j);
  }
  detail.gcd = index_gcd(detail.positive_indices);
  out.status = detail.gcd == 1 ? CriterionStatus::pass : CriterionStatus::fail;
  if (out.status == CriterionStatus::pass) out.implied_lambda0 = Complex(positive_root_by_bisection(rec), 0.0);
  out.ostrowski = std::move(detail);
  return out;
}

double dubeau_lhs(const Recurrence& rec, Complex root) {
  if (std::abs(root) == 0.0) throw Error(ErrorCode::root_modulus_zero, "Dubeau check at a zero root");
  const int n = rec.order();
  // terms[i] = b_{i+1} / root^{i+1} for i = 1..n-1; inner sums are suffix sums.
  std::vector<Complex> terms(static_cast<std::size_t>(n), Complex{});
  Complex power = root;
  for (int i = 1; i <= n - 1; ++i) {
    power *= root;
    terms[static_cast<std::size_t>(i)] = rec.weight(i + 1) / power;
  }
  double lhs = 0.0;
  Complex suffix{};
  for (int j = n - 1; j >= 1; --j) {
    suffix += terms[static_cast<std::size_t>(j)];
    lhs += std::abs(suffix);
  }
  return lhs;
}

std::vector<CriterionResult> dubeau_check(const Recurrence& rec, const RootSet& roots) {
  std::vector<CriterionResult> out;
  for (const Root& r : roots.roots) {
    CriterionResult res;
    res.name = CriterionName::dubeau;
    DubeauDetail detail{r.value, r.multiplicity, dubeau_lhs(rec, r.value)};
    res.status = detail.lhs < 1.0 - kDubeauMargin ? CriterionStatus::pass : CriterionStatus::fail;
    if (res.status == CriterionStatus::pass) res.implied_lambda0 = r.value;
    res.dubeau = detail;
    out.push_back(std::move(res));
  }
  return out;
}

std::string to_string(CriterionStatus status) {
  switch (status) {
    case CriterionStatus::pass: return "Pass";
    case CriterionStatus::fail: return "Fail";
    case CriterionStatus::not_applicable: return "NotApplicable";
  }
  return "Unknown";
}

std::string to_string(CriterionName name) {
  return name == CriterionName::ostrowski ? "ostrowski" : "dubeau";
}

}  // namespace ratiolim
