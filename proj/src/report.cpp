#include "ratiolim/report.hpp"

#include <cmath>

namespace ratiolim::report {

namespace {

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json rational_json(const Rational& q) {
  return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

}  // namespace

std::string mode_name(Mode mode) { return mode == Mode::exact ? "exact" : "float"; }

json to_json(Complex z) { return {{"re", finite_or_null(z.real())}, {"im", finite_or_null(z.imag())}}; }

json to_json(const ExactComplex& z) {
  json out = to_json(z.to_complex());
  out["exact"] = {{"re", rational_json(z.re())}, {"im", rational_json(z.im())}};
  out["text"] = to_string(z);
  return out;
}

json to_json(const std::optional<Complex>& z) { return z ? to_json(*z) : json(nullptr); }

json scalars_json(const Recurrence& rec) {
  json out = json::array();
  if (rec.is_exact()) {
    for (const ExactComplex& b : rec.exact_weights()) out.push_back(to_json(b));
  } else {
    for (const Complex& b : rec.weights()) out.push_back(to_json(b));
  }
  return out;
}

json scalars_json(const InitialConditions& init) {
  json out = json::array();
  if (init.is_exact()) {
    for (const ExactComplex& a : init.exact_values()) out.push_back(to_json(a));
  } else {
    for (const Complex& a : init.values()) out.push_back(to_json(a));
  }
  return out;
}

json to_json(const SequenceWindow& win) {
  json terms = json::array();
  for (int k = win.start_index(); k <= win.last_index(); ++k) {
    json term = {{"k", k}, {"zero", win.is_zero(k)}};
    if (win.mode() == Mode::exact) {
      term["value"] = to_json(win.exact_term(k));
    } else if (win.log_scale(k) == 0.0) {
      term["value"] = to_json(win.mantissa(k));
    } else {
      term["value"] = to_json(win.mantissa(k));
      term["log_scale"] = win.log_scale(k);
    }
    terms.push_back(std::move(term));
  }
  return {{"mode", mode_name(win.mode())},
          {"start_index", win.start_index()},
          {"scale_exponent", win.scale_exponent()},
          {"terms", std::move(terms)}};
}

json to_json(const ZeroRunReport& report) {
  return {{"longest_zero_run", report.longest_zero_run},
          {"k0", report.first_index_after_which_all_nonzero ? json(*report.first_index_after_which_all_nonzero)
                                                            : json(nullptr)},
          {"zero_indices", report.zero_indices}};
}

json to_json(const MonicPolynomial& poly) {
  json coeffs = json::array();
  if (poly.is_exact()) {
    for (const ExactComplex& c : poly.exact_coefficients()) coeffs.push_back(to_json(c));
  } else {
    for (const Complex& c : poly.coefficients()) coeffs.push_back(to_json(c));
  }
  return {{"degree", poly.degree()}, {"ascending_coefficients", std::move(coeffs)}};
}

json to_json(const RootSet& roots) {
  json list = json::array();
  for (const Root& r : roots.roots) {
    list.push_back({{"value", to_json(r.value)}, {"modulus", std::abs(r.value)}, {"multiplicity", r.multiplicity}});
  }
  return {{"roots", std::move(list)},
          {"residual_bound", roots.residual_bound},
          {"cluster_radius", roots.cluster_radius},
          {"iterations", roots.iterations}};
}

json to_json(const DominanceReport& report) {
  json members = json::array();
  for (const Root& r : report.max_modulus_roots) {
    members.push_back({{"value", to_json(r.value)}, {"multiplicity", r.multiplicity}});
  }
  return {{"max_modulus", report.max_modulus},
          {"max_modulus_roots", std::move(members)},
          {"is_asymptotically_simple", report.is_asymptotically_simple},
          {"lambda0", to_json(report.lambda0)},
          {"nu", report.nu ? json(*report.nu) : json(nullptr)},
          {"tie_tolerance", report.tie_tolerance},
          {"near_tie", report.near_tie}};
}

json to_json(const CriterionResult& result) {
  json out = {{"name", to_string(result.name)},
              {"status", to_string(result.status)},
              {"implied_lambda0", to_json(result.implied_lambda0)}};
  if (!result.reason.empty()) out["reason"] = result.reason;
  if (result.ostrowski) {
    out["detail"] = {{"positive_indices", result.ostrowski->positive_indices}, {"gcd", result.ostrowski->gcd}};
  }
  if (result.dubeau) {
    out["detail"] = {{"root", to_json(result.dubeau->root)},
                     {"multiplicity", result.dubeau->multiplicity},
                     {"lhs", result.dubeau->lhs}};
  }
  return out;
}

json to_json(const RatioEstimate& est) {
  return {{"value", to_json(est.value)},
          {"status", to_string(est.status)},
          {"k_converged", est.k_converged ? json(*est.k_converged) : json(nullptr)},
          {"last_residual", finite_or_null(est.last_residual)},
          {"skipped_zero_indices", est.skipped_zero_indices},
          {"empirical_k0", est.empirical_k0 ? json(*est.empirical_k0) : json(nullptr)},
          {"mode", mode_name(est.mode)},
          {"horizon", est.horizon}};
}

json to_json(const LimitExpression& expr) {
  return {{"numerator", to_json(expr.numerator)},
          {"denominator", to_json(expr.denominator)},
          {"value", to_json(expr.value)}};
}

json to_json(const DegeneracyReport& report) {
  json out = {{"denominator", to_json(report.denominator)},
              {"numerator", to_json(report.numerator)},
              {"relative_magnitude", report.relative_magnitude},
              {"degenerate", report.degenerate},
              {"exact", report.exact}};
  if (report.exact_denominator) out["exact_denominator"] = to_json(*report.exact_denominator);
  return out;
}

json to_json(const Condition11Report& report) {
  json samples = json::array();
  for (const auto& [k, mag] : report.samples) samples.push_back({{"k", k}, {"magnitude", mag}});
  return {{"samples", std::move(samples)},
          {"trend", to_string(report.trend)},
          {"final_magnitude", report.final_magnitude},
          {"mode", mode_name(report.mode)}};
}

namespace {

json witness_json(const ClaimEvidence& ev) {
  if (ev.status != ClaimStatus::violated) return nullptr;
  if (ev.claim == Claim::part_i) {
    return {{"index", *ev.witness_index}, {"value", to_json(ev.witness_value)}, {"k0", *ev.k0}, {"shift", ev.shift}};
  }
  json w = {{"measured", to_json(ev.measured)}, {"lambda0", to_json(ev.lambda0)}};
  if (ev.degeneracy) w["degeneracy"] = to_json(*ev.degeneracy);
  return w;
}

}  // namespace

json to_json(const ClaimEvidence& ev) {
  json out = {{"claim", to_string(ev.claim)},
              {"status", to_string(ev.status)},
              {"reason", ev.reason},
              {"horizon", ev.horizon},
              {"mode", mode_name(ev.mode)},
              {"witness", witness_json(ev)}};
  if (ev.claim == Claim::part_i) {
    out["k0"] = ev.k0 ? json(*ev.k0) : json(nullptr);
    out["shift"] = ev.shift;
  } else {
    out["measured"] = to_json(ev.measured);
    out["lambda0"] = to_json(ev.lambda0);
    out["k_converged"] = ev.k_converged ? json(*ev.k_converged) : json(nullptr);
    out["degeneracy"] = ev.degeneracy ? to_json(*ev.degeneracy) : json(nullptr);
  }
  return out;
}

json finding(const ClaimEvidence& ev) {
  return {{"claim", to_string(ev.claim)},
          {"status", to_string(ev.status)},
          {"reason", ev.reason},
          {"witness", witness_json(ev)}};
}

json to_json(const InstanceAudit& audit) {
  json weights = json::array();
  json init = json::array();
  if (audit.exact) {
    for (const ExactComplex& b : audit.weights) weights.push_back(to_string(b));
    for (const ExactComplex& a : audit.init) init.push_back(to_string(a));
  } else {
    for (const Complex& b : audit.float_weights) weights.push_back(to_json(b));
    for (const Complex& a : audit.float_init) init.push_back(to_json(a));
  }
  json out = {{"weights", std::move(weights)}, {"init", std::move(init)}, {"exact", audit.exact}};
  if (audit.error) {
    out["error"] = *audit.error;
    return out;
  }
  out["dominance"] = to_json(*audit.dominance);
  out["part_i"] = to_json(*audit.part_i);
  out["part_ii"] = to_json(*audit.part_ii);
  out["degeneracy"] = audit.degeneracy ? to_json(*audit.degeneracy) : json(nullptr);
  out["condition11"] = audit.condition11 ? to_json(*audit.condition11) : json(nullptr);
  return out;
}

namespace {

json counts_json(const StatusCounts& c) {
  return {{"supported", c.supported}, {"violated", c.violated}, {"inconclusive", c.inconclusive}};
}

}  // namespace

json to_json(const BatchSummary& s) {
  return {{"count", s.count},
          {"part_i", counts_json(s.part_i)},
          {"part_ii", counts_json(s.part_ii)},
          {"asymptotically_simple", s.asymptotically_simple},
          {"degenerate", s.degenerate},
          {"condition11_mismatches", s.condition11_mismatches},
          {"errors", s.errors}};
}

json to_json(const oeis::OeisEntry& entry) {
  json terms = json::array();
  for (const mpz_class& t : entry.terms) terms.push_back(t.get_str());
  return {{"id", entry.id},
          {"name", entry.name},
          {"terms", std::move(terms)},
          {"signature", entry.signature ? json(*entry.signature) : json(nullptr)}};
}

json to_json(const oeis::VerificationRecord& rec) {
  return {{"id", rec.id},
          {"name", rec.name},
          {"signature_used", rec.signature_used},
          {"status", rec.status},
          {"recurrence_consistent", rec.recurrence_consistent},
          {"irregular_prefix", rec.irregular_prefix},
          {"measured_tail_ratio", to_json(rec.measured_tail_ratio)},
          {"lambda0", to_json(rec.lambda0)},
          {"agrees", rec.agrees},
          {"detail", rec.detail}};
}

json to_json(const oeis::VerifySummary& s) {
  return {{"records", s.records},
          {"agrees", s.agrees},
          {"disagrees", s.disagrees},
          {"inconsistent", s.inconsistent},
          {"insufficient", s.insufficient},
          {"unavailable", s.unavailable}};
}

json document(const std::string& command, json inputs, json results, json findings) {
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"inputs", std::move(inputs)},
          {"results", std::move(results)},
          {"findings", std::move(findings)}};
}

}  // namespace ratiolim::report
