#pragma once

#include <string>

#include <json.hpp>

#include "ratiolim/audit.hpp"
#include "ratiolim/charpoly.hpp"
#include "ratiolim/criteria.hpp"
#include "ratiolim/oeis.hpp"
#include "ratiolim/ratio.hpp"
#include "ratiolim/recurrence.hpp"

// JSON encodings shared by the CLI documents (see docs/report.schema.json).
namespace ratiolim::report {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "1.0.0";

json to_json(Complex z);
/// {"re": double, "im": double, "exact": {"re": {"num","den"}, "im": {...}}, "text": literal}
json to_json(const ExactComplex& z);
json to_json(const std::optional<Complex>& z);

json scalars_json(const Recurrence& rec);
json scalars_json(const InitialConditions& init);

/// One entry per term: {"k", "value", "zero"}; float terms with a nonzero
/// scale carry the mantissa plus "log_scale".
json to_json(const SequenceWindow& win);
json to_json(const ZeroRunReport& report);
json to_json(const MonicPolynomial& poly);
json to_json(const RootSet& roots);
json to_json(const DominanceReport& report);
json to_json(const CriterionResult& result);
json to_json(const RatioEstimate& est);
json to_json(const LimitExpression& expr);
json to_json(const DegeneracyReport& report);
json to_json(const Condition11Report& report);
json to_json(const ClaimEvidence& ev);
/// Compact finding summary: claim, status, reason and the witness if any.
json finding(const ClaimEvidence& ev);
json to_json(const InstanceAudit& audit);
json to_json(const BatchSummary& summary);
json to_json(const oeis::OeisEntry& entry);
json to_json(const oeis::VerificationRecord& rec);
json to_json(const oeis::VerifySummary& summary);

json document(const std::string& command, json inputs, json results, json findings = json::array());

std::string mode_name(Mode mode);

}  // namespace ratiolim::report
