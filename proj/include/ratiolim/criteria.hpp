#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ratiolim/charpoly.hpp"
#include "ratiolim/recurrence.hpp"

namespace ratiolim {

enum class CriterionStatus { pass, fail, not_applicable };
enum class CriterionName { ostrowski, dubeau };

struct OstrowskiDetail {
  std::vector<int> positive_indices;
  long gcd = 0;
};

struct DubeauDetail {
  Complex root;
  int multiplicity = 1;
  /// sum_{j=1}^{n-1} | sum_{i=j}^{n-1} b_{i+1} / root^{i+1} |
  double lhs = 0.0;
};

struct CriterionResult {
  CriterionName name;
  CriterionStatus status = CriterionStatus::fail;
  /// Why the criterion does not apply (only with not_applicable).
  std::string reason;
  std::optional<OstrowskiDetail> ostrowski;
  std::optional<DubeauDetail> dubeau;
  std::optional<Complex> implied_lambda0;
};

/// Weights within this fraction of max |b| of zero count as zero.
inline constexpr double kWeightNoise = 1e-12;

/// Nonnegative real weights: pass iff gcd{ j : b_j > 0 } = 1.  On a pass the
/// implied lambda0 is the unique positive root, located by bisection.
CriterionResult ostrowski_check(const Recurrence& rec);

/// Left-hand sides within this distance of 1 are treated as the boundary.
inline constexpr double kDubeauMargin = 1e-9;

/// One result per distinct root; a root passes iff its left-hand side is
/// below 1 - kDubeauMargin.
std::vector<CriterionResult> dubeau_check(const Recurrence& rec, const RootSet& roots);

/// Left-hand side of the Dubeau inequality at `root`.
/// Throws Error(root_modulus_zero) for a zero root.
double dubeau_lhs(const Recurrence& rec, Complex root);

/// Euclid over an index set; 0 for an empty set.
long index_gcd(const std::vector<int>& indices);

/// The unique positive root of x^n - sum b_j x^{n-j} for nonnegative real
/// weights with b_n > 0 (Descartes: one sign change).
double positive_root_by_bisection(const Recurrence& rec);

std::string to_string(CriterionStatus status);
std::string to_string(CriterionName name);

}  // namespace ratiolim
