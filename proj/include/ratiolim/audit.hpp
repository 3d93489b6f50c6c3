#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ratiolim/charpoly.hpp"
#include "ratiolim/criteria.hpp"
#include "ratiolim/ratio.hpp"
#include "ratiolim/recurrence.hpp"

namespace ratiolim {

enum class Claim { part_i, part_ii };
enum class ClaimStatus { supported, violated, inconclusive };

/// Outcome of checking one ratio-limit claim on one instance.  A violated claim
/// always carries its witness: `witness_index`/`witness_value` for part (i),
/// `measured` against `lambda0` plus the degeneracy report for part (ii).
struct ClaimEvidence {
  Claim claim = Claim::part_i;
  ClaimStatus status = ClaimStatus::inconclusive;
  std::string reason;
  int horizon = 0;
  Mode mode = Mode::floating;

  // part (i)
  std::optional<int> k0;
  /// Index shift applied when a_{-n+1} = 0 (indices are in the shifted frame).
  int shift = 0;
  std::optional<int> witness_index;
  std::optional<Complex> witness_value;

  // part (ii)
  std::optional<Complex> measured;
  std::optional<Complex> lambda0;
  std::optional<int> k_converged;
  std::optional<DegeneracyReport> degeneracy;
};

struct AuditOptions {
  RatioOptions ratio;
  /// Horizon for exact-mode ratio auditing.
  int exact_max_k = 2000;
  bool prefer_exact = true;
  double degeneracy_tol = kDefaultDegeneracyTol;
  int part_i_horizon = 60;
  int condition11_horizon = 1000;
  RootOptions roots;
  DominanceOptions dominance;
};

/// Checks F^a_k != 0 for k0 + n - 1 < k <= horizon, with k0 the minimal
/// empirical k0 of the fundamental sequence.  Inconclusive unless at least n
/// nonzero terms follow k0.  Requires horizon >= 4n.
ClaimEvidence audit_part_i(const Recurrence& rec, const InitialConditions& init, int horizon);

/// Ratio limit versus lambda0 for an asymptotically simple polynomial.
ClaimEvidence audit_part_ii(const Recurrence& rec, const InitialConditions& init, const AuditOptions& opts = {});
ClaimEvidence audit_part_ii(const Recurrence& rec, const InitialConditions& init, const DominanceReport& dominance,
                            const AuditOptions& opts);

/// Tolerance for agreement between a measured ratio and lambda0.
double part_ii_tolerance(const RatioOptions& ratio, Complex lambda0);

struct InstanceAudit {
  std::vector<ExactComplex> weights;  // exact form when available
  std::vector<ExactComplex> init;
  std::vector<Complex> float_weights;
  std::vector<Complex> float_init;
  bool exact = false;

  std::optional<RootSet> roots;
  std::optional<DominanceReport> dominance;
  std::optional<ClaimEvidence> part_i;
  std::optional<ClaimEvidence> part_ii;
  std::optional<DegeneracyReport> degeneracy;
  std::optional<Condition11Report> condition11;
  std::optional<std::string> error;
};

InstanceAudit audit_instance(const Recurrence& rec, const InitialConditions& init, const AuditOptions& opts = {});

enum class EntryKind { integer, rational, gaussian, floating };

struct InstanceSource {
  EntryKind kind = EntryKind::integer;
  int n_min = 2;
  int n_max = 4;
  long lo = -3;
  long hi = 3;
  /// Denominators are drawn from 1..max_den for rational/gaussian entries.
  long max_den = 4;
};

struct StatusCounts {
  int supported = 0;
  int violated = 0;
  int inconclusive = 0;
};

struct BatchSummary {
  int count = 0;
  StatusCounts part_i;
  StatusCounts part_ii;
  int asymptotically_simple = 0;
  int degenerate = 0;
  /// Simple instances where Vanishing/degenerate (or Stabilizing/non-degenerate) disagree.
  int condition11_mismatches = 0;
  int errors = 0;
};

struct BatchAudit {
  std::vector<InstanceAudit> instances;
  BatchSummary summary;
};

/// Deterministic random instance number `index` for `seed`.
std::pair<Recurrence, InitialConditions> random_instance(const InstanceSource& source, std::uint64_t seed,
                                                         std::uint64_t index);

/// Instances are generated per index from the seed, audited (in parallel when
/// threads > 1) and returned in index order, so the output is reproducible.
BatchAudit batch_audit(const InstanceSource& source, std::uint64_t seed, int count, const AuditOptions& opts = {},
                       unsigned threads = 1);

std::string to_string(Claim claim);
std::string to_string(ClaimStatus status);
std::string to_string(EntryKind kind);
EntryKind entry_kind_from_string(const std::string& text);

}  // namespace ratiolim
