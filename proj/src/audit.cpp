#include "ratiolim/audit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "ratiolim/error.hpp"

namespace ratiolim {

namespace {

Mode best_mode(const Recurrence& rec, const InitialConditions& init, bool prefer_exact = true) {
  return prefer_exact && exact_capable(rec, init) ? Mode::exact : Mode::floating;
}

}  // namespace

ClaimEvidence audit_part_i(const Recurrence& rec, const InitialConditions& init, int horizon) {
  const int n = rec.order();
  if (horizon < 4 * n) throw Error(ErrorCode::invalid_argument, "part (i) horizon must be at least 4n");

  ClaimEvidence ev;
  ev.claim = Claim::part_i;
  ev.horizon = horizon;
  ev.mode = best_mode(rec, init);

  // The claim is stated for a_{-n+1} != 0; re-anchor otherwise.
  const ShiftedHead head = shift_to_nonzero_head(rec, init, ev.mode);
  ev.shift = head.shift();

  const SequenceWindow fundamental = generate(rec, InitialConditions::fundamental(rec), horizon, ev.mode);
  ev.k0 = zero_run_stats(fundamental, n).first_index_after_which_all_nonzero;
  if (!ev.k0) {
    ev.status = ClaimStatus::inconclusive;
    ev.reason = "fundamental sequence has a zero at the horizon; no k0 exists within it";
    return ev;
  }
  // A k0 needs a full window of nonzero terms after it to be credible.
  if (horizon - *ev.k0 < n) {
    ev.status = ClaimStatus::inconclusive;
    ev.reason = "fundamental sequence has a zero within n terms of the horizon; no k0 exists within it";
    return ev;
  }

  const SequenceWindow seq = generate(rec, head.init, horizon, ev.mode);
  for (int k = *ev.k0 + n; k <= horizon; ++k) {
    if (seq.is_zero(k)) {
      ev.status = ClaimStatus::violated;
      ev.witness_index = k;
      ev.witness_value = seq.value(k);
      ev.reason = "F_" + std::to_string(k) + " = 0 although k > k0 + n - 1 = " + std::to_string(*ev.k0 + n - 1);
      return ev;
    }
  }
  ev.status = ClaimStatus::supported;
  ev.reason = "no zero term after k0 + n - 1 = " + std::to_string(*ev.k0 + n - 1);
  return ev;
}

double part_ii_tolerance(const RatioOptions& ratio, Complex lambda0) {
  return std::max(1e-6, 10.0 * ratio.tol) * (1.0 + std::abs(lambda0));
}

ClaimEvidence audit_part_ii(const Recurrence& rec, const InitialConditions& init, const AuditOptions& opts) {
  const RootSet roots = find_roots(MonicPolynomial::from_recurrence(rec), opts.roots);
  return audit_part_ii(rec, init, classify_dominance(roots, opts.dominance), opts);
}

ClaimEvidence audit_part_ii(const Recurrence& rec, const InitialConditions& init, const DominanceReport& dominance,
                            const AuditOptions& opts) {
  ClaimEvidence ev;
  ev.claim = Claim::part_ii;
  ev.mode = best_mode(rec, init, opts.prefer_exact);
  if (!dominance.is_asymptotically_simple) {
    ev.status = ClaimStatus::inconclusive;
    ev.reason = dominance.near_tie ? "near tie among the largest roots; simplicity is numerically ambiguous"
                                   : "characteristic polynomial is not asymptotically simple";
    return ev;
  }
  const Complex lambda0 = *dominance.lambda0;
  ev.lambda0 = lambda0;

  RatioOptions ratio_opts = opts.ratio;
  if (ev.mode == Mode::exact) ratio_opts.max_k = std::max(4 * rec.order(), std::min(ratio_opts.max_k, opts.exact_max_k));
  const RatioEstimate est = estimate_ratio_limit(rec, init, ratio_opts, ev.mode);
  ev.horizon = est.horizon;
  ev.k_converged = est.k_converged;
  ev.measured = est.value;

  std::optional<ExactComplex> exact_lambda0;
  if (exact_capable(rec, init)) exact_lambda0 = exact_root_near(MonicPolynomial::from_recurrence(rec), lambda0);
  ev.degeneracy = degeneracy_check(rec, init, lambda0, opts.degeneracy_tol, exact_lambda0);

  if (est.status != RatioStatus::converged) {
    ev.status = ClaimStatus::inconclusive;
    ev.reason = "ratio did not converge within the horizon";
    return ev;
  }
  if (std::abs(*est.value - lambda0) <= part_ii_tolerance(opts.ratio, lambda0)) {
    ev.status = ClaimStatus::supported;
    ev.reason = "ratio converged to lambda0";
  } else {
    ev.status = ClaimStatus::violated;
    ev.reason = "ratio converged to a value other than lambda0";
    if (ev.degeneracy->degenerate) ev.reason += "; the closed-form denominator vanishes at lambda0";
  }
  return ev;
}

InstanceAudit audit_instance(const Recurrence& rec, const InitialConditions& init, const AuditOptions& opts) {
  InstanceAudit out;
  out.exact = exact_capable(rec, init);
  out.float_weights.assign(rec.weights().begin(), rec.weights().end());
  out.float_init.assign(init.values().begin(), init.values().end());
  if (out.exact) {
    out.weights.assign(rec.exact_weights().begin(), rec.exact_weights().end());
    out.init.assign(init.exact_values().begin(), init.exact_values().end());
  }
  try {
    out.roots = find_roots(MonicPolynomial::from_recurrence(rec), opts.roots);
    out.dominance = classify_dominance(*out.roots, opts.dominance);
    out.part_i = audit_part_i(rec, init, std::max(opts.part_i_horizon, 4 * rec.order()));
    out.part_ii = audit_part_ii(rec, init, *out.dominance, opts);
    if (out.dominance->is_asymptotically_simple) {
      out.degeneracy = out.part_ii->degeneracy;
      out.condition11 = condition_11_estimate(rec, init, *out.dominance->lambda0, *out.dominance->nu,
                                              default_condition11_samples(opts.condition11_horizon),
                                              best_mode(rec, init, opts.prefer_exact));
    }
  } catch (const Error& e) {
    out.error = std::string(to_string(e.code())) + ": " + e.what();
  }
  return out;
}

// ---- random instances -------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Portable bounded draw; std::uniform_int_distribution is implementation-defined.
long draw(std::mt19937_64& rng, long lo, long hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return lo + static_cast<long>(x % range);
}

double draw_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Rational draw_rational(std::mt19937_64& rng, const InstanceSource& s, bool fractional) {
  const long num = draw(rng, s.lo, s.hi);
  const long den = fractional ? draw(rng, 1, std::max(1L, s.max_den)) : 1;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

ExactComplex draw_exact(std::mt19937_64& rng, const InstanceSource& s) {
  switch (s.kind) {
    case EntryKind::integer: return {draw_rational(rng, s, false)};
    case EntryKind::rational: return {draw_rational(rng, s, true)};
    case EntryKind::gaussian: {
      Rational re = draw_rational(rng, s, true);
      Rational im = draw_rational(rng, s, true);
      return {re, im};
    }
    case EntryKind::floating: break;
  }
  return {};
}

}  // namespace

std::pair<Recurrence, InitialConditions> random_instance(const InstanceSource& source, std::uint64_t seed,
                                                         std::uint64_t index) {
  if (source.n_min < 2 || source.n_max < source.n_min || source.hi < source.lo) {
    throw Error(ErrorCode::invalid_argument, "invalid random instance ranges");
  }
  if (source.lo == 0 && source.hi == 0) throw Error(ErrorCode::invalid_argument, "entry range must contain nonzero values");
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(index)));
  const int n = static_cast<int>(draw(rng, source.n_min, source.n_max));

  if (source.kind == EntryKind::floating) {
    const auto scalar = [&] {
      return Complex(static_cast<double>(source.lo) + (static_cast<double>(source.hi - source.lo)) * draw_unit(rng), 0.0);
    };
    std::vector<Complex> w(static_cast<std::size_t>(n));
    for (auto& b : w) b = scalar();
    while (w.back() == Complex{}) w.back() = scalar();
    Recurrence rec = Recurrence::create(std::move(w));
    std::vector<Complex> a(static_cast<std::size_t>(n));
    do {
      for (auto& v : a) v = scalar();
    } while (std::all_of(a.begin(), a.end(), [](Complex v) { return v == Complex{}; }));
    InitialConditions init = InitialConditions::create(rec, std::move(a));
    return {std::move(rec), std::move(init)};
  }

  std::vector<ExactComplex> w(static_cast<std::size_t>(n));
  for (auto& b : w) b = draw_exact(rng, source);
  while (w.back().is_zero()) w.back() = draw_exact(rng, source);
  Recurrence rec = Recurrence::create(std::move(w));
  std::vector<ExactComplex> a(static_cast<std::size_t>(n));
  do {
    for (auto& v : a) v = draw_exact(rng, source);
  } while (std::all_of(a.begin(), a.end(), [](const ExactComplex& v) { return v.is_zero(); }));
  InitialConditions init = InitialConditions::create(rec, std::move(a));
  return {std::move(rec), std::move(init)};
}

namespace {

void tally(StatusCounts& counts, ClaimStatus status) {
  switch (status) {
    case ClaimStatus::supported: ++counts.supported; break;
    case ClaimStatus::violated: ++counts.violated; break;
    case ClaimStatus::inconclusive: ++counts.inconclusive; break;
  }
}

}  // namespace

BatchAudit batch_audit(const InstanceSource& source, std::uint64_t seed, int count, const AuditOptions& opts,
                       unsigned threads) {
  BatchAudit out;
  if (count <= 0) return out;
  out.instances.resize(static_cast<std::size_t>(count));

  std::atomic<int> next{0};
  const auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      auto [rec, init] = random_instance(source, seed, static_cast<std::uint64_t>(i));
      out.instances[static_cast<std::size_t>(i)] = audit_instance(rec, init, opts);
    }
  };
  threads = std::clamp(threads, 1u, static_cast<unsigned>(count));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  BatchSummary& s = out.summary;
  s.count = count;
  for (const InstanceAudit& inst : out.instances) {
    if (inst.error) {
      ++s.errors;
      continue;
    }
    tally(s.part_i, inst.part_i->status);
    tally(s.part_ii, inst.part_ii->status);
    if (!inst.dominance->is_asymptotically_simple) continue;
    ++s.asymptotically_simple;
    const bool degenerate = inst.degeneracy && inst.degeneracy->degenerate;
    if (degenerate) ++s.degenerate;
    if (inst.condition11) {
      const Trend t = inst.condition11->trend;
      if ((t == Trend::vanishing && !degenerate) || (t == Trend::stabilizing && degenerate)) ++s.condition11_mismatches;
    }
  }
  return out;
}

std::string to_string(Claim claim) { return claim == Claim::part_i ? "PartI" : "PartII"; }

std::string to_string(ClaimStatus status) {
  switch (status) {
    case ClaimStatus::supported: return "Supported";
    case ClaimStatus::violated: return "Violated";
    case ClaimStatus::inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

std::string to_string(EntryKind kind) {
  switch (kind) {
    case EntryKind::integer: return "integer";
    case EntryKind::rational: return "rational";
    case EntryKind::gaussian: return "gaussian";
    case EntryKind::floating: return "float";
  }
  return "unknown";
}

EntryKind entry_kind_from_string(const std::string& text) {
  if (text == "integer") return EntryKind::integer;
  if (text == "rational") return EntryKind::rational;
  if (text == "gaussian") return EntryKind::gaussian;
  if (text == "float") return EntryKind::floating;
  throw Error(ErrorCode::invalid_argument, "unknown entry kind '" + text + "'");
}

}  // namespace ratiolim
