#include "ratiolim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ratiolim/audit.hpp"
#include "ratiolim/charpoly.hpp"
#include "ratiolim/complex_literal.hpp"
#include "ratiolim/criteria.hpp"
#include "ratiolim/error.hpp"
#include "ratiolim/oeis.hpp"
#include "ratiolim/ratio.hpp"
#include "ratiolim/recurrence.hpp"
#include "ratiolim/report.hpp"

namespace ratiolim::cli {

using nlohmann::json;

namespace {

struct RunConfig {
  std::string weights;
  std::string init;
  std::string mode;  // empty: command default
  double root_tol = 1e-10;
  double tie_tol = 1e-9;
  double near_tie_tol = 1e-6;
  double ratio_tol = 1e-10;
  double degeneracy_tol = kDefaultDegeneracyTol;
  int horizon = 60;
  int max_k = 10000;
  int window = 8;
  int count = 10;
  std::string format = "json";
  bool fail_on_violation = false;

  // audit-random
  std::uint64_t seed = 0;
  std::string n_range = "2..4";
  std::string kind = "integer";
  std::string entry_range = "-3..3";
  long max_den = 4;
  unsigned threads = 0;

  // family
  std::string p;
  int n_min = 2;
  int n_max = 10;

  // oeis
  std::string signature;
  std::string values = "1,2";
  std::string lengths = "2..4";
  int limit = 10;
  bool offline = false;
  std::string cache_dir;
};

struct Outcome {
  json document;
  std::string table;
  int exit_code = kExitOk;
};

// ---- formatting ---------------------------------------------------------------

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

std::string fmt(Complex z) {
  if (z.imag() == 0.0) return fmt(z.real());
  std::string out = z.real() == 0.0 ? "" : fmt(z.real());
  const double im = z.imag();
  if (!out.empty() && im >= 0) out += "+";
  out += fmt(im) + "i";
  return out;
}

std::string fmt(const std::optional<Complex>& z) { return z ? fmt(*z) : "-"; }

std::string fmt_term(const SequenceWindow& win, int k) {
  if (win.mode() == Mode::exact) return to_string(win.exact_term(k));
  const double scale = win.log_scale(k);
  if (scale == 0.0) return fmt(win.mantissa(k));
  const ScaledComplex s = win.scaled(k);
  const Complex v = win.value(k);
  if (std::isfinite(v.real()) && std::isfinite(v.imag()) && std::abs(v) > 0) return fmt(v);
  return "(" + fmt(s.mantissa) + ")*2^" + std::to_string(s.exponent2);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ---- input handling -----------------------------------------------------------

Mode resolve_mode(const RunConfig& cfg, Mode fallback) {
  if (cfg.mode.empty()) return fallback;
  return cfg.mode == "float" ? Mode::floating : Mode::exact;
}

std::vector<Complex> to_float(const std::vector<ExactComplex>& xs) {
  std::vector<Complex> out;
  out.reserve(xs.size());
  for (const ExactComplex& x : xs) out.push_back(x.to_complex());
  return out;
}

Recurrence make_recurrence(const std::string& text, Mode mode) {
  if (text.empty()) throw Error(ErrorCode::invalid_argument, "--weights is required");
  auto weights = parse_complex_list(text);
  return mode == Mode::exact ? Recurrence::create(std::move(weights)) : Recurrence::create(to_float(weights));
}

InitialConditions make_init(const Recurrence& rec, const std::string& text, Mode mode) {
  if (text.empty()) throw Error(ErrorCode::invalid_argument, "--init is required");
  auto values = parse_complex_list(text);
  return mode == Mode::exact ? InitialConditions::create(rec, std::move(values))
                             : InitialConditions::create(rec, to_float(values));
}

std::pair<int, int> parse_range(const std::string& text, const char* what) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::invalid_argument, std::string(what) + " must look like A..B, got '" + text + "'");
  }
}

std::vector<long> parse_integer_list(const std::string& text, const char* what) {
  std::vector<long> out;
  for (const ExactComplex& x : parse_complex_list(text)) {
    if (sgn(x.im()) != 0 || x.re().get_den() != 1 || !x.re().get_num().fits_slong_p()) {
      throw Error(ErrorCode::invalid_argument, std::string(what) + " entries must be integers");
    }
    out.push_back(x.re().get_num().get_si());
  }
  return out;
}

void check_horizon(const RunConfig& cfg, int n) {
  if (cfg.horizon < 4 * n) {
    throw Error(ErrorCode::invalid_argument,
                "--horizon must be at least 4n = " + std::to_string(4 * n) + " for order " + std::to_string(n));
  }
}

RootOptions root_options(const RunConfig& cfg) {
  RootOptions o;
  o.residual_tol = cfg.root_tol;
  return o;
}

DominanceOptions dominance_options(const RunConfig& cfg) {
  DominanceOptions o;
  o.tie_tol = cfg.tie_tol;
  o.near_tie_tol = std::max(cfg.near_tie_tol, cfg.tie_tol);
  return o;
}

RatioOptions ratio_options(const RunConfig& cfg) {
  return RatioOptions{cfg.ratio_tol, cfg.max_k, cfg.window};
}

AuditOptions audit_options(const RunConfig& cfg, Mode mode) {
  AuditOptions o;
  o.ratio = ratio_options(cfg);
  o.prefer_exact = mode == Mode::exact;
  o.exact_max_k = std::min(o.exact_max_k, cfg.max_k);
  o.degeneracy_tol = cfg.degeneracy_tol;
  o.part_i_horizon = cfg.horizon;
  o.roots = root_options(cfg);
  o.dominance = dominance_options(cfg);
  return o;
}

json base_inputs(const RunConfig& cfg, Mode mode) {
  return {{"weights", cfg.weights}, {"mode", report::mode_name(mode)}};
}

// ---- commands -----------------------------------------------------------------

Outcome cmd_generate(const RunConfig& cfg) {
  const Mode mode = resolve_mode(cfg, Mode::exact);
  const Recurrence rec = make_recurrence(cfg.weights, mode);
  const InitialConditions init = make_init(rec, cfg.init, mode);
  const SequenceWindow win = generate(rec, init, cfg.count, mode);
  const ZeroRunReport zeros = zero_run_stats(win, rec.order());

  json inputs = base_inputs(cfg, mode);
  inputs["init"] = cfg.init;
  inputs["count"] = cfg.count;
  Outcome out;
  out.document = report::document("generate", std::move(inputs),
                                  {{"recurrence", report::scalars_json(rec)},
                                   {"initial_conditions", report::scalars_json(init)},
                                   {"sequence", report::to_json(win)},
                                   {"zero_runs", report::to_json(zeros)}});
  std::ostringstream t;
  t << "k\tF_k\n";
  for (int k = win.start_index(); k <= win.last_index(); ++k) t << k << '\t' << fmt_term(win, k) << '\n';
  out.table = t.str();
  return out;
}

Outcome cmd_analyze(const RunConfig& cfg) {
  const Mode mode = resolve_mode(cfg, Mode::exact);
  const Recurrence rec = make_recurrence(cfg.weights, mode);
  const MonicPolynomial poly = MonicPolynomial::from_recurrence(rec);
  const RootSet roots = find_roots(poly, root_options(cfg));
  const DominanceReport dom = classify_dominance(roots, dominance_options(cfg));
  const CriterionResult ostrowski = ostrowski_check(rec);
  const std::vector<CriterionResult> dubeau = dubeau_check(rec, roots);

  json dubeau_json = json::array();
  for (const CriterionResult& r : dubeau) dubeau_json.push_back(report::to_json(r));
  json results = {{"polynomial", report::to_json(poly)},
                  {"roots", report::to_json(roots)},
                  {"dominance", report::to_json(dom)},
                  {"criteria", {{"ostrowski", report::to_json(ostrowski)}, {"dubeau", std::move(dubeau_json)}}}};
  if (poly.is_exact()) {
    json structure = json::array();
    for (const auto& [deg, mult] : exact_multiplicity_structure(poly)) {
      structure.push_back({{"degree", deg}, {"multiplicity", mult}});
    }
    results["exact_multiplicity_structure"] = std::move(structure);
  }

  Outcome out;
  out.document = report::document("analyze", base_inputs(cfg, mode), std::move(results));
  std::ostringstream t;
  t << "root\tmodulus\tmultiplicity\n";
  for (const Root& r : roots.roots) t << fmt(r.value) << '\t' << fmt(std::abs(r.value)) << '\t' << r.multiplicity << '\n';
  t << "asymptotically simple: " << yes_no(dom.is_asymptotically_simple) << (dom.near_tie ? " (near tie)" : "") << '\n';
  t << "lambda0: " << fmt(dom.lambda0) << "  nu: " << (dom.nu ? std::to_string(*dom.nu) : "-") << '\n';
  t << "ostrowski: " << to_string(ostrowski.status);
  if (ostrowski.ostrowski) t << " (gcd " << ostrowski.ostrowski->gcd << ")";
  if (!ostrowski.reason.empty()) t << " (" << ostrowski.reason << ")";
  t << '\n';
  for (const CriterionResult& r : dubeau) {
    t << "dubeau at " << fmt(r.dubeau->root) << ": " << to_string(r.status) << " (lhs " << fmt(r.dubeau->lhs) << ")\n";
  }
  out.table = t.str();
  return out;
}

Outcome cmd_ratio(const RunConfig& cfg) {
  const Mode mode = resolve_mode(cfg, Mode::floating);
  const Recurrence rec = make_recurrence(cfg.weights, mode);
  const InitialConditions init = make_init(rec, cfg.init, mode);
  const RatioEstimate est = estimate_ratio_limit(rec, init, ratio_options(cfg), mode);

  json inputs = base_inputs(cfg, mode);
  inputs["init"] = cfg.init;
  inputs["ratio_tol"] = cfg.ratio_tol;
  inputs["max_k"] = cfg.max_k;
  inputs["stability_window"] = cfg.window;
  Outcome out;
  out.document = report::document("ratio", std::move(inputs), {{"estimate", report::to_json(est)}});
  std::ostringstream t;
  t << "status: " << to_string(est.status) << '\n';
  t << "limit: " << fmt(est.value) << '\n';
  t << "k_converged: " << (est.k_converged ? std::to_string(*est.k_converged) : "-") << '\n';
  t << "skipped zero indices:";
  const std::size_t shown = std::min<std::size_t>(est.skipped_zero_indices.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) t << ' ' << est.skipped_zero_indices[i];
  if (shown < est.skipped_zero_indices.size()) t << " ... (" << est.skipped_zero_indices.size() << " total)";
  t << '\n';
  out.table = t.str();
  out.exit_code = est.status == RatioStatus::converged ? kExitOk : kExitUnavailable;
  return out;
}

Outcome cmd_audit(const RunConfig& cfg) {
  const Mode mode = resolve_mode(cfg, Mode::exact);
  const Recurrence rec = make_recurrence(cfg.weights, mode);
  const InitialConditions init = make_init(rec, cfg.init, mode);
  check_horizon(cfg, rec.order());
  const InstanceAudit audit = audit_instance(rec, init, audit_options(cfg, mode));
  if (audit.error) throw Error(ErrorCode::no_convergence, *audit.error);

  json findings = json::array();
  bool violated = false;
  for (const ClaimEvidence* ev : {&*audit.part_i, &*audit.part_ii}) {
    findings.push_back(report::finding(*ev));
    violated = violated || ev->status == ClaimStatus::violated;
  }
  json inputs = base_inputs(cfg, mode);
  inputs["init"] = cfg.init;
  inputs["horizon"] = cfg.horizon;
  Outcome out;
  out.document = report::document("audit", std::move(inputs), report::to_json(audit), std::move(findings));

  std::ostringstream t;
  t << "asymptotically simple: " << yes_no(audit.dominance->is_asymptotically_simple) << '\n';
  t << "lambda0: " << fmt(audit.dominance->lambda0) << '\n';
  for (const ClaimEvidence* ev : {&*audit.part_i, &*audit.part_ii}) {
    t << to_string(ev->claim) << ": " << to_string(ev->status) << " (" << ev->reason << ")\n";
  }
  if (audit.degeneracy) {
    t << "denominator: " << fmt(audit.degeneracy->denominator) << (audit.degeneracy->degenerate ? " (degenerate)" : "")
      << '\n';
  }
  if (audit.condition11) t << "condition trend: " << to_string(audit.condition11->trend) << '\n';
  out.table = t.str();
  if (violated && cfg.fail_on_violation) out.exit_code = kExitViolation;
  return out;
}

Outcome cmd_audit_random(const RunConfig& cfg) {
  const Mode mode = resolve_mode(cfg, Mode::exact);
  InstanceSource source;
  source.kind = entry_kind_from_string(cfg.kind);
  std::tie(source.n_min, source.n_max) = parse_range(cfg.n_range, "--n");
  std::tie(source.lo, source.hi) = parse_range(cfg.entry_range, "--range");
  source.max_den = cfg.max_den;
  if (source.n_min < 2 || source.n_max < source.n_min) throw Error(ErrorCode::invalid_argument, "--n needs 2 <= A <= B");
  if (source.lo > source.hi) throw Error(ErrorCode::invalid_argument, "--range needs A <= B");
  if (source.max_den < 1) throw Error(ErrorCode::invalid_argument, "--max-den must be positive");
  if (cfg.count < 1) throw Error(ErrorCode::invalid_argument, "--count must be positive");
  check_horizon(cfg, source.n_max);

  const unsigned threads = cfg.threads > 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  const BatchAudit batch = batch_audit(source, cfg.seed, cfg.count, audit_options(cfg, mode), threads);

  json instances = json::array();
  json findings = json::array();
  bool violated = false;
  for (std::size_t i = 0; i < batch.instances.size(); ++i) {
    const InstanceAudit& a = batch.instances[i];
    json row = report::to_json(a);
    row["index"] = i;
    instances.push_back(std::move(row));
    if (a.error) continue;
    for (const ClaimEvidence* ev : {&*a.part_i, &*a.part_ii}) {
      if (ev->status != ClaimStatus::violated) continue;
      json f = report::finding(*ev);
      f["instance"] = i;
      findings.push_back(std::move(f));
      violated = true;
    }
  }
  json inputs = {{"seed", cfg.seed},
                 {"count", cfg.count},
                 {"n", cfg.n_range},
                 {"kind", cfg.kind},
                 {"range", cfg.entry_range},
                 {"max_den", cfg.max_den},
                 {"mode", report::mode_name(mode)},
                 {"horizon", cfg.horizon}};
  Outcome out;
  out.document = report::document("audit-random", std::move(inputs),
                                  {{"summary", report::to_json(batch.summary)}, {"instances", std::move(instances)}},
                                  std::move(findings));
  const BatchSummary& s = batch.summary;
  std::ostringstream t;
  t << "instances: " << s.count << "  errors: " << s.errors << '\n';
  t << "claim\tsupported\tviolated\tinconclusive\n";
  t << "part_i\t" << s.part_i.supported << '\t' << s.part_i.violated << '\t' << s.part_i.inconclusive << '\n';
  t << "part_ii\t" << s.part_ii.supported << '\t' << s.part_ii.violated << '\t' << s.part_ii.inconclusive << '\n';
  t << "asymptotically simple: " << s.asymptotically_simple << "  degenerate: " << s.degenerate
    << "  condition mismatches: " << s.condition11_mismatches << '\n';
  out.table = t.str();
  if (violated && cfg.fail_on_violation) out.exit_code = kExitViolation;
  return out;
}

Outcome cmd_family(const RunConfig& cfg) {
  if (cfg.p.empty()) throw Error(ErrorCode::invalid_argument, "--p is required");
  const ExactComplex p = parse_complex_literal(cfg.p);
  if (sgn(p.im()) != 0 || sgn(p.re()) <= 0) throw Error(ErrorCode::invalid_argument, "--p must be a positive real");
  if (cfg.n_min < 2 || cfg.n_max < cfg.n_min) throw Error(ErrorCode::invalid_argument, "--n-max must be >= --n-min >= 2");
  const double target = p.re().get_d() + 1.0;

  json rows = json::array();
  std::ostringstream t;
  t << "n\tlambda0\tratio\tgap\n";
  bool monotone = true;
  bool gap_shrinks = true;
  std::optional<double> prev;
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    const Recurrence rec = Recurrence::create(std::vector<ExactComplex>(static_cast<std::size_t>(n), p));
    const RootSet roots = find_roots(MonicPolynomial::from_recurrence(rec), root_options(cfg));
    const DominanceReport dom = classify_dominance(roots, dominance_options(cfg));
    if (!dom.lambda0) throw Error(ErrorCode::no_convergence, "no dominant root for n = " + std::to_string(n));
    const double lambda0 = dom.lambda0->real();
    const RatioEstimate est =
        estimate_ratio_limit(rec, InitialConditions::fundamental(rec), ratio_options(cfg), Mode::floating);
    const double gap = std::abs(target - lambda0);
    if (prev) {
      monotone = monotone && lambda0 > *prev;
      gap_shrinks = gap_shrinks && gap < std::abs(target - *prev);
    }
    prev = lambda0;
    rows.push_back({{"n", n},
                    {"lambda0", lambda0},
                    {"gap", gap},
                    {"asymptotically_simple", dom.is_asymptotically_simple},
                    {"ratio", report::to_json(est)}});
    t << n << '\t' << fmt(lambda0) << '\t' << fmt(est.value) << '\t' << fmt(gap) << '\n';
  }
  t << "monotone increasing: " << yes_no(monotone) << "  gap shrinking: " << yes_no(gap_shrinks) << '\n';

  json findings = json::array();
  if (!monotone) findings.push_back({{"claim", "family_monotone"}, {"status", "Violated"}});
  if (!gap_shrinks) findings.push_back({{"claim", "family_gap_shrinks"}, {"status", "Violated"}});
  Outcome out;
  out.document = report::document("family", {{"p", report::to_json(p)}, {"n_min", cfg.n_min}, {"n_max", cfg.n_max}},
                                  {{"limit", target}, {"rows", std::move(rows)}, {"monotone_increasing", monotone},
                                   {"gap_shrinking", gap_shrinks}},
                                  std::move(findings));
  out.table = t.str();
  if ((!monotone || !gap_shrinks) && cfg.fail_on_violation) out.exit_code = kExitViolation;
  return out;
}

oeis::Client make_client(const RunConfig& cfg) {
  oeis::ClientOptions opts;
  opts.cache_dir = cfg.cache_dir.empty() ? default_cache_dir() : cfg.cache_dir;
  opts.offline = cfg.offline;
  std::shared_ptr<oeis::HttpTransport> transport;
  if (!cfg.offline) transport = oeis::make_https_transport();
  return oeis::Client(opts, std::move(transport), std::make_shared<oeis::SystemClock>());
}

json oeis_inputs(const RunConfig& cfg) {
  return {{"limit", cfg.limit}, {"offline", cfg.offline}};
}

Outcome cmd_oeis_search(const RunConfig& cfg) {
  const std::vector<long> sig = parse_integer_list(cfg.signature, "--signature");
  oeis::Client client = make_client(cfg);
  const auto entries = client.search_by_signature(sig, cfg.limit);
  json list = json::array();
  std::ostringstream t;
  t << "id\tname\n";
  for (const auto& e : entries) {
    list.push_back(report::to_json(e));
    t << e.id << '\t' << e.name << '\n';
  }
  json inputs = oeis_inputs(cfg);
  inputs["signature"] = sig;
  Outcome out;
  out.document = report::document("oeis search", std::move(inputs), {{"entries", std::move(list)}});
  out.table = t.str();
  return out;
}

void verification_table(std::ostringstream& t, const std::vector<oeis::VerificationRecord>& records) {
  t << "id\tsignature\tstatus\ttail ratio\tlambda0\tagrees\n";
  for (const auto& r : records) {
    std::string sig;
    for (std::size_t i = 0; i < r.signature_used.size(); ++i) sig += (i ? "," : "") + std::to_string(r.signature_used[i]);
    t << r.id << '\t' << sig << '\t' << r.status << '\t' << fmt(r.measured_tail_ratio) << '\t' << fmt(r.lambda0)
      << '\t' << yes_no(r.agrees) << '\n';
  }
}

Outcome cmd_oeis_verify(const RunConfig& cfg) {
  const std::vector<long> sig = parse_integer_list(cfg.signature, "--signature");
  oeis::Client client = make_client(cfg);
  const auto entries = client.search_by_signature(sig, cfg.limit);
  std::vector<oeis::VerificationRecord> records;
  json list = json::array();
  for (const auto& e : entries) {
    try {
      records.push_back(oeis::verify_entry(e, sig));
    } catch (const Error& ex) {
      oeis::VerificationRecord r;
      r.id = e.id;
      r.name = e.name;
      r.signature_used = sig;
      r.status = ex.code() == ErrorCode::insufficient_terms ? "insufficient_terms" : "error";
      r.detail = ex.what();
      records.push_back(std::move(r));
    }
    list.push_back(report::to_json(records.back()));
  }
  json inputs = oeis_inputs(cfg);
  inputs["signature"] = sig;
  Outcome out;
  out.document = report::document("oeis verify", std::move(inputs), {{"records", std::move(list)}});
  std::ostringstream t;
  verification_table(t, records);
  out.table = t.str();
  return out;
}

Outcome cmd_oeis_batch(const RunConfig& cfg) {
  const std::vector<long> values = parse_integer_list(cfg.values, "--values");
  const auto [lo, hi] = parse_range(cfg.lengths, "--lengths");
  if (lo < 2 || hi < lo) throw Error(ErrorCode::invalid_argument, "--lengths needs 2 <= A <= B");
  std::vector<int> lengths;
  for (int n = lo; n <= hi; ++n) lengths.push_back(n);
  oeis::Client client = make_client(cfg);
  const auto result = oeis::batch_verify(client, oeis::constant_signatures(values, lengths), cfg.limit);
  json list = json::array();
  for (const auto& r : result.records) list.push_back(report::to_json(r));
  json inputs = oeis_inputs(cfg);
  inputs["values"] = values;
  inputs["lengths"] = cfg.lengths;
  Outcome out;
  out.document = report::document("oeis batch", std::move(inputs),
                                  {{"summary", report::to_json(result.summary)}, {"records", std::move(list)}});
  std::ostringstream t;
  verification_table(t, result.records);
  const auto& s = result.summary;
  t << "records: " << s.records << "  agrees: " << s.agrees << "  disagrees: " << s.disagrees
    << "  inconsistent: " << s.inconsistent << "  insufficient: " << s.insufficient
    << "  unavailable: " << s.unavailable << '\n';
  out.table = t.str();
  if (s.records > 0 && s.unavailable == s.records) out.exit_code = kExitUnavailable;
  return out;
}

// ---- argument plumbing ---------------------------------------------------------

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::no_convergence:
    case ErrorCode::network_unavailable:
    case ErrorCode::insufficient_terms:
    case ErrorCode::root_modulus_zero:
    case ErrorCode::zero_run_bound_violated:
      return kExitUnavailable;
    default:
      return kExitUsage;
  }
}

bool looks_like_negative_value(const std::string& tok) {
  if (tok.rfind("\xE2\x88\x92", 0) == 0) return true;  // U+2212
  if (tok.size() < 2 || tok[0] != '-') return false;
  const char c = tok[1];
  return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'i';
}

// "--init -1,2" would otherwise be read as a short option.
std::vector<std::string> glue_negative_values(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) == 0 && a.size() > 2 && a.find('=') == std::string::npos && i + 1 < args.size() &&
        looks_like_negative_value(args[i + 1])) {
      out.push_back(a + "=" + args[i + 1]);
      ++i;
    } else {
      out.push_back(a);
    }
  }
  return out;
}

std::string config_value(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + config_value(v[i]);
    return out;
  }
  return v.dump();
}

bool has_option(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(),
                     [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

// Appends values from the --config JSON object for every option the selected
// subcommand knows and the command line does not already set.
std::vector<std::string> merge_config(std::vector<std::string> args, CLI::App& app) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
      break;
    }
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot read config file '" + path + "'");
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, "config file '" + path + "': " + e.what());
  }
  if (!cfg.is_object()) throw Error(ErrorCode::parse_error, "config file '" + path + "' must hold a JSON object");

  CLI::App* target = &app;
  for (const std::string& a : args) {
    if (a.rfind("-", 0) == 0) continue;
    CLI::App* sub = target->get_subcommand_no_throw(a);
    if (sub == nullptr) break;
    target = sub;
  }
  for (const auto& [key, value] : cfg.items()) {
    std::string name = key;
    std::replace(name.begin(), name.end(), '_', '-');
    const std::string flag = "--" + name;
    const CLI::Option* opt = target->get_option_no_throw(flag);
    if (opt == nullptr) throw Error(ErrorCode::invalid_argument, "config key '" + key + "' is not an option here");
    if (has_option(args, flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else {
      args.push_back(flag + "=" + config_value(value));
    }
  }
  return args;
}

void add_format(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "table"}));
}

void add_mode(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--mode", cfg.mode, "Arithmetic: exact (rational inputs) or float")
      ->check(CLI::IsMember({"exact", "float"}));
}

void add_root_tolerances(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--root-tol", cfg.root_tol, "Relative residual accepted from the root solver")
      ->check(CLI::PositiveNumber);
  sub->add_option("--tie-tol", cfg.tie_tol, "Relative modulus tolerance for dominant-root ties")
      ->check(CLI::PositiveNumber);
  sub->add_option("--near-tie-tol", cfg.near_tie_tol, "Band that flags a near tie")->check(CLI::PositiveNumber);
}

void add_ratio_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--ratio-tol", cfg.ratio_tol, "Relative step tolerance for ratio convergence")
      ->check(CLI::PositiveNumber);
  sub->add_option("--max-k", cfg.max_k, "Last index generated by the ratio estimator")->check(CLI::PositiveNumber);
  sub->add_option("--stability-window", cfg.window, "Consecutive small steps required")->check(CLI::PositiveNumber);
}

void add_audit_options(CLI::App* sub, RunConfig& cfg) {
  add_mode(sub, cfg);
  add_root_tolerances(sub, cfg);
  add_ratio_options(sub, cfg);
  sub->add_option("--degeneracy-tol", cfg.degeneracy_tol, "Relative size below which the limit denominator is zero")
      ->check(CLI::PositiveNumber);
  sub->add_option("--horizon", cfg.horizon, "Last index checked for nonzero terms (at least 4n)");
  sub->add_flag("--fail-on-violation", cfg.fail_on_violation, "Exit with status 3 if a claim is violated");
  add_format(sub, cfg);
}

void add_oeis_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--limit", cfg.limit, "Maximum entries per signature")->check(CLI::PositiveNumber);
  sub->add_flag("--offline", cfg.offline, "Answer from the cache only");
  sub->add_option("--cache-dir", cfg.cache_dir, "Cache directory")->envname("RATIOLIM_CACHE_DIR");
  add_format(sub, cfg);
}

}  // namespace

std::string default_cache_dir() {
  if (const char* env = std::getenv("RATIOLIM_CACHE_DIR"); env != nullptr && *env != '\0') return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg != nullptr && *xdg != '\0') {
    return std::string(xdg) + "/ratiolim/oeis";
  }
  if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0') {
    return std::string(home) + "/.cache/ratiolim/oeis";
  }
  return ".ratiolim-cache";
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Weighted generalized Fibonacci sequences: roots, ratio limits and audits", "ratiolim"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");
  app.add_option("--config", "JSON file with option values (keys are option names)");

  std::function<Outcome()> action;

  CLI::App* gen = app.add_subcommand("generate", "Generate terms F_{-n+1} .. F_count");
  gen->add_option("--weights", cfg.weights, "Comma-separated weights b_1..b_n")->required();
  gen->add_option("--init", cfg.init, "Initial conditions a_{-n+1}..a_0")->required();
  gen->add_option("--count", cfg.count, "Last index to generate")->check(CLI::PositiveNumber);
  add_mode(gen, cfg);
  add_format(gen, cfg);
  gen->callback([&] { action = [&] { return cmd_generate(cfg); }; });

  CLI::App* analyze = app.add_subcommand("analyze", "Roots, dominance and criteria for the characteristic polynomial");
  analyze->add_option("--weights", cfg.weights, "Comma-separated weights b_1..b_n")->required();
  add_mode(analyze, cfg);
  add_root_tolerances(analyze, cfg);
  add_format(analyze, cfg);
  analyze->callback([&] { action = [&] { return cmd_analyze(cfg); }; });

  CLI::App* ratio = app.add_subcommand("ratio", "Estimate the limit of F_{k+1}/F_k");
  ratio->add_option("--weights", cfg.weights, "Comma-separated weights b_1..b_n")->required();
  ratio->add_option("--init", cfg.init, "Initial conditions a_{-n+1}..a_0")->required();
  add_mode(ratio, cfg);
  add_ratio_options(ratio, cfg);
  add_format(ratio, cfg);
  ratio->callback([&] { action = [&] { return cmd_ratio(cfg); }; });

  CLI::App* audit = app.add_subcommand("audit", "Check both ratio-limit claims on one instance");
  audit->add_option("--weights", cfg.weights, "Comma-separated weights b_1..b_n")->required();
  audit->add_option("--init", cfg.init, "Initial conditions a_{-n+1}..a_0")->required();
  add_audit_options(audit, cfg);
  audit->callback([&] { action = [&] { return cmd_audit(cfg); }; });

  CLI::App* audit_random = app.add_subcommand("audit-random", "Audit a reproducible batch of random instances");
  audit_random->add_option("--seed", cfg.seed, "Batch seed");
  audit_random->add_option("--count", cfg.count, "Number of instances")->check(CLI::PositiveNumber);
  audit_random->add_option("--n", cfg.n_range, "Order range A..B");
  audit_random->add_option("--kind", cfg.kind, "Entry kind")
      ->check(CLI::IsMember({"integer", "rational", "gaussian", "float"}));
  audit_random->add_option("--range", cfg.entry_range, "Numerator range A..B");
  audit_random->add_option("--max-den", cfg.max_den, "Largest denominator for rational entries");
  audit_random->add_option("--threads", cfg.threads, "Worker threads (0: hardware concurrency)");
  add_audit_options(audit_random, cfg);
  audit_random->callback([&] { action = [&] { return cmd_audit_random(cfg); }; });

  CLI::App* family = app.add_subcommand("family", "Dominant roots of the constant-weight family (p, ..., p)");
  family->add_option("--p", cfg.p, "Positive weight p (rational literal allowed)")->required();
  family->add_option("--n-min", cfg.n_min, "First order");
  family->add_option("--n-max", cfg.n_max, "Last order");
  add_root_tolerances(family, cfg);
  add_ratio_options(family, cfg);
  family->add_flag("--fail-on-violation", cfg.fail_on_violation, "Exit with status 3 if monotonicity fails");
  add_format(family, cfg);
  family->callback([&] { action = [&] { return cmd_family(cfg); }; });

  CLI::App* oeis_cmd = app.add_subcommand("oeis", "OEIS signature search and verification");
  oeis_cmd->require_subcommand(1);
  CLI::App* search = oeis_cmd->add_subcommand("search", "List entries mentioning a signature");
  search->add_option("--signature", cfg.signature, "Integer signature b_1,..,b_n")->required();
  add_oeis_options(search, cfg);
  search->callback([&] { action = [&] { return cmd_oeis_search(cfg); }; });
  CLI::App* verify = oeis_cmd->add_subcommand("verify", "Check entries against the recurrence and lambda0");
  verify->add_option("--signature", cfg.signature, "Integer signature b_1,..,b_n")->required();
  add_oeis_options(verify, cfg);
  verify->callback([&] { action = [&] { return cmd_oeis_verify(cfg); }; });
  CLI::App* batch = oeis_cmd->add_subcommand("batch", "Verify constant signatures (m, ..., m)");
  batch->add_option("--values", cfg.values, "Values m");
  batch->add_option("--lengths", cfg.lengths, "Signature lengths A..B");
  add_oeis_options(batch, cfg);
  batch->callback([&] { action = [&] { return cmd_oeis_batch(cfg); }; });

  try {
    std::vector<std::string> args = merge_config(glue_negative_values(raw_args), app);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    Outcome result = action();
    if (cfg.format == "table") {
      out << result.table;
    } else {
      out << result.document.dump(2) << '\n';
    }
    return result.exit_code;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace ratiolim::cli
