#include "ratiolim/oeis.hpp"

#include <cctype>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ratiolim/charpoly.hpp"
#include "ratiolim/error.hpp"
#include "ratiolim/recurrence.hpp"

namespace ratiolim::oeis {

using nlohmann::json;

std::chrono::steady_clock::time_point SystemClock::now() { return std::chrono::steady_clock::now(); }

void SystemClock::sleep_until(std::chrono::steady_clock::time_point t) { std::this_thread::sleep_until(t); }

std::string SystemClock::wall_time() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

#ifndef RATIOLIM_LIVE_OEIS
std::unique_ptr<HttpTransport> make_https_transport() { return nullptr; }
#endif

std::string signature_query(const std::vector<long>& signature) {
  std::string out = "\"signature (";
  for (std::size_t i = 0; i < signature.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(signature[i]);
  }
  return out + ")\"";
}

std::string url_encode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 15]);
    }
  }
  return out;
}

std::string stable_hash_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

std::optional<std::vector<long>> parse_signature(std::string_view text) {
  static const std::regex pattern(R"(signature\s*\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\))");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_search(text.begin(), text.end(), m, pattern)) return std::nullopt;
  std::vector<long> out;
  std::stringstream in(m[1].str());
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stol(item));
  return out;
}

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::parse_error, "OEIS response: " + what); }

OeisEntry entry_from_json(const json& raw) {
  if (!raw.is_object()) parse_fail("result is not an object");
  OeisEntry e;
  if (!raw.contains("number") || !raw["number"].is_number_integer()) parse_fail("missing 'number'");
  std::ostringstream id;
  id << 'A' << std::setw(6) << std::setfill('0') << raw["number"].get<long>();
  e.id = id.str();
  e.name = raw.value("name", std::string{});
  const std::string data = raw.value("data", std::string{});
  std::stringstream in(data);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      e.terms.emplace_back(item);
    } catch (const std::invalid_argument&) {
      parse_fail("bad term '" + item + "' in " + e.id);
    }
  }
  if (e.terms.empty()) parse_fail("entry " + e.id + " has no terms");
  for (const char* field : {"link", "formula", "comment", "name"}) {
    if (!raw.contains(field)) continue;
    const json& v = raw[field];
    if (v.is_string()) {
      e.signature = parse_signature(v.get<std::string>());
    } else if (v.is_array()) {
      for (const json& line : v) {
        if (line.is_string()) {
          if (auto sig = parse_signature(line.get<std::string>())) {
            e.signature = std::move(sig);
            break;
          }
        }
      }
    }
    if (e.signature) break;
  }
  return e;
}

json raw_results(std::string_view body) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& ex) {
    parse_fail(std::string("invalid JSON: ") + ex.what());
  }
  if (doc.is_null()) return json::array();
  if (doc.is_array()) return doc;
  if (doc.is_object()) {
    if (!doc.contains("results") || doc["results"].is_null()) return json::array();
    if (doc["results"].is_array()) return doc["results"];
  }
  parse_fail("unexpected document shape");
}

}  // namespace

std::vector<OeisEntry> parse_search_response(std::string_view body) {
  std::vector<OeisEntry> out;
  for (const json& raw : raw_results(body)) out.push_back(entry_from_json(raw));
  return out;
}

Client::Client(ClientOptions opts, std::shared_ptr<HttpTransport> transport, std::shared_ptr<Clock> clock)
    : opts_(std::move(opts)), transport_(std::move(transport)), clock_(std::move(clock)) {
  if (!clock_) clock_ = std::make_shared<SystemClock>();
}

std::filesystem::path Client::cache_path(const std::string& query) const {
  return opts_.cache_dir / ("oeis-" + stable_hash_hex(query) + ".json");
}

HttpResponse Client::fetch(const std::string& path_and_query) {
  std::lock_guard lock(request_mutex_);
  if (last_request_) {
    const auto earliest = *last_request_ + opts_.min_interval;
    if (clock_->now() < earliest) clock_->sleep_until(earliest);
  }
  last_request_ = clock_->now();
  return transport_->get(path_and_query);
}

std::vector<OeisEntry> Client::search_by_signature(const std::vector<long>& signature, int limit) {
  if (signature.empty()) throw Error(ErrorCode::invalid_argument, "empty signature");
  return search(signature_query(signature), limit);
}

std::vector<OeisEntry> Client::search(const std::string& query, int limit) {
  if (limit < 1) throw Error(ErrorCode::invalid_argument, "limit must be at least 1");
  const std::filesystem::path path = cache_path(query);

  std::optional<json> cached;
  if (!opts_.cache_dir.empty() && std::filesystem::exists(path)) {
    std::ifstream in(path);
    try {
      cached = json::parse(in);
    } catch (const json::parse_error& ex) {
      throw Error(ErrorCode::parse_error, "corrupt cache file " + path.string() + ": " + ex.what());
    }
  }
  const auto from_cache = [&] {
    std::vector<OeisEntry> out;
    for (const json& raw : (*cached)["entries"]) {
      if (static_cast<int>(out.size()) >= limit) break;
      out.push_back(entry_from_json(raw));
    }
    return out;
  };
  if (cached) {
    const bool complete = cached->value("complete", false);
    const auto have = static_cast<int>((*cached)["entries"].size());
    if (opts_.offline || complete || have >= limit) return from_cache();
  }
  if (opts_.offline || !transport_) {
    throw Error(ErrorCode::network_unavailable,
                "no cached results for " + query + " in '" + opts_.cache_dir.string() +
                    "' and live queries are disabled; drop --offline or point --cache-dir at a populated cache");
  }

  json entries = json::array();
  bool complete = false;
  try {
    for (int start = 0; start < limit; start += opts_.page_size) {
      const HttpResponse res =
          fetch("/search?q=" + url_encode(query) + "&fmt=json&start=" + std::to_string(start));
      if (res.status != 200) {
        throw Error(ErrorCode::network_unavailable, "OEIS returned HTTP " + std::to_string(res.status));
      }
      json page;
      try {
        page = raw_results(res.body);
      } catch (const Error&) {
        if (!opts_.cache_dir.empty()) {
          std::filesystem::create_directories(opts_.cache_dir);
          std::ofstream(opts_.cache_dir / ("oeis-" + stable_hash_hex(query) + ".raw.txt")) << res.body;
        }
        throw;
      }
      for (const json& raw : page) entries.push_back(raw);
      if (static_cast<int>(page.size()) < opts_.page_size) {
        complete = true;
        break;
      }
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::network_unavailable && cached) return from_cache();
    throw;
  }

  std::vector<OeisEntry> out;
  for (const json& raw : entries) {
    if (static_cast<int>(out.size()) >= limit) break;
    out.push_back(entry_from_json(raw));
  }
  if (!opts_.cache_dir.empty()) {
    std::filesystem::create_directories(opts_.cache_dir);
    json doc = {{"query", query}, {"fetched_at", clock_->wall_time()}, {"complete", complete}, {"entries", entries}};
    std::ofstream(path) << doc.dump(2) << '\n';
  }
  return out;
}

// ---- verification -----------------------------------------------------------

namespace {

Complex mpz_ratio(const mpz_class& num, const mpz_class& den) {
  return scaled_ratio(ExactComplex(Rational(num)).to_scaled(), ExactComplex(Rational(den)).to_scaled());
}

// First index k >= n where the recurrence fails, or -1.
long first_violation(const std::vector<mpz_class>& t, const std::vector<long>& sig, std::size_t from) {
  const std::size_t n = sig.size();
  for (std::size_t k = std::max(from, n); k < t.size(); ++k) {
    mpz_class sum = 0;
    for (std::size_t i = 1; i <= n; ++i) sum += sig[i - 1] * t[k - i];
    if (sum != t[k]) return static_cast<long>(k);
  }
  return -1;
}

}  // namespace

VerificationRecord verify_entry(const OeisEntry& entry, const std::vector<long>& signature, double tail_tol) {
  const std::size_t n = signature.size();
  if (n < 2) throw Error(ErrorCode::invalid_argument, "signature needs at least two weights");
  if (entry.terms.size() < 2 * n + 4) {
    throw Error(ErrorCode::insufficient_terms, entry.id + " has " + std::to_string(entry.terms.size()) +
                                                   " terms, need " + std::to_string(2 * n + 4));
  }
  VerificationRecord rec;
  rec.id = entry.id;
  rec.name = entry.name;
  rec.signature_used = signature;

  long violation = -1;
  for (std::size_t prefix = 0; prefix <= n; ++prefix) {
    violation = first_violation(entry.terms, signature, prefix + n);
    if (violation < 0) {
      rec.recurrence_consistent = true;
      rec.irregular_prefix = static_cast<int>(prefix);
      break;
    }
  }

  // Tail ratio from the last pair of adjacent nonzero terms.
  for (std::size_t k = entry.terms.size() - 1; k >= 1; --k) {
    if (entry.terms[k] != 0 && entry.terms[k - 1] != 0) {
      rec.measured_tail_ratio = mpz_ratio(entry.terms[k], entry.terms[k - 1]);
      break;
    }
  }

  std::vector<ExactComplex> weights;
  for (long b : signature) weights.emplace_back(b);
  if (weights.back().is_zero()) {
    rec.status = "inconsistent";
    rec.detail = "signature has a zero last weight";
    return rec;
  }
  const Recurrence r = Recurrence::create(std::move(weights));
  const DominanceReport dom = classify_dominance(find_roots(MonicPolynomial::from_recurrence(r)));
  if (dom.lambda0) rec.lambda0 = *dom.lambda0;

  if (!rec.recurrence_consistent) {
    rec.status = "inconsistent";
    rec.detail = "terms violate the signature recurrence at offset " + std::to_string(violation) +
                 " even after skipping " + std::to_string(n) + " leading terms";
    return rec;
  }
  if (!dom.is_asymptotically_simple) {
    rec.status = "disagrees";
    rec.detail = "characteristic polynomial is not asymptotically simple";
    return rec;
  }
  if (!rec.measured_tail_ratio) {
    rec.status = "disagrees";
    rec.detail = "no adjacent nonzero terms";
    return rec;
  }
  const double gap = std::abs(*rec.measured_tail_ratio - *rec.lambda0);
  rec.agrees = gap <= tail_tol * (1.0 + std::abs(*rec.lambda0));
  rec.status = rec.agrees ? "verified" : "disagrees";
  std::ostringstream detail;
  detail << std::setprecision(3) << "tail ratio differs from lambda0 by " << gap;
  rec.detail = detail.str();
  return rec;
}

BatchVerifyResult batch_verify(Client& client, const std::vector<std::vector<long>>& signatures, int limit,
                               double tail_tol) {
  BatchVerifyResult out;
  for (const auto& sig : signatures) {
    std::vector<OeisEntry> entries;
    try {
      entries = client.search_by_signature(sig, limit);
    } catch (const Error& e) {
      VerificationRecord rec;
      rec.signature_used = sig;
      rec.status = e.code() == ErrorCode::network_unavailable ? "unavailable" : "error";
      rec.detail = std::string(to_string(e.code())) + ": " + e.what();
      out.records.push_back(std::move(rec));
      continue;
    }
    for (const OeisEntry& entry : entries) {
      try {
        out.records.push_back(verify_entry(entry, sig, tail_tol));
      } catch (const Error& e) {
        VerificationRecord rec;
        rec.id = entry.id;
        rec.name = entry.name;
        rec.signature_used = sig;
        rec.status = e.code() == ErrorCode::insufficient_terms ? "insufficient_terms" : "error";
        rec.detail = e.what();
        out.records.push_back(std::move(rec));
      }
    }
  }
  VerifySummary& s = out.summary;
  s.records = static_cast<int>(out.records.size());
  for (const VerificationRecord& r : out.records) {
    if (r.status == "verified") ++s.agrees;
    else if (r.status == "disagrees") ++s.disagrees;
    else if (r.status == "inconsistent") ++s.inconsistent;
    else if (r.status == "insufficient_terms") ++s.insufficient;
    else ++s.unavailable;
  }
  return out;
}

std::vector<std::vector<long>> constant_signatures(const std::vector<long>& values, const std::vector<int>& lengths) {
  std::vector<std::vector<long>> out;
  for (long m : values) {
    for (int len : lengths) out.emplace_back(static_cast<std::size_t>(len), m);
  }
  return out;
}

}  // namespace ratiolim::oeis
