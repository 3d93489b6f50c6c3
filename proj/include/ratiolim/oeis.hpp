#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "ratiolim/exact_complex.hpp"

namespace ratiolim::oeis {

struct OeisEntry {
  std::string id;  // "A000045"
  std::string name;
  std::vector<mpz_class> terms;
  /// Parsed from a "signature (...)" phrase in the entry text, when present.
  std::optional<std::vector<long>> signature;
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  /// GET of a path+query on the OEIS host.  Throws Error(network_unavailable).
  virtual HttpResponse get(const std::string& path_and_query) = 0;
};

class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::chrono::steady_clock::time_point now() = 0;
  virtual void sleep_until(std::chrono::steady_clock::time_point t) = 0;
  /// UTC timestamp written into cache files.
  virtual std::string wall_time() = 0;
};

class SystemClock final : public Clock {
 public:
  std::chrono::steady_clock::time_point now() override;
  void sleep_until(std::chrono::steady_clock::time_point t) override;
  std::string wall_time() override;
};

/// HTTPS transport to oeis.org; null when built without live support.
std::unique_ptr<HttpTransport> make_https_transport();

struct ClientOptions {
  std::filesystem::path cache_dir;
  bool offline = false;
  std::chrono::milliseconds min_interval{1000};
  /// OEIS pages its JSON search results ten at a time.
  int page_size = 10;
};

/// Signature search with a one-file-per-query JSON cache.  Live requests are
/// serialized and spaced by at least `min_interval`.
class Client {
 public:
  Client(ClientOptions opts, std::shared_ptr<HttpTransport> transport, std::shared_ptr<Clock> clock);

  /// Throws Error(network_unavailable) when neither the network nor the
  /// cache can answer, Error(parse_error) for malformed responses.
  std::vector<OeisEntry> search_by_signature(const std::vector<long>& signature, int limit);
  std::vector<OeisEntry> search(const std::string& query, int limit);

  std::filesystem::path cache_path(const std::string& query) const;
  const ClientOptions& options() const { return opts_; }

 private:
  HttpResponse fetch(const std::string& path_and_query);

  ClientOptions opts_;
  std::shared_ptr<HttpTransport> transport_;
  std::shared_ptr<Clock> clock_;
  std::mutex request_mutex_;
  std::optional<std::chrono::steady_clock::time_point> last_request_;
};

/// "\"signature (1,1)\""
std::string signature_query(const std::vector<long>& signature);
std::string url_encode(std::string_view text);
/// 64-bit FNV-1a in hex; stable across platforms and runs.
std::string stable_hash_hex(std::string_view text);

/// Accepts both the object form {"results": [...]} and a bare array.
std::vector<OeisEntry> parse_search_response(std::string_view body);
std::optional<std::vector<long>> parse_signature(std::string_view text);

struct VerificationRecord {
  std::string id;
  std::string name;
  std::vector<long> signature_used;
  /// verified | disagrees | inconsistent | insufficient_terms | unavailable
  std::string status;
  bool recurrence_consistent = false;
  /// Leading terms that had to be treated as extra initial conditions.
  int irregular_prefix = 0;
  std::optional<Complex> measured_tail_ratio;
  std::optional<Complex> lambda0;
  bool agrees = false;
  std::string detail;
};

inline constexpr double kTailRatioTol = 1e-4;

/// Needs at least 2n + 4 terms (Error(insufficient_terms) otherwise).
VerificationRecord verify_entry(const OeisEntry& entry, const std::vector<long>& signature,
                                double tail_tol = kTailRatioTol);

struct VerifySummary {
  int records = 0;
  int agrees = 0;
  int disagrees = 0;
  int inconsistent = 0;
  int insufficient = 0;
  int unavailable = 0;
};

struct BatchVerifyResult {
  std::vector<VerificationRecord> records;
  VerifySummary summary;
};

/// Search + verify for every signature in order; failures become records.
BatchVerifyResult batch_verify(Client& client, const std::vector<std::vector<long>>& signatures, int limit,
                               double tail_tol = kTailRatioTol);

/// (m, ..., m) for every m in `values` and length in `lengths`.
std::vector<std::vector<long>> constant_signatures(const std::vector<long>& values, const std::vector<int>& lengths);

}  // namespace ratiolim::oeis
