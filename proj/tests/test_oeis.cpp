#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

#include "ratiolim/error.hpp"
#include "ratiolim/oeis.hpp"

using namespace ratiolim;
using namespace ratiolim::oeis;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kFixtures = fs::path(RATIOLIM_FIXTURE_DIR) / "oeis";

class FakeClock final : public Clock {
 public:
  std::chrono::steady_clock::time_point now() override { return t; }
  void sleep_until(std::chrono::steady_clock::time_point target) override {
    if (target > t) t = target;
  }
  std::string wall_time() override { return "2000-01-01T00:00:00Z"; }

  std::chrono::steady_clock::time_point t{};
};

class FakeTransport final : public HttpTransport {
 public:
  explicit FakeTransport(std::shared_ptr<FakeClock> clock) : clock_(std::move(clock)) {}

  HttpResponse get(const std::string& path_and_query) override {
    requests.push_back(path_and_query);
    times.push_back(clock_->now());
    // Each request takes 100 ms of fake time.
    clock_->t += std::chrono::milliseconds(100);
    if (offline) throw Error(ErrorCode::network_unavailable, "fake network down");
    const auto it = responses.find(path_and_query);
    if (it == responses.end()) return {404, ""};
    return it->second;
  }

  bool offline = false;
  std::map<std::string, HttpResponse> responses;
  std::vector<std::string> requests;
  std::vector<std::chrono::steady_clock::time_point> times;

 private:
  std::shared_ptr<FakeClock> clock_;
};

json raw_entry(long number, const std::string& name, const std::string& data) {
  return {{"number", number}, {"name", name}, {"data", data}};
}

// Fibonacci-like raw entries numbered from `first`.
json fib_page(long first, int count) {
  json page = json::array();
  for (int i = 0; i < count; ++i) page.push_back(raw_entry(first + i, "entry", "0,1,1,2,3,5,8,13,21,34"));
  return page;
}

std::string search_path(const std::string& query, int start) {
  return "/search?q=" + url_encode(query) + "&fmt=json&start=" + std::to_string(start);
}

fs::path fresh_dir() {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  const fs::path dir = fs::temp_directory_path() /
                       (std::string("ratiolim-") + info->test_suite_name() + "-" + info->name());
  fs::remove_all(dir);
  return dir;
}

struct Rig {
  std::shared_ptr<FakeClock> clock = std::make_shared<FakeClock>();
  std::shared_ptr<FakeTransport> transport = std::make_shared<FakeTransport>(clock);
  ClientOptions opts;

  Client client() { return Client(opts, transport, clock); }
};

OeisEntry from_fixture(const std::vector<long>& signature, const std::string& id) {
  ClientOptions opts;
  opts.cache_dir = kFixtures;
  opts.offline = true;
  Client c(opts, nullptr, std::make_shared<SystemClock>());
  for (OeisEntry& e : c.search_by_signature(signature, 10)) {
    if (e.id == id) return e;
  }
  ADD_FAILURE() << id << " missing from fixtures";
  return {};
}

}  // namespace

TEST(OeisParse, ObjectArrayAndNullForms) {
  const json page = json::array({raw_entry(45, "Fibonacci numbers", "0,1,1,2,3,5")});
  const auto a = parse_search_response(json{{"results", page}}.dump());
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].id, "A000045");
  EXPECT_EQ(a[0].name, "Fibonacci numbers");
  EXPECT_EQ(a[0].terms.size(), 6u);
  EXPECT_EQ(a[0].terms[5], 5);

  EXPECT_EQ(parse_search_response(page.dump()).size(), 1u);
  EXPECT_TRUE(parse_search_response(R"({"results": null})").empty());
  EXPECT_TRUE(parse_search_response("null").empty());
}

TEST(OeisParse, BigTermsAndSignatureLinks) {
  json e = raw_entry(32, "Lucas", "2,1,3,4,7,11,123456789012345678901234567890");
  e["link"] = json::array({"<a href=\"/index/Rec\">Index entries for linear recurrences with constant coefficients</a>, signature (1,1)."});
  const auto parsed = parse_search_response(json::array({e}).dump());
  EXPECT_EQ(parsed[0].terms.back(), mpz_class("123456789012345678901234567890"));
  ASSERT_TRUE(parsed[0].signature.has_value());
  EXPECT_EQ(*parsed[0].signature, (std::vector<long>{1, 1}));
}

TEST(OeisParse, MalformedResponses) {
  const auto code = [](const std::string& body) {
    try {
      (void)parse_search_response(body);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::invalid_argument;
  };
  EXPECT_EQ(code("<html>"), ErrorCode::parse_error);
  EXPECT_EQ(code(R"({"results": 3})"), ErrorCode::parse_error);
  EXPECT_EQ(code(R"([{"name": "no number", "data": "1,2"}])"), ErrorCode::parse_error);
  EXPECT_EQ(code(R"([{"number": 1, "data": ""}])"), ErrorCode::parse_error);
  EXPECT_EQ(code(R"([{"number": 1, "data": "1,x"}])"), ErrorCode::parse_error);
}

TEST(OeisParse, Signature) {
  EXPECT_EQ(parse_signature("signature (1,1)"), (std::vector<long>{1, 1}));
  EXPECT_EQ(parse_signature("..., signature ( 2, -1 , 3 )."), (std::vector<long>{2, -1, 3}));
  EXPECT_FALSE(parse_signature("no recurrence here").has_value());
  EXPECT_FALSE(parse_signature("signature ()").has_value());
}

TEST(OeisQuery, HashesAndEncoding) {
  // Published FNV-1a 64-bit test vectors.
  EXPECT_EQ(stable_hash_hex(""), "cbf29ce484222325");
  EXPECT_EQ(stable_hash_hex("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(stable_hash_hex("foobar"), "85944171f73967e8");

  EXPECT_EQ(signature_query({1, 1}), "\"signature (1,1)\"");
  EXPECT_EQ(url_encode("\"signature (1,-1)\""), "%22signature%20%281%2C-1%29%22");
  EXPECT_EQ(url_encode("abc-_.~"), "abc-_.~");
  EXPECT_EQ(constant_signatures({1, 2}, {2, 3}),
            (std::vector<std::vector<long>>{{1, 1}, {1, 1, 1}, {2, 2}, {2, 2, 2}}));
}

TEST(OeisClient, PagesAreRateLimitedAndCached) {
  Rig rig;
  rig.opts.cache_dir = fresh_dir();
  const std::string q = signature_query({1, 1});
  rig.transport->responses[search_path(q, 0)] = {200, json{{"results", fib_page(1, 10)}}.dump()};
  rig.transport->responses[search_path(q, 10)] = {200, json{{"results", fib_page(11, 3)}}.dump()};

  Client c = rig.client();
  const auto got = c.search_by_signature({1, 1}, 30);
  ASSERT_EQ(got.size(), 13u);
  EXPECT_EQ(got.front().id, "A000001");
  EXPECT_EQ(got.back().id, "A000013");
  ASSERT_EQ(rig.transport->requests.size(), 2u);
  EXPECT_GE(rig.transport->times[1] - rig.transport->times[0], std::chrono::milliseconds(1000));

  const fs::path cache = c.cache_path(q);
  EXPECT_EQ(cache.filename().string(), "oeis-" + stable_hash_hex(q) + ".json");
  const json doc = json::parse(std::ifstream(cache));
  EXPECT_EQ(doc["query"], q);
  EXPECT_EQ(doc["complete"], true);
  EXPECT_EQ(doc["fetched_at"], "2000-01-01T00:00:00Z");
  EXPECT_EQ(doc["entries"].size(), 13u);

  // A complete cache answers without the network.
  const auto again = c.search_by_signature({1, 1}, 30);
  EXPECT_EQ(again.size(), 13u);
  EXPECT_EQ(rig.transport->requests.size(), 2u);
  fs::remove_all(rig.opts.cache_dir);
}

TEST(OeisClient, SeparateClientsShareTheCache) {
  Rig rig;
  rig.opts.cache_dir = fresh_dir();
  const std::string q = signature_query({2, 2});
  rig.transport->responses[search_path(q, 0)] = {200, json::array({raw_entry(2605, "x", "0,1,2,6,16,44")}).dump()};
  (void)rig.client().search(q, 5);

  rig.opts.offline = true;
  const auto got = rig.client().search(q, 5);
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0].id, "A002605");
  EXPECT_EQ(rig.transport->requests.size(), 1u);
  fs::remove_all(rig.opts.cache_dir);
}

TEST(OeisClient, OfflineWithEmptyCacheIsUnavailable) {
  Rig rig;
  rig.opts.cache_dir = fresh_dir();
  rig.opts.offline = true;
  Client c = rig.client();
  try {
    (void)c.search_by_signature({1, 1}, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::network_unavailable);
  }
  EXPECT_TRUE(rig.transport->requests.empty());
}

TEST(OeisClient, FallsBackToPartialCacheWhenNetworkFails) {
  Rig rig;
  rig.opts.cache_dir = fresh_dir();
  const std::string q = signature_query({1, 1});
  rig.transport->responses[search_path(q, 0)] = {200, json{{"results", fib_page(1, 10)}}.dump()};
  (void)rig.client().search(q, 10);
  ASSERT_EQ(json::parse(std::ifstream(rig.client().cache_path(q)))["complete"], false);

  rig.transport->offline = true;
  const auto got = rig.client().search(q, 20);
  EXPECT_EQ(got.size(), 10u);
  EXPECT_EQ(rig.transport->requests.size(), 2u);
  fs::remove_all(rig.opts.cache_dir);
}

TEST(OeisClient, MalformedBodyIsSavedAndReported) {
  Rig rig;
  rig.opts.cache_dir = fresh_dir();
  const std::string q = signature_query({3, 3});
  rig.transport->responses[search_path(q, 0)] = {200, "<html>busy</html>"};
  try {
    (void)rig.client().search(q, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::parse_error);
  }
  const fs::path raw = rig.opts.cache_dir / ("oeis-" + stable_hash_hex(q) + ".raw.txt");
  ASSERT_TRUE(fs::exists(raw));
  std::string body;
  std::getline(std::ifstream(raw), body);
  EXPECT_EQ(body, "<html>busy</html>");
  EXPECT_FALSE(fs::exists(rig.client().cache_path(q)));
  fs::remove_all(rig.opts.cache_dir);
}

TEST(OeisClient, HttpErrorIsUnavailable) {
  Rig rig;
  rig.opts.cache_dir = fresh_dir();
  try {
    (void)rig.client().search("\"signature (9,9)\"", 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::network_unavailable);
  }
}

TEST(OeisVerify, FixtureEntries) {
  for (const auto& [sig, id] : std::vector<std::pair<std::vector<long>, std::string>>{
           {{1, 1}, "A000045"}, {{1, 1}, "A000032"}, {{1, 1, 1}, "A000073"}, {{2, 2}, "A002605"}}) {
    const VerificationRecord r = verify_entry(from_fixture(sig, id), sig);
    EXPECT_TRUE(r.recurrence_consistent) << id;
    EXPECT_TRUE(r.agrees) << id;
    EXPECT_EQ(r.status, "verified") << id;
    EXPECT_LE(std::abs(*r.measured_tail_ratio - *r.lambda0), kTailRatioTol * (1 + std::abs(*r.lambda0))) << id;
  }
}

TEST(OeisVerify, InconsistentAndShortEntries) {
  OeisEntry e;
  e.id = "A999999";
  for (long x : {1, 2, 4, 8, 16, 32, 64, 128, 256, 512}) e.terms.emplace_back(x);
  const VerificationRecord r = verify_entry(e, {1, 1});
  EXPECT_FALSE(r.recurrence_consistent);
  EXPECT_FALSE(r.agrees);
  EXPECT_EQ(r.status, "inconsistent");

  e.terms.resize(7);
  try {
    (void)verify_entry(e, {1, 1});
    FAIL();
  } catch (const Error& ex) {
    EXPECT_EQ(ex.code(), ErrorCode::insufficient_terms);
  }
}

TEST(OeisVerify, IrregularPrefixIsSkipped) {
  OeisEntry e;
  e.id = "A000001";
  for (long x : {7, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89}) e.terms.emplace_back(x);
  const VerificationRecord r = verify_entry(e, {1, 1});
  EXPECT_TRUE(r.recurrence_consistent);
  EXPECT_EQ(r.irregular_prefix, 1);
}

TEST(OeisBatch, FixturesAllAgree) {
  ClientOptions opts;
  opts.cache_dir = kFixtures;
  opts.offline = true;
  Client c(opts, nullptr, std::make_shared<SystemClock>());
  const BatchVerifyResult r = batch_verify(c, {{1, 1}, {1, 1, 1}, {2, 2}}, 10);
  EXPECT_EQ(r.summary.records, 7);
  EXPECT_EQ(r.summary.agrees, 7);
  EXPECT_TRUE(batch_verify(c, {}, 10).records.empty());
}

TEST(OeisBatch, NetworkFailureBecomesUnavailableRecords) {
  Rig rig;
  rig.opts.cache_dir = fresh_dir();
  const std::string q = signature_query({1, 1});
  rig.transport->responses[search_path(q, 0)] =
      {200, json::array({raw_entry(45, "Fibonacci", "0,1,1,2,3,5,8,13,21,34,55,89")}).dump()};
  Client c = rig.client();
  (void)c.search(q, 10);
  rig.transport->offline = true;
  const BatchVerifyResult r = batch_verify(c, {{1, 1}, {2, 2}}, 10);
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[0].status, "verified");
  EXPECT_EQ(r.records[1].status, "unavailable");
  EXPECT_EQ(r.summary.unavailable, 1);
  fs::remove_all(rig.opts.cache_dir);
}
