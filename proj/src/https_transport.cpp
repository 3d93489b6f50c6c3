#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "ratiolim/error.hpp"
#include "ratiolim/oeis.hpp"

namespace ratiolim::oeis {

namespace {

class HttpsTransport final : public HttpTransport {
 public:
  HttpsTransport() : client_("https://oeis.org") {
    client_.set_connection_timeout(10);
    client_.set_read_timeout(30);
    client_.set_default_headers({{"User-Agent", "ratiolim/1.0"}});
  }

  HttpResponse get(const std::string& path_and_query) override {
    auto res = client_.Get(path_and_query);
    if (!res) {
      throw Error(ErrorCode::network_unavailable, "request to oeis.org failed: " + httplib::to_string(res.error()));
    }
    return {res->status, res->body};
  }

 private:
  httplib::Client client_;
};

}  // namespace

std::unique_ptr<HttpTransport> make_https_transport() { return std::make_unique<HttpsTransport>(); }

}  // namespace ratiolim::oeis
