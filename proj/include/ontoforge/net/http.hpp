#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ontoforge {

struct HttpRequest {
    std::string method = "GET";
    std::string url;
    std::vector<std::pair<std::string, std::string>> headers;
    std::string body;
    std::string content_type = "application/json";
};

struct HttpResponse {
    int status = 0;  // 0 = transport failure (no HTTP response)
    std::map<std::string, std::string> headers;  // lower-cased names
    std::string body;
    std::string error;

    std::optional<std::string> header(const std::string& lower_name) const;
};

// Abstract so providers and fetchers can be tested against scripted transports.
// Implementations must be callable from several threads at once.
class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    virtual HttpResponse send(const HttpRequest& request) = 0;
};

// cpp-httplib backed transport; one client per request.
class HttplibTransport final : public HttpTransport {
public:
    explicit HttplibTransport(std::chrono::seconds timeout = std::chrono::seconds(60)) : timeout_(timeout) {}
    HttpResponse send(const HttpRequest& request) override;

private:
    std::chrono::seconds timeout_;
};

struct RetryPolicy {
    int max_retries = 3;
    std::chrono::milliseconds base_delay{500};
    std::chrono::milliseconds max_delay{60'000};
    std::function<void(std::chrono::milliseconds)> sleep;  // defaults to this_thread::sleep_for
};

bool is_retryable_status(int status) noexcept;

// Sends `request`, retrying transport failures, 429, 5xx and rate-limited 403
// responses up to policy.max_retries times. Delay doubles per attempt unless
// the server supplies Retry-After or x-ratelimit-reset. Returns the last response.
HttpResponse send_with_retry(HttpTransport& transport, const HttpRequest& request, const RetryPolicy& policy);

// Environment lookup that returns nullopt for unset or empty variables.
std::optional<std::string> env_value(const std::string& name);

} // namespace ontoforge
