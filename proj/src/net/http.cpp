#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "ontoforge/net/http.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <thread>

namespace ontoforge {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

// "https://host:port/path?q" -> ("https://host:port", "/path?q")
std::pair<std::string, std::string> split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    const auto path_start = url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::optional<long long> parse_ll(const std::string& s) {
    char* end = nullptr;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (end == s.c_str()) return std::nullopt;
    return v;
}

bool rate_limited(const HttpResponse& r) {
    if (r.status == 429) return true;
    if (r.status != 403) return false;
    auto remaining = r.header("x-ratelimit-remaining");
    return remaining && *remaining == "0";
}

std::chrono::milliseconds server_delay(const HttpResponse& r) {
    using namespace std::chrono;
    if (auto ra = r.header("retry-after")) {
        if (auto secs = parse_ll(*ra)) return seconds(std::max<long long>(0, *secs));
    }
    if (auto reset = r.header("x-ratelimit-reset")) {
        if (auto epoch = parse_ll(*reset)) {
            const auto now = duration_cast<seconds>(system_clock::now().time_since_epoch()).count();
            return seconds(std::max<long long>(0, *epoch - now));
        }
    }
    return milliseconds(-1);
}

} // namespace

std::optional<std::string> HttpResponse::header(const std::string& lower_name) const {
    if (auto it = headers.find(lower_name); it != headers.end()) return it->second;
    return std::nullopt;
}

HttpResponse HttplibTransport::send(const HttpRequest& request) {
    auto [base, path] = split_url(request.url);
    httplib::Client client(base);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    client.set_write_timeout(timeout_);
    client.set_follow_location(true);

    httplib::Request req;
    req.method = request.method;
    req.path = path;
    for (const auto& [k, v] : request.headers) req.headers.emplace(k, v);
    if (!request.body.empty()) {
        req.body = request.body;
        req.headers.emplace("Content-Type", request.content_type);
    }

    HttpResponse out;
    auto result = client.send(req);
    if (!result) {
        out.error = httplib::to_string(result.error());
        return out;
    }
    out.status = result->status;
    out.body = result->body;
    for (const auto& [k, v] : result->headers) out.headers[lower(k)] = v;
    return out;
}

bool is_retryable_status(int status) noexcept { return status == 0 || status == 429 || status >= 500; }

HttpResponse send_with_retry(HttpTransport& transport, const HttpRequest& request, const RetryPolicy& policy) {
    auto sleep = policy.sleep ? policy.sleep
                              : [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
    HttpResponse response;
    for (int attempt = 0;; ++attempt) {
        response = transport.send(request);
        const bool retry = is_retryable_status(response.status) || rate_limited(response);
        if (!retry || attempt >= policy.max_retries) return response;

        auto delay = server_delay(response);
        if (delay.count() < 0) delay = policy.base_delay * (1LL << attempt);
        sleep(std::min(delay, policy.max_delay));
    }
}

std::optional<std::string> env_value(const std::string& name) {
    const char* v = std::getenv(name.c_str());
    if (v == nullptr || *v == '\0') return std::nullopt;
    return std::string(v);
}

} // namespace ontoforge
