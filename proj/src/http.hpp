#pragma once

#include <chrono>
#include <memory>
#include <mutex>
#include <string>

namespace crate2bib {

struct HttpResponse {
    int status = 0;
    std::string body;
};

/// Performs one GET. Implementations throw Error{Network} on transport
/// failure; any HTTP status is returned normally.
class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    virtual HttpResponse get(const std::string& url, const std::string& user_agent,
                             std::chrono::milliseconds timeout) = 0;
};

/// cpp-httplib backed transport (http and https).
class HttplibTransport final : public HttpTransport {
public:
    HttpResponse get(const std::string& url, const std::string& user_agent,
                     std::chrono::milliseconds timeout) override;
};

/// Spaces request starts at least `interval` apart on the steady clock.
/// Thread-safe; waiting callers are admitted in the order they reserved.
class RequestGate {
public:
    explicit RequestGate(std::chrono::milliseconds interval) : interval_(interval) {}

    void acquire();
    std::chrono::milliseconds interval() const noexcept { return interval_; }

private:
    std::chrono::milliseconds interval_;
    std::mutex mutex_;
    std::chrono::steady_clock::time_point next_{};
};

/// Identifies and throttles outgoing requests.
struct ClientConfig {
    std::string base_url = "https://crates.io";
    std::string user_agent = "crate2bib-cli (contact: <none>)";
    std::chrono::milliseconds min_request_interval{1000};
    std::chrono::milliseconds timeout{10000};
    // Raw-file hosts; overridable so tests can point probes at a local stub.
    std::string github_raw_base = "https://raw.githubusercontent.com";
    std::string codeberg_base = "https://codeberg.org";

    /// Throws Error{InvalidInput} on an empty user agent, negative interval
    /// or non-http(s) base URL.
    void validate() const;
};

/// Transport + gate + identification; every request made through it carries
/// the configured User-Agent and waits its turn at the gate.
class HttpFetcher {
public:
    HttpFetcher(ClientConfig config, std::shared_ptr<HttpTransport> transport);

    HttpResponse get(const std::string& url);
    const ClientConfig& config() const noexcept { return config_; }

private:
    ClientConfig config_;
    std::shared_ptr<HttpTransport> transport_;
    RequestGate gate_;
};

}  // namespace crate2bib
