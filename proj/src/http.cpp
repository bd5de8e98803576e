#include "http.hpp"

#include <thread>

#include <httplib.h>

#include "error.hpp"
#include "url.hpp"

namespace crate2bib {

HttpResponse HttplibTransport::get(const std::string& url, const std::string& user_agent,
                                   std::chrono::milliseconds timeout) {
    auto parsed = parse_url(url);
    if (!parsed || (parsed->scheme != "http" && parsed->scheme != "https")) {
        throw Error(ErrorKind::InvalidInput, "not an http(s) URL: " + url);
    }
    httplib::Client client(parsed->origin());
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    client.set_follow_location(true);
    auto result = client.Get(parsed->target(), httplib::Headers{{"User-Agent", user_agent}});
    if (!result) {
        throw Error(ErrorKind::Network, "GET " + url + " failed: " + httplib::to_string(result.error()));
    }
    return HttpResponse{result->status, result->body};
}

void RequestGate::acquire() {
    // Sleeping under the lock serializes starts, and measuring the next slot
    // from the actual wake-up keeps oversleeping from shrinking the next gap.
    std::lock_guard lock(mutex_);
    std::this_thread::sleep_until(next_);
    next_ = std::chrono::steady_clock::now() + interval_;
}

void ClientConfig::validate() const {
    if (user_agent.empty()) {
        throw Error(ErrorKind::InvalidInput, "user agent must not be empty");
    }
    if (min_request_interval.count() < 0) {
        throw Error(ErrorKind::InvalidInput, "minimum request interval must not be negative");
    }
    if (timeout.count() <= 0) {
        throw Error(ErrorKind::InvalidInput, "timeout must be positive");
    }
    for (const auto* url : {&base_url, &github_raw_base, &codeberg_base}) {
        if (!is_absolute_http_url(*url)) {
            throw Error(ErrorKind::InvalidInput, "not an absolute http(s) URL: " + *url);
        }
    }
}

HttpFetcher::HttpFetcher(ClientConfig config, std::shared_ptr<HttpTransport> transport)
    : config_(std::move(config)), transport_(std::move(transport)), gate_(config_.min_request_interval) {
    config_.validate();
    if (!transport_) {
        transport_ = std::make_shared<HttplibTransport>();
    }
}

HttpResponse HttpFetcher::get(const std::string& url) {
    gate_.acquire();
    return transport_->get(url, config_.user_agent, config_.timeout);
}

}  // namespace crate2bib
