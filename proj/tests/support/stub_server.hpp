#pragma once

// Local HTTP stub for tests: canned responses by path, request log with
// User-Agent and steady-clock start times. Unknown paths answer 404.

#include <httplib.h>

#include <chrono>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace crate2bib::testing {

struct LoggedRequest {
    std::string path;
    std::string user_agent;
    std::chrono::steady_clock::time_point received;
};

class StubServer {
public:
    StubServer() {
        server_.Get(".*", [this](const httplib::Request& req, httplib::Response& res) {
            std::lock_guard lock(mutex_);
            log_.push_back({req.path, req.get_header_value("User-Agent"), std::chrono::steady_clock::now()});
            auto it = routes_.find(req.path);
            if (it == routes_.end()) {
                res.status = 404;
                res.set_content("", "text/plain");
                return;
            }
            res.status = it->second.first;
            res.set_content(it->second.second, "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~StubServer() {
        server_.stop();
        if (thread_.joinable()) {
            thread_.join();
        }
    }

    StubServer(const StubServer&) = delete;
    StubServer& operator=(const StubServer&) = delete;

    void route(const std::string& path, int status, std::string body) {
        std::lock_guard lock(mutex_);
        routes_[path] = {status, std::move(body)};
    }

    std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_); }

    std::vector<LoggedRequest> log() const {
        std::lock_guard lock(mutex_);
        return log_;
    }

    std::size_t hits() const { return log().size(); }

    void clear_log() {
        std::lock_guard lock(mutex_);
        log_.clear();
    }

private:
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    mutable std::mutex mutex_;
    std::map<std::string, std::pair<int, std::string>> routes_;
    std::vector<LoggedRequest> log_;
};

}  // namespace crate2bib::testing
