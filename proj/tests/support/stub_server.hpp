#pragma once

// In-process HTTP stub for exercising the remote backends
// deterministically, including fault injection.

#include <string>
#include <thread>

#include <httplib.h>

namespace skygeo::testing {

class StubServer {
public:
    StubServer() : port_(server_.bind_to_any_port("127.0.0.1")) {}

    ~StubServer() { stop(); }

    /// Register routes on this before calling start().
    httplib::Server& server() { return server_; }

    void start() {
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    void stop() {
        if (thread_.joinable()) {
            server_.stop();
            thread_.join();
        }
    }

    int port() const { return port_; }
    std::string url(const std::string& path) const {
        return "http://127.0.0.1:" + std::to_string(port_) + path;
    }

private:
    httplib::Server server_;
    int port_;
    std::thread thread_;
};

}  // namespace skygeo::testing
