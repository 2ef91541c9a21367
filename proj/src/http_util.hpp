#pragma once

// Internal helper shared by the HTTP-backed clients and the remote agent
// backend. Not installed.

#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

namespace skygeo::http {

struct ParsedUrl {
    std::string base;  // scheme://host[:port]
    std::string path;  // leading '/', "?"-free
};

/// Splits "scheme://host[:port]/path" into client base and request path.
/// Throws ValidationError on anything unintelligible.
ParsedUrl parse_url(const std::string& url);

struct RequestOptions {
    int timeout_ms = 10000;
    int retries = 1;              // transport retries beyond the first try
    std::string bearer_token;     // empty -> no Authorization header
    int max_inflight = 4;
};

/// Blocking JSON-over-HTTP calls with transport retries and an in-flight
/// cap. Transport failures (connect/timeout/non-2xx) throw TransportError
/// after the retry budget; a 2xx body that is not JSON throws
/// MalformedResponseError.
class JsonHttp {
public:
    JsonHttp(std::string url, RequestOptions options);
    ~JsonHttp();

    JsonHttp(const JsonHttp&) = delete;
    JsonHttp& operator=(const JsonHttp&) = delete;

    nlohmann::json get(const std::string& query);  // appended to the path
    nlohmann::json post(const nlohmann::json& body);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// URL-escapes a query parameter value.
std::string url_encode(const std::string& value);

/// Reads an environment variable, empty string when unset.
std::string env_or_empty(const char* name);

}  // namespace skygeo::http
