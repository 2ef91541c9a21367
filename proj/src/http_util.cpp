#include "http_util.hpp"

#include <cctype>
#include <cstdlib>
#include <functional>
#include <semaphore>

#include <httplib.h>

#include "skygeo/errors.hpp"

namespace skygeo::http {

ParsedUrl parse_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw ValidationError("endpoint URL missing scheme: '" + url + "'");
    }
    const std::string scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") {
        throw ValidationError("unsupported endpoint scheme '" + scheme + "'");
    }
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        return ParsedUrl{url, "/"};
    }
    if (path_start == scheme_end + 3) {
        throw ValidationError("endpoint URL missing host: '" + url + "'");
    }
    return ParsedUrl{url.substr(0, path_start), url.substr(path_start)};
}

std::string url_encode(const std::string& value) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    out.reserve(value.size());
    for (unsigned char c : value) {
        const bool unreserved = std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~';
        if (unreserved) {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0xF]);
        }
    }
    return out;
}

std::string env_or_empty(const char* name) {
    const char* v = std::getenv(name);
    return v ? std::string(v) : std::string();
}

struct JsonHttp::Impl {
    ParsedUrl url;
    RequestOptions options;
    httplib::Client client;
    std::counting_semaphore<> inflight;

    Impl(std::string raw_url, RequestOptions opts)
        : url(parse_url(raw_url)),
          options(opts),
          client(url.base),
          inflight(std::max(1, opts.max_inflight)) {
        client.set_connection_timeout(0, options.timeout_ms * 1000LL);
        client.set_read_timeout(options.timeout_ms / 1000, (options.timeout_ms % 1000) * 1000);
        client.set_write_timeout(options.timeout_ms / 1000, (options.timeout_ms % 1000) * 1000);
        if (!options.bearer_token.empty()) {
            client.set_default_headers({{"Authorization", "Bearer " + options.bearer_token}});
        }
    }

    nlohmann::json run(const std::function<httplib::Result()>& send, const std::string& what) {
        inflight.acquire();
        struct Release {
            std::counting_semaphore<>& sem;
            ~Release() { sem.release(); }
        } release{inflight};

        std::string last_error;
        for (int attempt = 0; attempt <= options.retries; ++attempt) {
            auto res = send();
            if (!res) {
                last_error = httplib::to_string(res.error());
                continue;
            }
            if (res->status < 200 || res->status >= 300) {
                last_error = "HTTP status " + std::to_string(res->status);
                continue;
            }
            try {
                return nlohmann::json::parse(res->body);
            } catch (const nlohmann::json::exception& e) {
                throw MalformedResponseError(what + ": response body is not JSON: " + e.what());
            }
        }
        throw TransportError(what + ": " + last_error + " (after " +
                             std::to_string(options.retries + 1) + " attempts)");
    }
};

JsonHttp::JsonHttp(std::string url, RequestOptions options)
    : impl_(std::make_unique<Impl>(std::move(url), options)) {}

JsonHttp::~JsonHttp() = default;

nlohmann::json JsonHttp::get(const std::string& query) {
    const std::string path = impl_->url.path + query;
    return impl_->run([&] { return impl_->client.Get(path); }, "GET " + path);
}

nlohmann::json JsonHttp::post(const nlohmann::json& body) {
    const std::string payload = body.dump();
    return impl_->run(
        [&] { return impl_->client.Post(impl_->url.path, payload, "application/json"); },
        "POST " + impl_->url.path);
}

}  // namespace skygeo::http
