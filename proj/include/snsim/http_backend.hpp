#pragma once
// HTTP completion backend: one POST per completion, bounded retries with
// capped backoff on transport errors. Kept out of backend.hpp so only
// HTTP users pay for the httplib include.

#include <chrono>
#include <cstdlib>
#include <memory>
#include <string>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "snsim/backend.hpp"
#include "snsim/errors.hpp"

namespace snsim {

class HttpBackend final : public Backend {
public:
    explicit HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
        split_url(config_.url, base_, path_);
    }

    std::string id() const override { return "http"; }

    BackendResponse complete(const BackendRequest& request) override {
        if (request.prompt.empty()) throw BackendError(BackendError::Kind::malformed, "empty prompt");
        nlohmann::json body{{"prompt", request.prompt},
                            {"max_tokens", request.max_tokens},
                            {"stop", request.stop}};
        const std::string payload = body.dump();

        int backoff = config_.initial_backoff_ms;
        std::string last_error;
        for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
            if (attempt > 1) {
                std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
                backoff = std::min(backoff * 2, config_.max_backoff_ms);
            }
            httplib::Client client(base_);
            client.set_connection_timeout(0, config_.timeout_ms * 1000LL);
            client.set_read_timeout(config_.timeout_ms / 1000, (config_.timeout_ms % 1000) * 1000);
            if (const char* token = std::getenv(config_.token_env.c_str()); token && *token)
                client.set_bearer_token_auth(token);

            auto result = client.Post(path_, payload, "application/json");
            if (!result) {
                last_error = "connection failed: " + httplib::to_string(result.error());
                continue;  // transport errors are retryable
            }
            if (result->status >= 500) {
                last_error = "server error: status " + std::to_string(result->status);
                continue;
            }
            if (result->status != 200)
                throw BackendError(BackendError::Kind::malformed,
                                   "unexpected status " + std::to_string(result->status));
            return parse_response(result->body);
        }
        throw BackendError(BackendError::Kind::transport,
                           "backend unreachable after " + std::to_string(config_.max_attempts) +
                               " attempts: " + last_error);
    }

private:
    HttpBackendConfig config_;
    std::string base_;
    std::string path_;

    static void split_url(const std::string& url, std::string& base, std::string& path) {
        std::size_t scheme = url.find("://");
        std::size_t slash = scheme == std::string::npos ? url.find('/')
                                                        : url.find('/', scheme + 3);
        if (slash == std::string::npos) {
            base = url;
            path = "/";
        } else {
            base = url.substr(0, slash);
            path = url.substr(slash);
        }
    }

    static BackendResponse parse_response(const std::string& body) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(body);
        } catch (const nlohmann::json::exception&) {
            throw BackendError(BackendError::Kind::malformed, "response is not JSON");
        }
        std::string txt;
        if (doc.contains("text") && doc["text"].is_string()) {
            txt = doc["text"].get<std::string>();
        } else if (doc.contains("choices") && doc["choices"].is_array() &&
                   !doc["choices"].empty() && doc["choices"][0].contains("text")) {
            txt = doc["choices"][0]["text"].get<std::string>();
        } else {
            throw BackendError(BackendError::Kind::malformed, "response has no text field");
        }
        if (txt.empty()) throw BackendError(BackendError::Kind::malformed, "response text is empty");
        return {txt, "http"};
    }
};

}  // namespace snsim
