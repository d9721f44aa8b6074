#pragma once
// Text-completion backends. The engine talks to a Backend through one call;
// the HTTP implementation posts a single completion request per call, while
// the mock produces deterministic output from (tag, prompt hash, script) so
// whole runs are reproducible offline.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "snsim/errors.hpp"
#include "snsim/prompt.hpp"
#include "snsim/text.hpp"

namespace snsim {

struct BackendRequest {
    PromptId tag = PromptId::persona_gen;
    std::string prompt;
    int max_tokens = 400;
    std::vector<std::string> stop;
};

struct BackendResponse {
    std::string text;
    std::string meta;  // opaque backend details
};

class Backend {
public:
    virtual ~Backend() = default;
    virtual BackendResponse complete(const BackendRequest& request) = 0;
    virtual std::string id() const = 0;
};

/// Per-tag completion defaults.
inline BackendRequest make_request(PromptId tag, std::string prompt) {
    BackendRequest req;
    req.tag = tag;
    req.prompt = std::move(prompt);
    req.stop = {"###"};
    switch (tag) {
        case PromptId::persona_gen: req.max_tokens = 200; break;
        case PromptId::query_gen_post:
        case PromptId::query_gen_reply: req.max_tokens = 300; break;
        case PromptId::post_gen:
        case PromptId::reply_gen: req.max_tokens = 400; break;
    }
    return req;
}

/// Scripted responses consumed before the mock's procedural output; used by
/// tests to force collisions and malformed completions.
struct MockScript {
    struct Entry {
        std::string tag;
        std::string text;
    };
    std::deque<Entry> forced;

    static MockScript load(const std::filesystem::path& path) {
        MockScript script;
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(detail::read_file(path));
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("mock script " + path.string() + ": " + e.what());
        }
        for (const auto& item : doc.value("forced", nlohmann::json::array()))
            script.forced.push_back({item.at("tag").get<std::string>(),
                                     item.at("text").get<std::string>()});
        return script;
    }
};

/// Deterministic offline backend. Apart from the script queue it is a pure
/// function of (tag, prompt): persona names are "user-NNN", query completions
/// are ten bullet lines built from content words of the prompt's Input
/// section, and generated bodies embed a digest of the prompt's Information
/// section so information flow stays observable in tests.
class MockBackend final : public Backend {
public:
    MockBackend() = default;
    explicit MockBackend(MockScript script) : script_(std::move(script)) {}

    std::string id() const override { return "mock"; }

    BackendResponse complete(const BackendRequest& request) override {
        const std::string tag = to_string(request.tag);
        for (auto it = script_.forced.begin(); it != script_.forced.end(); ++it) {
            if (it->tag == tag) {
                BackendResponse resp{it->text, "mock:scripted"};
                script_.forced.erase(it);
                return resp;
            }
        }
        const std::uint64_t h = detail::fnv1a64(tag + std::string(1, '\x1f') + request.prompt);
        switch (request.tag) {
            case PromptId::persona_gen: return {persona_response(h), "mock"};
            case PromptId::query_gen_post:
            case PromptId::query_gen_reply: return {query_response(request.prompt, h), "mock"};
            case PromptId::post_gen: return {body_response(request.prompt, h, false), "mock"};
            case PromptId::reply_gen: return {body_response(request.prompt, h, true), "mock"};
        }
        return {"", "mock"};
    }

private:
    MockScript script_;

    static bool mock_stopword(const std::string& w) {
        // Vocabulary the mock itself injects (body patterns, descriptions,
        // scaffolding) plus short function words; excluded from query and
        // topic-word extraction so queries stay on the source material.
        static const std::unordered_set<std::string> kOwn = {
            "user",     "replyto",  "view",      "worth",   "watching", "closely",
            "here",     "thought",  "especially", "angle",   "anyone",   "else",
            "following", "side",    "matters",   "today",   "looked",   "again",
            "take",     "this",     "that",      "what",    "about",    "have",
            "consider", "text",     "post",      "bulletin", "board",   "purpose",
            "perspective", "keen",  "quiet",     "veteran", "curious",  "upbeat",
            "skeptical", "pragmatic", "candid",  "observer", "regular", "reader",
            "lurker",   "watcher",  "commenter", "market",  "forum",    "news",
            "policy"};
        return text::is_stopword(w) || kOwn.count(w) > 0;
    }

    static std::vector<std::string> input_words(std::string_view prompt) {
        std::string_view section = prompt;
        if (std::size_t at = prompt.find("### Input"); at != std::string_view::npos)
            section = prompt.substr(at);
        std::vector<std::string> words;
        std::unordered_set<std::string> seen;
        for (const auto& seg : text::segment(text::normalize(section))) {
            const std::string& w = seg.chars;
            if (!seg.cjk) {
                if (w.size() < 3 || mock_stopword(w)) continue;
                if (w.find_first_of("0123456789") != std::string::npos) continue;
            }
            if (seen.insert(w).second) words.push_back(w);
        }
        if (words.empty()) words.push_back("topic");
        return words;
    }

    static std::string information_digest(std::string_view prompt) {
        std::string_view info = prompt;
        if (std::size_t at = prompt.find("### Available Information"); at != std::string_view::npos) {
            info = prompt.substr(at);
            if (std::size_t end = info.find("### Input"); end != std::string_view::npos)
                info = info.substr(0, end);
        }
        std::uint64_t h = detail::fnv1a64(info);
        static const char* kHex = "0123456789abcdef";
        std::string digest;
        for (int i = 0; i < 6; ++i) digest += kHex[(h >> (4 * i)) & 0xF];
        return digest;
    }

    static std::string persona_response(std::uint64_t h) {
        static const char* kAdjectives[] = {"keen",      "quiet",     "veteran", "curious",
                                            "upbeat",    "skeptical", "pragmatic", "candid"};
        static const char* kNouns[] = {"observer", "regular",  "reader", "lurker",
                                       "watcher",  "commenter"};
        std::ostringstream out;
        out << "user-";
        out.width(3);
        out.fill('0');
        out << (h % 1000);
        out << "</pre> : \n<pre class=\"user-description\" max-length=\"30\">\n"
            << kAdjectives[(h >> 10) % 8] << ' ' << kNouns[(h >> 13) % 6] << "</pre>";
        return out.str();
    }

    static std::string query_response(std::string_view prompt, std::uint64_t h) {
        const auto words = input_words(prompt);
        const std::size_t n = words.size();
        std::ostringstream out;
        for (int i = 0; i < 10; ++i) {
            const std::uint64_t hi = detail::mix64(h + static_cast<std::uint64_t>(i));
            const std::string& w1 = words[hi % n];
            out << "- " << w1;
            if (n > 1 && ((hi >> 32) & 1)) {
                const std::string& w2 = words[(hi >> 16) % n];
                if (w2 != w1) out << ' ' << w2;
            }
            out << '\n';
        }
        return out.str();
    }

    static std::string body_response(std::string_view prompt, std::uint64_t h, bool reply) {
        const auto words = input_words(prompt);
        const std::string& w1 = words[h % words.size()];
        const std::string& w2 = words[detail::mix64(h) % words.size()];
        const std::string digest = information_digest(prompt);
        std::ostringstream out;
        switch ((h >> 7) % 4) {
            case 0: out << "My view on " << w1 << " and " << w2 << ": worth watching closely."; break;
            case 1: out << "Here is a thought about " << w1 << ", especially the " << w2 << " angle."; break;
            case 2: out << "Anyone else following " << w1 << "? The " << w2 << " side matters."; break;
            default: out << "Today I looked into " << w1 << " and " << w2 << " again."; break;
        }
        out << " (ctx " << digest << ")";
        if (reply) out << ']';  // close the reply scaffold's opening bracket
        return out.str();
    }
};

struct HttpBackendConfig {
    std::string url;  // e.g. http://localhost:8080/v1/completions
    std::string token_env = "SNSIM_BACKEND_TOKEN";
    int timeout_ms = 30000;
    int max_attempts = 3;
    int initial_backoff_ms = 100;
    int max_backoff_ms = 2000;
};

}  // namespace snsim
