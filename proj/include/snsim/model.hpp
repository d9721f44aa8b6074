#pragma once
// Core value types of the simulated board: communities, personas, articles,
// posts and threads, plus the thread construction/rendering primitives every
// other component builds on.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "snsim/errors.hpp"

namespace snsim {

struct CommunityConfig {
    std::string goal;           // inserted at {community goal}
    std::string rule;           // inserted at {community rule}
    std::string scenario_name;
    std::string source_id = "local";
};

constexpr int kMaxPersonaNameChars = 20;
constexpr int kMaxPersonaDescriptionChars = 30;

struct UserPersona {
    enum class Origin { seed, generated };

    std::string name;         // <= 20 characters
    std::string description;  // <= 30 characters
    int attention = 5;        // [1, 10]
    int range = 5;            // [1, 10]
    int depth = 3;            // [0, 6]
    Origin origin = Origin::seed;
};

inline const char* to_string(UserPersona::Origin o) {
    return o == UserPersona::Origin::seed ? "seed" : "generated";
}

struct Article {
    std::string article_id;
    std::string title;
    std::string abstract;
    std::string body;
    std::vector<std::string> body_sentences;  // computed at ingest
    std::string published;                    // optional ISO-8601 date

    /// Article length: the sentence count of the body.
    int length() const { return static_cast<int>(body_sentences.size()); }
};

enum class PostKind { top_level, reply };

struct Post {
    std::uint64_t post_id = 0;  // run-global, strictly increasing in creation order
    std::string author;
    std::string body;
    PostKind kind = PostKind::top_level;
    std::optional<std::string> reply_to;  // author of the targeted post; replies only
    int created_step = 0;
};

struct Thread {
    int thread_id = 0;
    std::vector<Post> posts;  // posts[0] is the top-level post; oldest first
};

/// Appends a reply, preserving the thread ordering invariants.
inline void append_reply(Thread& thread, Post post) {
    if (post.kind != PostKind::reply) throw Error("append_reply: post is not a reply");
    if (!post.reply_to) throw Error("append_reply: reply has no reply_to");
    if (thread.posts.empty()) throw Error("append_reply: thread has no top-level post");
    if (post.post_id <= thread.posts.back().post_id)
        throw Error("append_reply: post_id must increase within a thread");
    thread.posts.push_back(std::move(post));
}

inline std::string render_post_line(const Post& p) {
    if (p.kind == PostKind::top_level) return "[" + p.author + "]: " + p.body;
    return "[" + p.author + "][ReplyTo: " + *p.reply_to + "]: " + p.body;
}

/// One line per post, oldest first: `[author]: body` for the top-level post,
/// `[author][ReplyTo: target]: body` for replies. Pure function of the thread.
inline std::string render_thread(const Thread& thread) {
    std::string out;
    for (std::size_t i = 0; i < thread.posts.size(); ++i) {
        if (i) out += '\n';
        out += render_post_line(thread.posts[i]);
    }
    return out;
}

/// Owns the thread list and the run-global post/thread id counters; the only
/// mutation point for threads during a run.
class Board {
public:
    std::uint64_t allocate_post_id() { return next_post_id_++; }

    Thread& create_thread(Post top) {
        if (top.kind != PostKind::top_level) throw Error("create_thread: post is not top-level");
        if (top.reply_to) throw Error("create_thread: top-level post has a reply_to");
        Thread t;
        t.thread_id = next_thread_id_++;
        t.posts.push_back(std::move(top));
        threads_.push_back(std::move(t));
        return threads_.back();
    }

    std::vector<Thread>& threads() { return threads_; }
    const std::vector<Thread>& threads() const { return threads_; }

private:
    std::vector<Thread> threads_;
    std::uint64_t next_post_id_ = 1;
    int next_thread_id_ = 1;
};

enum class RagMode { none, simple, advanced };

inline const char* to_string(RagMode m) {
    switch (m) {
        case RagMode::none: return "none";
        case RagMode::simple: return "simple";
        case RagMode::advanced: return "advanced";
    }
    return "none";
}

inline RagMode parse_rag_mode(std::string_view s) {
    if (s == "none") return RagMode::none;
    if (s == "simple") return RagMode::simple;
    if (s == "advanced") return RagMode::advanced;
    throw ConfigError("rag_mode: expected none|simple|advanced, got '" + std::string(s) + "'");
}

struct SeedPersona {
    std::string name;
    std::string description;
};

struct SimulationConfig {
    CommunityConfig community;
    RagMode rag_mode = RagMode::advanced;
    int persona_count = 0;
    std::vector<SeedPersona> seed_personas;
    int top_level_count = 28;
    int reply_rounds = 0;
    int thread_capacity = 10;
    std::uint64_t rng_seed = 0;
    std::string backend_id = "mock";
    std::string corpus_path;
    std::string template_dir;
    int simple_mode_depth = 3;  // summary depth shared by all agents in simple mode
};

inline void validate_config(const SimulationConfig& c) {
    if (c.community.goal.empty()) throw ConfigError("goal: must be non-empty");
    if (c.community.rule.empty()) throw ConfigError("rule: must be non-empty");
    if (c.seed_personas.empty()) throw ConfigError("seed_personas: at least one seed persona required");
    if (c.persona_count < static_cast<int>(c.seed_personas.size()))
        throw ConfigError("persona_count: must be >= number of seed personas");
    if (c.top_level_count < 1) throw ConfigError("top_level_count: must be >= 1");
    if (c.reply_rounds < 0) throw ConfigError("reply_rounds: must be >= 0");
    if (c.thread_capacity < 1) throw ConfigError("thread_capacity: must be >= 1");
    if (c.simple_mode_depth < 0 || c.simple_mode_depth > 6)
        throw ConfigError("simple_mode_depth: must be in [0, 6]");
    if (c.backend_id != "mock" && c.backend_id != "http")
        throw ConfigError("backend: expected mock|http, got '" + c.backend_id + "'");
}

/// The {Information} text used when a generation event has no information:
/// rag mode none, and bundles whose retrieval came back empty.
inline constexpr const char* kNoInformationMarker = "(no information)";

struct InformationBundle {
    std::vector<std::pair<std::string, std::string>> overall;     // (article title, summary)
    std::vector<std::pair<std::string, std::string>> individual;  // (article title, summary)
    std::string rendered;                                         // text inserted at {Information}
    std::vector<std::string> diagnostics;
};

}  // namespace snsim
