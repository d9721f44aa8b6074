#pragma once
// Run orchestration: populate the persona population, create the top-level
// posts, then run reply rounds in which every persona replies once to a
// randomly selected thread (threads over capacity are reselected). Stages
// interleave information gathering per event, since reply queries depend on
// thread content. Given (config, corpus, deterministic backend) the whole
// run is reproducible byte for byte.

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "snsim/backend.hpp"
#include "snsim/corpus.hpp"
#include "snsim/errors.hpp"
#include "snsim/model.hpp"
#include "snsim/parse.hpp"
#include "snsim/persona.hpp"
#include "snsim/prompt.hpp"
#include "snsim/rag.hpp"
#include "snsim/rng.hpp"

namespace snsim {

constexpr int kBodyGenAttempts = 3;  // regenerations before an event is skipped

struct EventRecord {
    int step = 0;
    std::string actor;
    std::string action;  // persona | top_level | reply | skip_post | skip_reply | abort
    int thread_id = -1;
    std::string detail;
};

struct SimulationResult {
    SimulationConfig config;
    std::vector<UserPersona> personas;
    std::vector<Thread> threads;
    std::vector<EventRecord> event_log;
    std::map<std::uint64_t, InformationBundle> bundles;  // post_id -> information used
    std::optional<std::string> aborted;
};

struct ThreadSelection {
    int index = -1;           // position in the thread list
    int size_at_selection = 0;
};

/// Uniform thread selection with reselection: threads whose post count
/// exceeds `capacity` are rejected and the draw repeats among the remaining
/// candidates. Returns nullopt (a recorded skip, not an error) when no
/// thread qualifies.
inline std::optional<ThreadSelection> select_thread(const std::vector<Thread>& threads,
                                                    int capacity, RngStream& rng) {
    if (capacity < 1) throw Error("select_thread: capacity must be >= 1");
    std::vector<int> candidates(threads.size());
    for (std::size_t i = 0; i < threads.size(); ++i) candidates[i] = static_cast<int>(i);
    while (!candidates.empty()) {
        const std::size_t at = static_cast<std::size_t>(rng.bounded(candidates.size()));
        const int index = candidates[at];
        const int size = static_cast<int>(threads[static_cast<std::size_t>(index)].posts.size());
        if (size <= capacity) return ThreadSelection{index, size};
        candidates.erase(candidates.begin() + static_cast<long>(at));
    }
    return std::nullopt;
}

namespace detail {

inline std::vector<std::size_t> sample_authors(std::size_t persona_count, int top_level_count,
                                               RngStream& rng) {
    std::vector<std::size_t> authors;
    const std::size_t k = static_cast<std::size_t>(top_level_count);
    if (k <= persona_count) {
        // without replacement
        std::vector<std::size_t> idx(persona_count);
        for (std::size_t i = 0; i < persona_count; ++i) idx[i] = i;
        for (std::size_t i = 0; i < k; ++i)
            std::swap(idx[i], idx[i + static_cast<std::size_t>(rng.bounded(persona_count - i))]);
        authors.assign(idx.begin(), idx.begin() + static_cast<long>(k));
    } else {
        // more top-level posts than personas: authors repeat
        for (std::size_t i = 0; i < k; ++i)
            authors.push_back(static_cast<std::size_t>(rng.bounded(persona_count)));
    }
    return authors;
}

inline std::vector<std::size_t> shuffled_indices(std::size_t n, RngStream& rng) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i + 1 < n; ++i)
        std::swap(idx[i], idx[i + static_cast<std::size_t>(rng.bounded(n - i))]);
    return idx;
}

inline std::optional<std::string> generate_body(PromptId tag, const std::string& prompt,
                                                Backend& backend) {
    for (int attempt = 1; attempt <= kBodyGenAttempts; ++attempt) {
        const BackendResponse resp = backend.complete(make_request(tag, prompt));
        try {
            return parse_post_body(resp.text);
        } catch (const ParseError&) {
            continue;
        }
    }
    return std::nullopt;
}

}  // namespace detail

inline SimulationResult run(const SimulationConfig& config, const TemplateSet& templates,
                            Backend& backend, const ArticleSource* source) {
    validate_config(config);
    if (config.rag_mode != RagMode::none && source == nullptr)
        throw ConfigError("corpus: an article source is required for rag_mode " +
                          std::string(to_string(config.rag_mode)));

    SimulationResult result;
    result.config = config;

    RngStream persona_rng(config.rng_seed, "persona");
    RngStream author_rng(config.rng_seed, "author_select");
    RngStream thread_rng(config.rng_seed, "thread_select");
    RngStream query_rng(config.rng_seed, "query_select");
    RngStream order_rng(config.rng_seed, "round_order");

    int step = 0;
    auto log = [&](const std::string& actor, const std::string& action, int thread_id,
                   const std::string& detail) {
        result.event_log.push_back({step++, actor, action, thread_id, detail});
    };
    auto abort_run = [&](const std::string& why) {
        result.aborted = why;
        log("engine", "abort", -1, why);
    };

    // Stage 1: personas.
    try {
        result.personas = populate(config.community, config.seed_personas, config.persona_count,
                                   persona_rng, templates, backend);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        abort_run(e.what());
        return result;
    }
    for (const UserPersona& p : result.personas) {
        std::ostringstream d;
        d << "origin=" << to_string(p.origin) << " attention=" << p.attention
          << " range=" << p.range << " depth=" << p.depth;
        log(p.name, "persona", -1, d.str());
    }

    // Simple mode gathers once; the bundle is shared by every event.
    InformationBundle shared_bundle;
    if (config.rag_mode == RagMode::simple) {
        try {
            shared_bundle = gather_simple(config.community, *source, templates, backend, {},
                                          config.simple_mode_depth);
        } catch (const Error& e) {
            abort_run(e.what());
            return result;
        }
    }

    auto bundle_for = [&](const UserPersona& persona,
                          const std::optional<std::string>& thread_text) -> InformationBundle {
        switch (config.rag_mode) {
            case RagMode::none: return empty_information_bundle();
            case RagMode::simple: return shared_bundle;
            case RagMode::advanced:
                return gather_advanced(persona, config.community, thread_text, *source, templates,
                                       backend, query_rng);
        }
        return empty_information_bundle();
    };

    Board board;
    try {
        // Stages 2+3 interleaved: top-level posts.
        const auto authors =
            detail::sample_authors(result.personas.size(), config.top_level_count, author_rng);
        for (std::size_t author_index : authors) {
            const UserPersona& persona = result.personas[author_index];
            const InformationBundle bundle = bundle_for(persona, std::nullopt);
            const std::string prompt = render(templates.post_gen,
                                              {{"community goal", config.community.goal},
                                               {"community rule", config.community.rule},
                                               {"user name", persona.name},
                                               {"user persona", persona.description},
                                               {"Information", bundle.rendered}});
            const auto body = detail::generate_body(PromptId::post_gen, prompt, backend);
            if (!body) {
                log(persona.name, "skip_post", -1, "unparseable output after retries");
                continue;
            }
            Post post;
            post.post_id = board.allocate_post_id();
            post.author = persona.name;
            post.body = *body;
            post.kind = PostKind::top_level;
            post.created_step = step;
            const Thread& thread = board.create_thread(std::move(post));
            const std::uint64_t id = thread.posts.back().post_id;
            result.bundles[id] = bundle;
            log(persona.name, "top_level", thread.thread_id, "post_id=" + std::to_string(id));
        }

        // Reply rounds: every persona replies once per round, in a fresh
        // shuffled order.
        for (int round = 0; round < config.reply_rounds; ++round) {
            for (std::size_t pi : detail::shuffled_indices(result.personas.size(), order_rng)) {
                const UserPersona& persona = result.personas[pi];
                const auto selection =
                    select_thread(board.threads(), config.thread_capacity, thread_rng);
                if (!selection) {
                    log(persona.name, "skip_reply", -1,
                        "round=" + std::to_string(round) + " no eligible thread");
                    continue;
                }
                Thread& thread = board.threads()[static_cast<std::size_t>(selection->index)];
                const std::string thread_text = render_thread(thread);
                const std::string reply_target = thread.posts.back().author;
                const InformationBundle bundle = bundle_for(persona, thread_text);
                const std::string prompt = render(templates.reply_gen,
                                                  {{"community goal", config.community.goal},
                                                   {"community rule", config.community.rule},
                                                   {"user name", persona.name},
                                                   {"user persona", persona.description},
                                                   {"Information", bundle.rendered},
                                                   {"thread", thread_text},
                                                   {"reply target", reply_target}});
                const auto body = detail::generate_body(PromptId::reply_gen, prompt, backend);
                if (!body) {
                    log(persona.name, "skip_reply", thread.thread_id,
                        "round=" + std::to_string(round) + " unparseable output after retries");
                    continue;
                }
                Post reply;
                reply.post_id = board.allocate_post_id();
                reply.author = persona.name;
                reply.body = *body;
                reply.kind = PostKind::reply;
                reply.reply_to = reply_target;
                reply.created_step = step;
                const std::uint64_t id = reply.post_id;
                append_reply(thread, std::move(reply));
                result.bundles[id] = bundle;
                std::ostringstream d;
                d << "round=" << round << " post_id=" << id
                  << " size_at_selection=" << selection->size_at_selection
                  << " reply_to=" << reply_target;
                log(persona.name, "reply", thread.thread_id, d.str());
            }
        }
    } catch (const BackendError& e) {
        abort_run(std::string("backend failure: ") + e.what());
    }

    result.threads = std::move(board.threads());
    return result;
}

}  // namespace snsim
