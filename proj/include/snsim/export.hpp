#pragma once
// Run export: one JSON document per run with sorted keys (byte-stable), a
// TSV event log, and a human-readable transcript. load_run() reads the JSON
// document back for downstream tools (evaluation sheets).

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "snsim/engine.hpp"
#include "snsim/errors.hpp"
#include "snsim/model.hpp"

namespace snsim {

inline nlohmann::json bundle_to_json(const InformationBundle& bundle) {
    auto entries = [](const std::vector<std::pair<std::string, std::string>>& list) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [title, summary] : list)
            arr.push_back(nlohmann::json{{"summary", summary}, {"title", title}});
        return arr;
    };
    return nlohmann::json{{"individual", entries(bundle.individual)},
                          {"overall", entries(bundle.overall)},
                          {"rendered", bundle.rendered}};
}

inline nlohmann::json result_to_json(const SimulationResult& result) {
    const SimulationConfig& c = result.config;

    nlohmann::json seeds = nlohmann::json::array();
    for (const SeedPersona& s : c.seed_personas)
        seeds.push_back(nlohmann::json{{"description", s.description}, {"name", s.name}});

    nlohmann::json config{{"backend_id", c.backend_id},
                          {"corpus_path", c.corpus_path},
                          {"goal", c.community.goal},
                          {"persona_count", c.persona_count},
                          {"reply_rounds", c.reply_rounds},
                          {"rule", c.community.rule},
                          {"scenario_name", c.community.scenario_name},
                          {"seed_personas", seeds},
                          {"simple_mode_depth", c.simple_mode_depth},
                          {"source_id", c.community.source_id},
                          {"thread_capacity", c.thread_capacity},
                          {"top_level_count", c.top_level_count}};

    nlohmann::json personas = nlohmann::json::array();
    for (const UserPersona& p : result.personas)
        personas.push_back(nlohmann::json{{"attention", p.attention},
                                          {"depth", p.depth},
                                          {"description", p.description},
                                          {"name", p.name},
                                          {"origin", to_string(p.origin)},
                                          {"range", p.range}});

    nlohmann::json threads = nlohmann::json::array();
    for (const Thread& t : result.threads) {
        nlohmann::json posts = nlohmann::json::array();
        for (const Post& p : t.posts) {
            nlohmann::json post{{"author", p.author},
                                {"body", p.body},
                                {"created_step", p.created_step},
                                {"post_id", p.post_id}};
            if (p.reply_to) post["reply_to"] = *p.reply_to;
            if (auto it = result.bundles.find(p.post_id); it != result.bundles.end())
                post["information"] = bundle_to_json(it->second);
            posts.push_back(std::move(post));
        }
        threads.push_back(nlohmann::json{{"posts", std::move(posts)}, {"thread_id", t.thread_id}});
    }

    nlohmann::json doc{{"config", std::move(config)},
                       {"personas", std::move(personas)},
                       {"rag_mode", to_string(c.rag_mode)},
                       {"rng_seed", c.rng_seed},
                       {"threads", std::move(threads)}};
    if (result.aborted) doc["aborted"] = *result.aborted;
    return doc;
}

inline std::string format_event_log(const SimulationResult& result) {
    std::ostringstream out;
    out << "step\tactor\taction\tthread_id\tdetail\n";
    for (const EventRecord& e : result.event_log) {
        out << e.step << '\t' << e.actor << '\t' << e.action << '\t';
        if (e.thread_id >= 0) out << e.thread_id;
        out << '\t' << e.detail << '\n';
    }
    return out.str();
}

inline std::string format_transcript(const SimulationResult& result) {
    std::ostringstream out;
    out << "Scenario: " << result.config.community.scenario_name << '\n'
        << "Goal: " << result.config.community.goal << '\n'
        << "Rule: " << result.config.community.rule << '\n'
        << "Mode: " << to_string(result.config.rag_mode) << '\n'
        << "Seed: " << result.config.rng_seed << '\n';
    if (result.aborted) out << "Aborted: " << *result.aborted << '\n';
    for (const Thread& t : result.threads)
        out << "\n--- Thread " << t.thread_id << " ---\n" << render_thread(t) << '\n';
    return out.str();
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path.string());
    out << content;
}

}  // namespace detail

/// Writes run.json, events.tsv and transcript.txt into `out_dir`.
inline void write_run_files(const SimulationResult& result, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    detail::write_file(out_dir / "run.json", result_to_json(result).dump(2) + "\n");
    detail::write_file(out_dir / "events.tsv", format_event_log(result));
    detail::write_file(out_dir / "transcript.txt", format_transcript(result));
}

/// Reads a run.json document back into a SimulationResult (event log and
/// bundle side-table are not round-tripped; sheets do not need them).
inline SimulationResult load_run(const std::filesystem::path& run_json) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(detail::read_file(run_json));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("run file " + run_json.string() + ": " + e.what());
    }
    SimulationResult result;
    try {
        const auto& config = doc.at("config");
        result.config.community.goal = config.at("goal").get<std::string>();
        result.config.community.rule = config.at("rule").get<std::string>();
        result.config.community.scenario_name = config.value("scenario_name", "");
        result.config.community.source_id = config.value("source_id", "local");
        result.config.backend_id = config.value("backend_id", "mock");
        result.config.corpus_path = config.value("corpus_path", "");
        result.config.persona_count = config.value("persona_count", 0);
        result.config.reply_rounds = config.value("reply_rounds", 0);
        result.config.simple_mode_depth = config.value("simple_mode_depth", 3);
        result.config.thread_capacity = config.value("thread_capacity", 10);
        result.config.top_level_count = config.value("top_level_count", 0);
        for (const auto& s : config.value("seed_personas", nlohmann::json::array()))
            result.config.seed_personas.push_back(
                {s.at("name").get<std::string>(), s.at("description").get<std::string>()});
        result.config.rag_mode = parse_rag_mode(doc.at("rag_mode").get<std::string>());
        result.config.rng_seed = doc.at("rng_seed").get<std::uint64_t>();
        for (const auto& p : doc.at("personas")) {
            UserPersona persona;
            persona.name = p.at("name").get<std::string>();
            persona.description = p.at("description").get<std::string>();
            persona.attention = p.at("attention").get<int>();
            persona.range = p.at("range").get<int>();
            persona.depth = p.at("depth").get<int>();
            persona.origin = p.value("origin", "seed") == std::string("generated")
                                 ? UserPersona::Origin::generated
                                 : UserPersona::Origin::seed;
            result.personas.push_back(std::move(persona));
        }
        for (const auto& t : doc.at("threads")) {
            Thread thread;
            thread.thread_id = t.at("thread_id").get<int>();
            for (const auto& p : t.at("posts")) {
                Post post;
                post.post_id = p.at("post_id").get<std::uint64_t>();
                post.author = p.at("author").get<std::string>();
                post.body = p.at("body").get<std::string>();
                post.created_step = p.value("created_step", 0);
                if (p.contains("reply_to")) {
                    post.kind = PostKind::reply;
                    post.reply_to = p.at("reply_to").get<std::string>();
                } else {
                    post.kind = PostKind::top_level;
                }
                thread.posts.push_back(std::move(post));
            }
            result.threads.push_back(std::move(thread));
        }
        if (doc.contains("aborted")) result.aborted = doc.at("aborted").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("run file " + run_json.string() + ": " + e.what());
    }
    return result;
}

}  // namespace snsim
