#pragma once
// Scenario config files: community goal/rule, seed personas, counts, mode,
// seed, corpus path and backend selection. Relative paths resolve against
// the scenario file's directory.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "snsim/errors.hpp"
#include "snsim/model.hpp"
#include "snsim/prompt.hpp"
#include "snsim/text.hpp"

namespace snsim {

inline SimulationConfig load_scenario(const std::filesystem::path& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(detail::read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("scenario file " + path.string() + ": " + e.what());
    }

    SimulationConfig config;
    try {
        config.community.goal = doc.at("goal").get<std::string>();
        config.community.rule = doc.at("rule").get<std::string>();
        config.community.scenario_name = doc.value("scenario_name", path.stem().string());
        config.community.source_id = doc.value("source_id", "local");
        config.rag_mode = parse_rag_mode(doc.value("rag_mode", "advanced"));
        config.persona_count = doc.at("persona_count").get<int>();
        config.top_level_count = doc.value("top_level_count", 28);
        config.reply_rounds = doc.value("reply_rounds", 0);
        config.thread_capacity = doc.value("thread_capacity", 10);
        config.rng_seed = doc.value("rng_seed", std::uint64_t{0});
        config.backend_id = doc.value("backend", "mock");
        config.simple_mode_depth = doc.value("simple_mode_depth", 3);
        for (const auto& s : doc.value("seed_personas", nlohmann::json::array()))
            config.seed_personas.push_back(
                {s.at("name").get<std::string>(), s.at("description").get<std::string>()});

        const auto base = path.parent_path();
        auto resolve = [&](const std::string& p) {
            if (p.empty()) return p;
            std::filesystem::path fp(p);
            return fp.is_absolute() ? fp.lexically_normal().string()
                                    : (base / fp).lexically_normal().string();
        };
        config.corpus_path = resolve(doc.value("corpus", ""));
        config.template_dir = resolve(doc.value("templates", ""));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("scenario file " + path.string() + ": " + e.what());
    }

    for (const SeedPersona& seed : config.seed_personas) {
        if (seed.name.empty() || text::codepoint_count(seed.name) > kMaxPersonaNameChars)
            throw ConfigError("seed_personas: name '" + seed.name + "' must be 1..20 characters");
        if (text::codepoint_count(seed.description) > kMaxPersonaDescriptionChars)
            throw ConfigError("seed_personas: description for '" + seed.name +
                              "' exceeds 30 characters");
    }
    validate_config(config);
    return config;
}

}  // namespace snsim
