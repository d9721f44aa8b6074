#pragma once
// Stage 1: grow the persona population from the seed personas. Each new
// persona is produced by a few-shot prompt over up to 10 existing personas,
// parsed, de-duplicated by exact name, and given sampled search-behavior
// parameters. All randomness comes from the "persona" stream, in a fixed
// order per persona, so populations are seed-reproducible.

#include <algorithm>
#include <string>
#include <unordered_set>
#include <vector>

#include "snsim/backend.hpp"
#include "snsim/errors.hpp"
#include "snsim/model.hpp"
#include "snsim/parse.hpp"
#include "snsim/prompt.hpp"
#include "snsim/rng.hpp"
#include "snsim/text.hpp"

namespace snsim {

constexpr int kFewShotSampleLimit = 10;
constexpr int kPersonaMaxAttempts = 8;  // regeneration budget per persona (parse + duplicates)

namespace detail {

/// min(10, |pool|) personas sampled uniformly without replacement, in draw order.
inline std::vector<const UserPersona*> sample_examples(const std::vector<UserPersona>& pool,
                                                       RngStream& rng) {
    const std::size_t k = std::min<std::size_t>(kFewShotSampleLimit, pool.size());
    std::vector<std::size_t> idx(pool.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (std::size_t i = 0; i < k; ++i)
        std::swap(idx[i], idx[i + static_cast<std::size_t>(rng.bounded(idx.size() - i))]);
    std::vector<const UserPersona*> out;
    for (std::size_t i = 0; i < k; ++i) out.push_back(&pool[idx[i]]);
    return out;
}

inline std::string render_example_blocks(const std::vector<const UserPersona*>& examples,
                                         const TemplateSet& templates) {
    std::string out;
    for (std::size_t i = 0; i < examples.size(); ++i) {
        if (i) out += '\n';
        out += render_text(templates.persona_example,
                           {{"sample user name", examples[i]->name},
                            {"sample user persona", examples[i]->description}});
    }
    return out;
}

}  // namespace detail

/// One generated persona: few-shot prompt from the pool, parsed, name-unique
/// against the pool, with parameters from assign_parameters. Retries up to
/// kPersonaMaxAttempts on unparseable output or duplicate names.
inline UserPersona generate_persona(const std::vector<UserPersona>& pool,
                                    const CommunityConfig& community, RngStream& rng,
                                    const TemplateSet& templates, Backend& backend) {
    if (pool.empty()) throw Error("generate_persona: persona pool is empty");
    std::unordered_set<std::string> taken;
    for (const UserPersona& p : pool) taken.insert(p.name);

    std::string last_problem;
    for (int attempt = 1; attempt <= kPersonaMaxAttempts; ++attempt) {
        const auto examples = detail::sample_examples(pool, rng);
        const std::string prompt =
            render(templates.persona_gen,
                   {{"community goal", community.goal},
                    {"samples", detail::render_example_blocks(examples, templates)}});
        const BackendResponse resp = backend.complete(make_request(PromptId::persona_gen, prompt));
        ParsedPersona parsed;
        try {
            parsed = parse_persona(resp.text);
        } catch (const ParseError& e) {
            last_problem = e.what();
            continue;
        }
        if (taken.count(parsed.name)) {
            last_problem = "duplicate persona name '" + parsed.name + "'";
            continue;
        }
        UserPersona persona;
        persona.name = parsed.name;
        persona.description = parsed.description;
        persona.origin = UserPersona::Origin::generated;
        const PersonaParameters params = assign_parameters(rng);
        persona.attention = params.attention;
        persona.range = params.range;
        persona.depth = params.depth;
        return persona;
    }
    throw Error("persona generation exhausted " + std::to_string(kPersonaMaxAttempts) +
                " attempts; last problem: " + last_problem);
}

/// The full population: seeds first (with freshly sampled parameters), then
/// generated personas until persona_count members exist.
inline std::vector<UserPersona> populate(const CommunityConfig& community,
                                         const std::vector<SeedPersona>& seeds, int persona_count,
                                         RngStream& rng, const TemplateSet& templates,
                                         Backend& backend) {
    if (persona_count < static_cast<int>(seeds.size()))
        throw ConfigError("persona_count: must be >= number of seed personas");
    std::vector<UserPersona> population;
    for (const SeedPersona& seed : seeds) {
        UserPersona p;
        p.name = seed.name;
        p.description = seed.description;
        p.origin = UserPersona::Origin::seed;
        const PersonaParameters params = assign_parameters(rng);
        p.attention = params.attention;
        p.range = params.range;
        p.depth = params.depth;
        population.push_back(std::move(p));
    }
    while (static_cast<int>(population.size()) < persona_count)
        population.push_back(generate_persona(population, community, rng, templates, backend));
    return population;
}

}  // namespace snsim
