#include "snsim/persona.hpp"

#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"

using namespace snsim;

namespace {

/// Wraps a backend and counts completions per tag.
class CountingBackend final : public Backend {
public:
    explicit CountingBackend(Backend& inner) : inner_(inner) {}
    std::string id() const override { return inner_.id(); }
    BackendResponse complete(const BackendRequest& request) override {
        if (request.tag == PromptId::persona_gen) persona_calls++;
        last_prompt = request.prompt;
        return inner_.complete(request);
    }
    int persona_calls = 0;
    std::string last_prompt;

private:
    Backend& inner_;
};

CommunityConfig community() {
    CommunityConfig c;
    c.goal = "To discuss the Bank of Japan's monetary policy.";
    c.rule = "Use courteous language in discussions.";
    c.scenario_name = "test";
    return c;
}

std::vector<UserPersona> seeds(int n) {
    std::vector<UserPersona> pool;
    for (int i = 0; i < n; ++i) {
        UserPersona p;
        p.name = "seed_" + std::to_string(i);
        p.description = "seed persona " + std::to_string(i);
        pool.push_back(std::move(p));
    }
    return pool;
}

int count_blocks(const std::string& prompt) {
    int count = 0;
    std::size_t pos = 0;
    while ((pos = prompt.find("<pre class=\"user-name\"", pos)) != std::string::npos) {
        count++;
        pos++;
    }
    return count;
}

}  // namespace

TEST(GeneratePersona, FewShotUsesWholePoolWhenSmall) {
    const auto templates = fixtures::default_templates();
    MockBackend mock;
    CountingBackend backend(mock);
    RngStream rng(1, "persona");
    const auto persona = generate_persona(seeds(3), community(), rng, templates, backend);
    EXPECT_EQ(count_blocks(backend.last_prompt), 3);
    EXPECT_EQ(persona.origin, UserPersona::Origin::generated);
}

TEST(GeneratePersona, FewShotCapsAtTenExamples) {
    const auto templates = fixtures::default_templates();
    MockBackend mock;
    CountingBackend backend(mock);
    RngStream rng(1, "persona");
    generate_persona(seeds(25), community(), rng, templates, backend);
    EXPECT_EQ(count_blocks(backend.last_prompt), 10);
}

TEST(GeneratePersona, RetriesOnScriptedDuplicateName) {
    const auto templates = fixtures::default_templates();
    // Force the first completion to collide with an existing name.
    MockScript script;
    script.forced.push_back({"persona_gen",
                             "seed_0</pre> : \n<pre class=\"user-description\" "
                             "max-length=\"30\">\ncolliding persona</pre>"});
    MockBackend mock(std::move(script));
    CountingBackend backend(mock);
    RngStream rng(5, "persona");
    const auto pool = seeds(2);
    const auto persona = generate_persona(pool, community(), rng, templates, backend);
    EXPECT_EQ(backend.persona_calls, 2);  // collision, then a fresh unique persona
    EXPECT_NE(persona.name, "seed_0");
    EXPECT_NE(persona.name, "seed_1");
}

TEST(GeneratePersona, ExhaustsRetriesAndAborts) {
    const auto templates = fixtures::default_templates();
    MockScript script;
    for (int i = 0; i < kPersonaMaxAttempts; ++i)
        script.forced.push_back({"persona_gen",
                                 "seed_0</pre> : \n<pre class=\"user-description\" "
                                 "max-length=\"30\">\nstuck</pre>"});
    MockBackend mock(std::move(script));
    RngStream rng(5, "persona");
    EXPECT_THROW(generate_persona(seeds(1), community(), rng, templates, mock), Error);
}

TEST(Populate, SeedCountEqualsTargetMakesNoBackendCalls) {
    const auto templates = fixtures::default_templates();
    MockBackend mock;
    CountingBackend backend(mock);
    RngStream rng(2, "persona");
    const auto population = populate(community(), {{"a", "d1"}, {"b", "d2"}}, 2, rng, templates,
                                     backend);
    EXPECT_EQ(population.size(), 2u);
    EXPECT_EQ(backend.persona_calls, 0);
    EXPECT_EQ(population[0].origin, UserPersona::Origin::seed);
}

TEST(Populate, GeneratesExactlyTheMissingPersonas) {
    const auto templates = fixtures::default_templates();
    MockBackend mock;
    CountingBackend backend(mock);
    RngStream rng(2, "persona");
    const auto population =
        populate(community(), {{"a", "d1"}, {"b", "d2"}}, 5, rng, templates, backend);
    EXPECT_EQ(population.size(), 5u);
    EXPECT_EQ(backend.persona_calls, 3);  // no collisions under this seed
}

TEST(Populate, NamesUniqueAndParametersInBounds) {
    const auto templates = fixtures::default_templates();
    MockBackend mock;
    RngStream rng(42, "persona");
    const auto population =
        populate(community(), {{"a", "d1"}, {"b", "d2"}}, 22, rng, templates, mock);
    std::set<std::string> names;
    for (const auto& p : population) {
        names.insert(p.name);
        EXPECT_GE(p.attention, 1);
        EXPECT_LE(p.attention, 10);
        EXPECT_GE(p.range, 1);
        EXPECT_LE(p.range, 10);
        EXPECT_GE(p.depth, 0);
        EXPECT_LE(p.depth, 6);
    }
    EXPECT_EQ(names.size(), population.size());
}

TEST(Populate, ReproducibleForFixedSeed) {
    const auto templates = fixtures::default_templates();
    MockBackend mock_a, mock_b;
    RngStream rng_a(42, "persona"), rng_b(42, "persona");
    const auto a = populate(community(), {{"a", "d1"}}, 8, rng_a, templates, mock_a);
    const auto b = populate(community(), {{"a", "d1"}}, 8, rng_b, templates, mock_b);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].name, b[i].name);
        EXPECT_EQ(a[i].attention, b[i].attention);
        EXPECT_EQ(a[i].range, b[i].range);
        EXPECT_EQ(a[i].depth, b[i].depth);
    }
}
