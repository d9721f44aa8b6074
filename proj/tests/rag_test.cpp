#include "snsim/rag.hpp"

#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "snsim/rng.hpp"

using namespace snsim;

namespace {

CommunityConfig tea_community() {
    CommunityConfig c;
    c.goal = "To discuss the tea trade.";
    c.rule = "Stay polite.";
    c.scenario_name = "tea";
    return c;
}

UserPersona persona_with(int attention, int range, int depth) {
    UserPersona p;
    p.name = "tester";
    p.description = "drinks tea daily";
    p.attention = attention;
    p.range = range;
    p.depth = depth;
    return p;
}

std::vector<SearchQuery> queries_named(std::initializer_list<std::string> names) {
    std::vector<SearchQuery> out;
    for (const auto& n : names) out.push_back(*make_query(n));
    return out;
}

}  // namespace

TEST(GenerateQueries, PostEventsUseThePostTemplateAndReturnTen) {
    const auto templates = fixtures::default_templates();
    MockBackend mock;
    const auto queries =
        generate_queries(persona_with(5, 5, 3), tea_community(), std::nullopt, templates, mock);
    EXPECT_EQ(queries.size(), 10u);
}

TEST(GenerateQueries, ReplyEventsIncludeTheRenderedThread) {
    const auto templates = fixtures::default_templates();

    // capture the prompt to check the thread went in
    class Capture final : public Backend {
    public:
        std::string id() const override { return "capture"; }
        BackendResponse complete(const BackendRequest& request) override {
            prompt = request.prompt;
            return {"- tea exports\n- tea prices\n", "t"};
        }
        std::string prompt;
    } capture;

    const std::string thread_text = "[userA]: tea tariffs rose\n[userB][ReplyTo: userA]: indeed";
    const auto queries = generate_queries(persona_with(5, 5, 3), tea_community(), thread_text,
                                          templates, capture);
    EXPECT_NE(capture.prompt.find(thread_text), std::string::npos);
    ASSERT_EQ(queries.size(), 2u);
}

TEST(GenerateQueries, FallsBackToGoalContentWords) {
    const auto templates = fixtures::default_templates();
    MockScript script;
    for (int i = 0; i < kQueryGenAttempts; ++i) script.forced.push_back({"query_gen_post", "\n\n"});
    MockBackend mock(std::move(script));
    const auto queries =
        generate_queries(persona_with(5, 5, 3), tea_community(), std::nullopt, templates, mock);
    ASSERT_EQ(queries.size(), 1u);
    EXPECT_EQ(queries[0].raw, "discuss tea trade");
}

TEST(SelectQueries, FullSampleWhenAttentionCoversAll) {
    RngStream rng(1, "query_select");
    const auto qs = queries_named({"a", "b", "c"});
    const auto picked = select_queries(qs, 10, rng);
    ASSERT_EQ(picked.size(), 3u);
    EXPECT_EQ(picked[0].raw, "a");  // order preserved
    EXPECT_EQ(picked[1].raw, "b");
    EXPECT_EQ(picked[2].raw, "c");
}

TEST(SelectQueries, SamplesExactlyAttentionDistinctQueries) {
    RngStream rng(7, "query_select");
    std::vector<std::string> names;
    for (int i = 0; i < 10; ++i) names.push_back("q" + std::to_string(i));
    std::vector<SearchQuery> qs;
    for (const auto& n : names) qs.push_back(*make_query(n));
    const auto picked = select_queries(qs, 3, rng);
    ASSERT_EQ(picked.size(), 3u);
    std::set<std::string> distinct;
    int last_index = -1;
    for (const auto& q : picked) {
        distinct.insert(q.raw);
        const int index = std::stoi(q.raw.substr(1));
        EXPECT_GT(index, last_index);  // original relative order
        last_index = index;
    }
    EXPECT_EQ(distinct.size(), 3u);
}

TEST(SelectQueries, MinClampWhenFewerQueriesThanAttention) {
    RngStream rng(7, "query_select");
    const auto picked = select_queries(queries_named({"a", "b"}), 5, rng);
    EXPECT_EQ(picked.size(), 2u);
}

TEST(GatherAdvanced, CountsFollowAttentionAndRange) {
    const auto templates = fixtures::default_templates();
    const auto corpus = fixtures::tea_corpus();
    // Force two distinct queries that each match all three tea articles.
    MockScript script;
    script.forced.push_back({"query_gen_post", "- tea\n- tea prices\n"});
    MockBackend mock(std::move(script));
    RngStream rng(3, "query_select");
    const auto bundle = gather_advanced(persona_with(2, 3, 0), tea_community(), std::nullopt,
                                        corpus, templates, mock, rng);
    EXPECT_EQ(bundle.individual.size(), 2u);  // top-1 of each selected query (deduped)
    EXPECT_EQ(bundle.overall.size(), 3u);     // round-robin until range distinct articles
    EXPECT_FALSE(bundle.rendered.empty());
    EXPECT_NE(bundle.rendered, kNoInformationMarker);
}

TEST(GatherAdvanced, DepthZeroIndividualSummariesAreTitles) {
    const auto templates = fixtures::default_templates();
    const auto corpus = fixtures::tea_corpus();
    MockScript script;
    script.forced.push_back({"query_gen_post", "- green tea\n- herbal\n"});
    MockBackend mock(std::move(script));
    RngStream rng(3, "query_select");
    const auto bundle = gather_advanced(persona_with(5, 2, 0), tea_community(), std::nullopt,
                                        corpus, templates, mock, rng);
    ASSERT_FALSE(bundle.individual.empty());
    for (const auto& [title, summary] : bundle.individual) EXPECT_EQ(summary, title);
}

TEST(GatherAdvanced, SingleArticleCorpusDegenerateDedup) {
    const auto templates = fixtures::default_templates();
    std::vector<Article> one;
    one.push_back(make_article("only", "Tea article", "About tea.", "Tea is discussed. Again."));
    const auto corpus = CorpusIndex::from_articles(std::move(one));
    MockScript script;
    script.forced.push_back({"query_gen_post", "- tea\n"});
    MockBackend mock(std::move(script));
    RngStream rng(3, "query_select");
    const auto bundle = gather_advanced(persona_with(1, 1, 2), tea_community(), std::nullopt,
                                        corpus, templates, mock, rng);
    ASSERT_EQ(bundle.overall.size(), 1u);
    ASSERT_EQ(bundle.individual.size(), 1u);
    EXPECT_EQ(bundle.overall[0].first, "Tea article");
    EXPECT_EQ(bundle.individual[0].first, "Tea article");
}

TEST(GatherAdvanced, EmptyPoolYieldsMarkerBundleWithDiagnostic) {
    const auto templates = fixtures::default_templates();
    const auto corpus = fixtures::tea_corpus();
    MockScript script;
    script.forced.push_back({"query_gen_post", "- zebra unicorns\n"});
    MockBackend mock(std::move(script));
    RngStream rng(3, "query_select");
    const auto bundle = gather_advanced(persona_with(3, 3, 3), tea_community(), std::nullopt,
                                        corpus, templates, mock, rng);
    EXPECT_TRUE(bundle.overall.empty());
    EXPECT_TRUE(bundle.individual.empty());
    EXPECT_EQ(bundle.rendered, kNoInformationMarker);
    ASSERT_FALSE(bundle.diagnostics.empty());
}

TEST(GatherAdvanced, BundleSizesNeverExceedParameters) {
    const auto templates = fixtures::default_templates();
    const auto corpus = CorpusIndex::ingest(fixtures::data_dir() / "corpus");
    MockBackend mock;
    RngStream rng(11, "query_select");
    CommunityConfig boj;
    boj.goal = "To discuss the Bank of Japan's monetary policy.";
    boj.rule = "Use courteous language in discussions.";
    for (int attention = 1; attention <= 10; attention += 3) {
        for (int range = 1; range <= 10; range += 3) {
            const auto bundle = gather_advanced(persona_with(attention, range, 3), boj,
                                                std::nullopt, corpus, templates, mock, rng);
            EXPECT_LE(bundle.individual.size(), static_cast<std::size_t>(attention));
            EXPECT_LE(bundle.overall.size(), static_cast<std::size_t>(range));
        }
    }
}

TEST(GatherSimple, TopThreeSummariesSharedForTheRun) {
    const auto templates = fixtures::default_templates();
    const auto corpus = fixtures::tea_corpus();
    MockScript script;
    script.forced.push_back({"query_gen_post", "- tea\n"});
    MockBackend mock(std::move(script));
    const auto bundle = gather_simple(tea_community(), corpus, templates, mock, {}, 3);
    EXPECT_EQ(bundle.overall.size(), 3u);
    EXPECT_TRUE(bundle.individual.empty());
}

TEST(GatherSimple, FewerThanThreeMatches) {
    const auto templates = fixtures::default_templates();
    const auto corpus = fixtures::tea_corpus();
    MockScript script;
    script.forced.push_back({"query_gen_post", "- herbal\n- unrelated\n"});
    MockBackend mock(std::move(script));
    const auto bundle = gather_simple(tea_community(), corpus, templates, mock, {}, 3);
    EXPECT_EQ(bundle.overall.size(), 1u);  // only one herbal article exists
}

TEST(RenderBundle, MarkerForEmptyAndStableFormat) {
    InformationBundle bundle;
    EXPECT_EQ(render_bundle_text(bundle), kNoInformationMarker);
    bundle.overall.emplace_back("Title A", "Summary A.");
    bundle.individual.emplace_back("Title B", "Summary B.");
    EXPECT_EQ(render_bundle_text(bundle),
              "\xE3\x80\x90Title A\xE3\x80\x91Summary A.\n\xE3\x80\x90Title B\xE3\x80\x91Summary B.");
}
