#include "snsim/summarize.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "snsim/rng.hpp"

using namespace snsim;

namespace {

Article body_article(int sentences) {
    std::ostringstream body;
    for (int i = 0; i < sentences; ++i) {
        body << "Sentence number " << i << " talks about topic" << (i % 7) << " and topic"
             << (i % 3) << ". ";
    }
    return make_article("syn-" + std::to_string(sentences), "Synthetic title",
                        "Synthetic abstract sentence one. And two.", body.str());
}

std::vector<std::vector<std::string>> tokenized(const std::vector<std::string>& sentences) {
    std::vector<std::vector<std::string>> out;
    for (const auto& s : sentences) out.push_back(text::index_terms(s));
    return out;
}

/// True when `joined` equals some subsequence of `sentences` joined by ' '.
bool is_extractive(const std::string& joined, const std::vector<std::string>& sentences) {
    std::string_view rest = joined;
    for (const auto& sentence : sentences) {
        if (rest.empty()) return true;
        if (rest.substr(0, sentence.size()) == sentence) {
            rest.remove_prefix(sentence.size());
            if (!rest.empty()) {
                if (rest.front() != ' ') return false;
                rest.remove_prefix(1);
            }
        }
    }
    return rest.empty();
}

}  // namespace

TEST(BudgetFor, ReproducesTheDepthTable) {
    // target + fraction for every depth, both length columns
    const struct {
        int depth;
        double short_frac;
        double long_frac;
    } kBodyRows[] = {{2, 0.10, 0.05}, {3, 0.20, 0.10}, {4, 0.30, 0.15},
                     {5, 0.40, 0.20}, {6, 0.50, 0.25}};
    for (const int l : {1, 100, 499, 500, 600}) {
        EXPECT_EQ(budget_for(0, l).target, SummaryTarget::title);
        EXPECT_EQ(budget_for(0, l).fraction, 1.0);
        EXPECT_EQ(budget_for(0, l).sentence_count, 1);
        EXPECT_EQ(budget_for(1, l).target, SummaryTarget::abstract);
        EXPECT_EQ(budget_for(1, l).fraction, 1.0);
        EXPECT_FALSE(budget_for(1, l).sentence_count.has_value());  // entire abstract
        for (const auto& row : kBodyRows) {
            const auto b = budget_for(row.depth, l);
            EXPECT_EQ(b.target, SummaryTarget::body);
            EXPECT_DOUBLE_EQ(b.fraction, l < 500 ? row.short_frac : row.long_frac);
        }
    }
    // worked example: depth 3, 100 sentences -> 20 sentences
    EXPECT_EQ(budget_for(3, 100).sentence_count, 20);
    // other exact cells
    EXPECT_EQ(budget_for(2, 600).sentence_count, 30);  // 5% of 600
    EXPECT_EQ(budget_for(2, 1).sentence_count, 1);
    EXPECT_EQ(budget_for(2, 499).sentence_count, 50);   // ceil(49.9)
    EXPECT_EQ(budget_for(6, 500).sentence_count, 125);  // 25% of 500
    EXPECT_EQ(budget_for(6, 2).sentence_count, 1);      // max(1, ceil(0.5*2)) = 1
    EXPECT_THROW(budget_for(7, 10), Error);
    EXPECT_THROW(budget_for(-1, 10), Error);
}

TEST(BudgetFor, BodyCountNonDecreasingInDepth) {
    RngStream rng(3, "budget_prop");
    for (int trial = 0; trial < 200; ++trial) {
        const int l = 1 + static_cast<int>(rng.bounded(600));
        int prev = 0;
        for (int depth = 2; depth <= 6; ++depth) {
            const int count = *budget_for(depth, l).sentence_count;
            EXPECT_GE(count, prev) << "l=" << l << " depth=" << depth;
            prev = count;
        }
    }
}

TEST(LexRank, SingleSentenceScoresOne) {
    EXPECT_EQ(lexrank_scores({"only one."}), std::vector<double>{1.0});
}

TEST(LexRank, IdenticalSentencesShareScoreEqually) {
    const auto scores = lexrank_scores({"same words here.", "same words here.", "same words here."});
    ASSERT_EQ(scores.size(), 3u);
    for (double s : scores) EXPECT_NEAR(s, 1.0 / 3.0, 1e-9);
}

TEST(LexRank, ScoresSumToOne) {
    const auto a = body_article(57);
    const auto scores = lexrank_scores(a.body_sentences);
    EXPECT_NEAR(std::accumulate(scores.begin(), scores.end(), 0.0), 1.0, 1e-9);
}

// A star-shaped similarity graph: sentence 0 links to 1 and 3, sentence 2 is
// isolated. Gives genuinely non-uniform centrality.
TEST(LexRank, FourSentenceFixtureMatchesDirectSolve) {
    const std::vector<std::string> sentences = {
        "Rates bonds climbed sharply.",
        "Rates bonds worried importers.",
        "Cafes served matcha everywhere.",
        "Climbed sharply against forecasts.",
    };
    const LexRankConfig config;
    const auto scores = lexrank_scores(sentences, config);
    const auto B = oracle::lexrank_matrix(tokenized(sentences), config.similarity_threshold);
    const auto direct = oracle::stationary_direct(B, config.damping);
    ASSERT_EQ(scores.size(), direct.size());
    for (std::size_t i = 0; i < scores.size(); ++i) EXPECT_NEAR(scores[i], direct[i], 1e-6);
    // frozen values from the direct solve
    EXPECT_NEAR(scores[0], 0.31204177, 1e-6);
    EXPECT_NEAR(scores[1], 0.21897911, 1e-6);
    EXPECT_NEAR(scores[2], 0.25000000, 1e-6);
    EXPECT_NEAR(scores[3], 0.21897911, 1e-6);
}

TEST(LexRank, PowerIterationMatchesDirectSolveOnVariedFixtures) {
    RngStream rng(17, "lexrank_fixtures");
    const std::vector<std::string> vocabulary = {
        "rates", "bank", "yen",   "policy", "markets", "tea",    "exports",
        "cafes", "fans", "prices", "growth", "wages",  "deficit", "bonds"};
    const LexRankConfig config;
    for (int fixture = 0; fixture < 12; ++fixture) {
        const int n = 2 + static_cast<int>(rng.bounded(11));  // 2..12 sentences
        std::vector<std::string> sentences;
        for (int i = 0; i < n; ++i) {
            std::ostringstream s;
            const int words = 3 + static_cast<int>(rng.bounded(5));
            for (int w = 0; w < words; ++w) {
                if (w) s << ' ';
                s << vocabulary[static_cast<std::size_t>(rng.bounded(vocabulary.size()))];
            }
            s << '.';
            sentences.push_back(s.str());
        }
        const auto scores = lexrank_scores(sentences, config);
        const auto direct = oracle::stationary_direct(
            oracle::lexrank_matrix(tokenized(sentences), config.similarity_threshold),
            config.damping);
        ASSERT_EQ(scores.size(), direct.size());
        double sum = 0.0;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            EXPECT_NEAR(scores[i], direct[i], 1e-6) << "fixture " << fixture << " sentence " << i;
            sum += scores[i];
        }
        EXPECT_NEAR(sum, 1.0, 1e-9);
    }
}

TEST(Summarize, TitleAndAbstractPassThrough) {
    const auto a = body_article(10);
    EXPECT_EQ(summarize(a, 0), a.title);
    EXPECT_EQ(summarize(a, 1), a.abstract);
}

TEST(Summarize, TinyBodyKeepsAtLeastOneSentence) {
    const auto a = make_article("t", "Title", "Abs.", "First point. Second point.");
    const std::string out = summarize(a, 6);
    EXPECT_TRUE(out == "First point." || out == "Second point.");
}

TEST(Summarize, HundredSentencesAtDepthThreeKeepsTwenty) {
    const auto a = body_article(100);
    ASSERT_EQ(a.length(), 100);
    const std::string out = summarize(a, 3);
    // exactly 20 sentences, all from the body, in original order
    const auto out_sentences = text::split_sentences(out);
    EXPECT_EQ(out_sentences.size(), 20u);
    EXPECT_TRUE(is_extractive(out, a.body_sentences));
}

TEST(Summarize, EmptyBodyFallsBackToTitleWithDiagnostic) {
    const auto a = make_article("e", "Fallback title", "", "");
    std::vector<std::string> diagnostics;
    EXPECT_EQ(summarize(a, 4, {}, &diagnostics), "Fallback title");
    ASSERT_EQ(diagnostics.size(), 1u);
    EXPECT_NE(diagnostics[0].find("empty body"), std::string::npos);
}

TEST(Summarize, MissingAbstractFallsBackToLeadingBodySentences) {
    const auto a = make_article("m", "Title", "", "One. Two. Three. Four.");
    std::vector<std::string> diagnostics;
    EXPECT_EQ(summarize(a, 1, {}, &diagnostics), "One. Two. Three.");
    ASSERT_EQ(diagnostics.size(), 1u);
}

TEST(Summarize, ExtractivenessHoldsAcrossDepths) {
    for (const int l : {3, 12, 47, 100}) {
        const auto a = body_article(l);
        for (int depth = 2; depth <= 6; ++depth) {
            const std::string out = summarize(a, depth);
            EXPECT_TRUE(is_extractive(out, a.body_sentences)) << "l=" << l << " depth=" << depth;
        }
    }
}

TEST(Summarize, DeterministicBytes) {
    const auto a = body_article(33);
    EXPECT_EQ(summarize(a, 4), summarize(a, 4));
}
