#pragma once
// Extractive summarization: LexRank sentence centrality plus the depth/length
// budget table that maps a reader's depth (0..6) and an article's sentence
// count to a summarization target and output size.
//
// LexRank here is the thresholded variant: tf-idf sentence vectors (idf over
// the sentences of the one document), a binary cosine-similarity graph with
// edges at similarity >= threshold, row-normalized to a stochastic matrix
// (isolated sentences get uniform rows), and stationary scores from power
// iteration of p <- d/N + (1-d) * B^T p.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "snsim/errors.hpp"
#include "snsim/model.hpp"
#include "snsim/text.hpp"

namespace snsim {

using text::split_sentences;

enum class SummaryTarget { title, abstract, body };

inline const char* to_string(SummaryTarget t) {
    switch (t) {
        case SummaryTarget::title: return "title";
        case SummaryTarget::abstract: return "abstract";
        case SummaryTarget::body: return "body";
    }
    return "title";
}

struct LexRankConfig {
    double similarity_threshold = 0.1;
    double damping = 0.15;
    double convergence_epsilon = 1e-6;
    int max_iterations = 100;
};

/// Articles with at least this many body sentences use the halved budgets.
constexpr int kLongArticleSentences = 500;

/// Kept body fraction, in percent, for depths 2..6. Integer percentages keep
/// the ceil arithmetic exact (20% of 100 must be exactly 20).
inline int body_budget_percent(int depth, int l) {
    static constexpr int kShort[] = {10, 20, 30, 40, 50};
    static constexpr int kLong[] = {5, 10, 15, 20, 25};
    return (l < kLongArticleSentences ? kShort : kLong)[depth - 2];
}

struct SummaryBudget {
    SummaryTarget target = SummaryTarget::title;
    double fraction = 1.0;
    // Output sentence count. Empty means the entire target (depth 1 keeps the
    // whole abstract); the title target always counts as one.
    std::optional<int> sentence_count;
};

/// Budget resolution: depth 0 -> title, depth 1 -> abstract in full,
/// depths 2..6 -> max(1, ceil(fraction * l)) body sentences, with the
/// fraction halved for articles of l >= 500 sentences.
inline SummaryBudget budget_for(int depth, int l) {
    if (depth < 0 || depth > 6) throw Error("depth out of range [0,6]: " + std::to_string(depth));
    if (l < 0) throw Error("article length must be >= 0");
    if (depth == 0) return {SummaryTarget::title, 1.0, 1};
    if (depth == 1) return {SummaryTarget::abstract, 1.0, std::nullopt};
    const int pct = body_budget_percent(depth, l);
    const int count = std::max(1, (pct * l + 99) / 100);  // exact ceil(pct% of l)
    return {SummaryTarget::body, pct / 100.0, count};
}

/// Stationary LexRank scores, one per sentence, summing to 1.
inline std::vector<double> lexrank_scores(const std::vector<std::string>& sentences,
                                          const LexRankConfig& config = {}) {
    const std::size_t n = sentences.size();
    if (n == 0) return {};
    if (n == 1) return {1.0};

    // tf vectors and document frequencies over the sentence collection.
    std::vector<std::map<std::string, double>> tf(n);
    std::map<std::string, int> df;
    for (std::size_t i = 0; i < n; ++i) {
        for (const std::string& term : text::index_terms(sentences[i])) tf[i][term] += 1.0;
        for (const auto& [term, _] : tf[i]) df[term]++;
    }
    std::map<std::string, double> idf;
    for (const auto& [term, d] : df) idf[term] = std::log(static_cast<double>(n) / d);

    std::vector<double> norm(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [term, f] : tf[i]) {
            const double w = f * idf[term];
            norm[i] += w * w;
        }
        norm[i] = std::sqrt(norm[i]);
    }
    auto cosine = [&](std::size_t i, std::size_t j) {
        if (norm[i] == 0.0 || norm[j] == 0.0) return 0.0;
        double dot = 0.0;
        for (const auto& [term, f] : tf[i]) {
            auto it = tf[j].find(term);
            if (it != tf[j].end()) dot += f * it->second * idf[term] * idf[term];
        }
        return dot / (norm[i] * norm[j]);
    };

    // Binary adjacency (self-loops included when a sentence has any weight),
    // row-normalized; rows with no edges become uniform.
    std::vector<std::vector<double>> B(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        int degree = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (cosine(i, j) >= config.similarity_threshold) {
                B[i][j] = 1.0;
                degree++;
            }
        if (degree == 0) {
            for (std::size_t j = 0; j < n; ++j) B[i][j] = 1.0 / static_cast<double>(n);
        } else {
            for (std::size_t j = 0; j < n; ++j) B[i][j] /= degree;
        }
    }

    std::vector<double> p(n, 1.0 / static_cast<double>(n));
    std::vector<double> q(n, 0.0);
    for (int iter = 0; iter < config.max_iterations; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += B[j][i] * p[j];
            q[i] = config.damping / static_cast<double>(n) + (1.0 - config.damping) * acc;
        }
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) delta += std::abs(q[i] - p[i]);
        p.swap(q);
        if (delta < config.convergence_epsilon) break;
    }
    return p;
}

/// Summary of one article at a reading depth. Title and abstract targets pass
/// the field through verbatim; the body target keeps the top-k sentences by
/// LexRank score (ties to the earlier sentence), emitted in document order
/// and joined by single spaces. Fallbacks append a note to `diagnostics`.
inline std::string summarize(const Article& article, int depth, const LexRankConfig& config = {},
                             std::vector<std::string>* diagnostics = nullptr) {
    auto note = [&](const std::string& msg) {
        if (diagnostics) diagnostics->push_back(msg);
    };
    const SummaryBudget budget = budget_for(depth, article.length());
    switch (budget.target) {
        case SummaryTarget::title:
            return article.title;
        case SummaryTarget::abstract: {
            if (!text::split_sentences(article.abstract).empty()) return article.abstract;
            // No abstract: fall back to the first body sentences.
            if (article.body_sentences.empty()) {
                note("article " + article.article_id + " has no abstract and no body; using title");
                return article.title;
            }
            note("article " + article.article_id + " has no abstract; using leading body sentences");
            std::string out;
            const int take = std::min<int>(3, article.length());
            for (int i = 0; i < take; ++i) {
                if (i) out += ' ';
                out += article.body_sentences[i];
            }
            return out;
        }
        case SummaryTarget::body: {
            if (article.body_sentences.empty()) {
                note("article " + article.article_id + " has an empty body; using title");
                return article.title;
            }
            const int k = *budget.sentence_count;
            const auto scores = lexrank_scores(article.body_sentences, config);
            std::vector<std::size_t> order(scores.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                if (scores[a] != scores[b]) return scores[a] > scores[b];
                return a < b;
            });
            order.resize(std::min<std::size_t>(order.size(), static_cast<std::size_t>(k)));
            std::sort(order.begin(), order.end());
            std::string out;
            for (std::size_t i = 0; i < order.size(); ++i) {
                if (i) out += ' ';
                out += article.body_sentences[order[i]];
            }
            return out;
        }
    }
    return article.title;
}

}  // namespace snsim
