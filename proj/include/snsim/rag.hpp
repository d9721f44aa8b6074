#pragma once
// Information gathering for generation events under the three modes:
//   none     — the {Information} binding is the empty marker;
//   simple   — one run-global query, top-3 summaries, shared by all agents;
//   advanced — per-agent queries, attention/range-sized article sets, and
//              depth-driven summarization.
//
// Advanced assembly: the "individual" set takes the top-ranked article of
// each selected query (summarized at the persona's depth); the "overall" set
// takes the first `range` distinct articles round-robin across the selected
// queries' result lists (summarized at abstract level). Overlap between the
// two sets is allowed.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "snsim/backend.hpp"
#include "snsim/corpus.hpp"
#include "snsim/model.hpp"
#include "snsim/parse.hpp"
#include "snsim/prompt.hpp"
#include "snsim/rng.hpp"
#include "snsim/summarize.hpp"

namespace snsim {

constexpr int kQueryGenAttempts = 3;
constexpr int kSimpleModeArticles = 3;
constexpr int kOverallSummaryDepth = 1;  // "overall information" reads at abstract level

/// One "【title】summary" line per entry, overall block first. Empty bundles
/// render as the no-information marker.
inline std::string render_bundle_text(const InformationBundle& bundle) {
    if (bundle.overall.empty() && bundle.individual.empty()) return kNoInformationMarker;
    std::string out;
    auto emit = [&](const std::vector<std::pair<std::string, std::string>>& entries) {
        for (const auto& [title, summary] : entries) {
            if (!out.empty()) out += '\n';
            out += "\xE3\x80\x90" + title + "\xE3\x80\x91" + summary;  // 【title】summary
        }
    };
    emit(bundle.overall);
    emit(bundle.individual);
    return out;
}

inline InformationBundle empty_information_bundle(std::string diagnostic = {}) {
    InformationBundle bundle;
    if (!diagnostic.empty()) bundle.diagnostics.push_back(std::move(diagnostic));
    bundle.rendered = kNoInformationMarker;
    return bundle;
}

/// Up to 10 search queries for one generation event. Top-level events use the
/// post query template; replies include the rendered thread. If nothing
/// parses after bounded retries, falls back to a single query built from the
/// community goal's content words, so at least one query always exists.
inline std::vector<SearchQuery> generate_queries(const UserPersona& persona,
                                                 const CommunityConfig& community,
                                                 const std::optional<std::string>& thread_text,
                                                 const TemplateSet& templates, Backend& backend) {
    const PromptTemplate& tpl = thread_text ? templates.query_gen_reply : templates.query_gen_post;
    Bindings bindings{{"user name", persona.name},
                      {"user persona", persona.description},
                      {"community goal", community.goal}};
    if (thread_text) bindings["All posts in targeted thread"] = *thread_text;
    const std::string prompt = render(tpl, bindings);

    for (int attempt = 1; attempt <= kQueryGenAttempts; ++attempt) {
        const BackendResponse resp = backend.complete(make_request(tpl.id, prompt));
        auto queries = parse_queries(resp.text);
        if (!queries.empty()) return queries;
    }
    SearchQuery fallback;
    fallback.terms = text::content_words(community.goal);
    if (fallback.terms.empty())
        for (const auto& seg : text::segment(text::normalize(community.goal)))
            fallback.terms.push_back(seg.chars);
    for (std::size_t i = 0; i < fallback.terms.size(); ++i) {
        if (i) fallback.raw += ' ';
        fallback.raw += fallback.terms[i];
    }
    return {fallback};
}

/// Uniform sample without replacement of min(attention, |queries|) queries,
/// preserving the original relative order. Draws from the caller's stream.
inline std::vector<SearchQuery> select_queries(const std::vector<SearchQuery>& queries,
                                               int attention, RngStream& rng) {
    const std::size_t n = queries.size();
    if (n == 0) return {};
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(std::max(attention, 0)), n);
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < k; ++i)
        std::swap(idx[i], idx[i + static_cast<std::size_t>(rng.bounded(n - i))]);
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    std::vector<SearchQuery> out;
    for (std::size_t i : idx) out.push_back(queries[i]);
    return out;
}

inline InformationBundle gather_advanced(const UserPersona& persona,
                                         const CommunityConfig& community,
                                         const std::optional<std::string>& thread_text,
                                         const ArticleSource& source, const TemplateSet& templates,
                                         Backend& backend, RngStream& query_rng,
                                         const LexRankConfig& lexrank = {}) {
    const auto queries = generate_queries(persona, community, thread_text, templates, backend);
    const auto selected = select_queries(queries, persona.attention, query_rng);

    std::vector<std::vector<const Article*>> pools;
    for (const SearchQuery& q : selected) pools.push_back(source.search(q, kSearchResultLimit));

    // individual: top-ranked article per selected query, deduplicated,
    // query order preserved.
    std::vector<const Article*> individual;
    std::set<std::string> seen_individual;
    for (const auto& pool : pools)
        if (!pool.empty() && seen_individual.insert(pool.front()->article_id).second)
            individual.push_back(pool.front());

    // overall: first `range` distinct articles, rank 1 of each query, then
    // rank 2, ... (overlap with individual allowed).
    std::vector<const Article*> overall;
    std::set<std::string> seen_overall;
    bool more = true;
    for (std::size_t rank = 0; more && static_cast<int>(overall.size()) < persona.range; ++rank) {
        more = false;
        for (const auto& pool : pools) {
            if (rank >= pool.size()) continue;
            more = true;
            if (seen_overall.insert(pool[rank]->article_id).second) {
                overall.push_back(pool[rank]);
                if (static_cast<int>(overall.size()) == persona.range) break;
            }
        }
    }

    if (overall.empty() && individual.empty())
        return empty_information_bundle("no articles matched any selected query");

    InformationBundle bundle;
    for (const Article* a : overall)
        bundle.overall.emplace_back(a->title,
                                    summarize(*a, kOverallSummaryDepth, lexrank, &bundle.diagnostics));
    for (const Article* a : individual)
        bundle.individual.emplace_back(a->title,
                                       summarize(*a, persona.depth, lexrank, &bundle.diagnostics));
    bundle.rendered = render_bundle_text(bundle);
    return bundle;
}

/// The run-global simple-mode bundle: one query generated from the community
/// goal at the start of the run, top three results summarized at the fixed
/// simple-mode depth. Callers cache the result so every generation event in
/// the run sees identical bytes.
inline InformationBundle gather_simple(const CommunityConfig& community, const ArticleSource& source,
                                       const TemplateSet& templates, Backend& backend,
                                       const LexRankConfig& lexrank = {}, int simple_depth = 3) {
    UserPersona community_voice;
    community_voice.name = "community";
    community_voice.description = community.goal;
    const auto queries =
        generate_queries(community_voice, community, std::nullopt, templates, backend);
    const auto pool = source.search(queries.front(), kSimpleModeArticles);
    if (pool.empty()) return empty_information_bundle("no articles matched the community query");

    InformationBundle bundle;
    for (const Article* a : pool)
        bundle.overall.emplace_back(a->title, summarize(*a, simple_depth, lexrank, &bundle.diagnostics));
    bundle.rendered = render_bundle_text(bundle);
    return bundle;
}

}  // namespace snsim
