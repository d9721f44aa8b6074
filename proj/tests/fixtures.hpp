#pragma once
// Shared test fixtures: data paths, the golden prompt bindings, and small
// in-memory corpora.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "snsim/corpus.hpp"
#include "snsim/model.hpp"
#include "snsim/prompt.hpp"

namespace fixtures {

inline std::filesystem::path data_dir() { return SNSIM_DATA_DIR; }
inline std::filesystem::path test_data_dir() { return SNSIM_TEST_DATA_DIR; }
inline std::filesystem::path golden_dir() { return SNSIM_GOLDEN_DIR; }

inline snsim::TemplateSet default_templates() {
    return snsim::TemplateSet::load(data_dir() / "templates" / "default");
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Fixed bindings used by the prompt golden tests.
inline snsim::Bindings golden_bindings() {
    return {
        {"community goal", "To chat about Shohei Ohtani's activities."},
        {"community rule", "Avoid topics not related to Shohei Ohtani."},
        {"user name", "dodgers_fan99"},
        {"user persona", "Cheers every Ohtani at-bat"},
        {"Information", "\xE3\x80\x90Sample Article\xE3\x80\x91A short summary of the article."},
        {"thread", "[userA]: hello\n[userB][ReplyTo: userA]: hi there"},
        {"All posts in targeted thread", "[userA]: hello\n[userB][ReplyTo: userA]: hi there"},
        {"reply target", "userB"},
        {"samples",
         "<pre class=\"user-name\" max-length=\"20\">\ndodgers_fan99</pre> : \n"
         "<pre class=\"user-description\" max-length=\"30\">\nCheers every Ohtani at-bat</pre>\n"
         "<pre class=\"user-name\" max-length=\"20\">\nstats_nerd</pre> : \n"
         "<pre class=\"user-description\" max-length=\"30\">\nTracks pitching numbers</pre>"},
    };
}

inline const char* golden_name(snsim::PromptId id) {
    switch (id) {
        case snsim::PromptId::persona_gen: return "persona_gen.golden.txt";
        case snsim::PromptId::query_gen_post: return "query_gen_post.golden.txt";
        case snsim::PromptId::query_gen_reply: return "query_gen_reply.golden.txt";
        case snsim::PromptId::post_gen: return "post_gen.golden.txt";
        case snsim::PromptId::reply_gen: return "reply_gen.golden.txt";
    }
    return "";
}

/// Small themed corpus for retrieval/rag tests; every article mentions
/// "tea", with varying frequencies of the other terms.
inline snsim::CorpusIndex tea_corpus() {
    std::vector<snsim::Article> articles;
    articles.push_back(snsim::make_article(
        "tea-1", "Green tea prices rise",
        "Green tea is in demand. Importers react.",
        "Green tea prices rose sharply this year. Farmers expect more demand for green tea. "
        "Exporters disagree about tea tariffs. The harvest was early. Prices matter to buyers."));
    articles.push_back(snsim::make_article(
        "tea-2", "Black tea exports fall",
        "Black tea shipments slipped.",
        "Black tea exports fell again. Shipping costs hurt tea traders. The tea auction was "
        "quiet. Buyers waited for discounts."));
    articles.push_back(snsim::make_article(
        "tea-3", "Herbal tea trend grows",
        "Herbal blends gain fans.",
        "Herbal tea sales grew. Young buyers prefer herbal tea blends. Cafes now sell tea "
        "flights. Tea culture keeps changing. Growth may continue next year. Analysts are "
        "optimistic."));
    return snsim::CorpusIndex::from_articles(std::move(articles));
}

}  // namespace fixtures
