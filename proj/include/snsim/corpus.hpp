#pragma once
// Article sources. CorpusIndex is the shipped local implementation: a flat
// directory of JSON article files indexed into an inverted index with AND
// keyword search, tf-sum ranking and article_id tie-breaks. An HTTP source
// with the same contract lives in http_source.hpp.

#include <algorithm>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "snsim/errors.hpp"
#include "snsim/model.hpp"
#include "snsim/prompt.hpp"
#include "snsim/query.hpp"
#include "snsim/text.hpp"

namespace snsim {

constexpr int kSearchResultLimit = 10;  // articles scraped per query

/// Fills derived fields (body sentences) from the raw article text.
inline Article make_article(std::string article_id, std::string title, std::string abstract,
                            std::string body, std::string published = {}) {
    Article a;
    a.article_id = std::move(article_id);
    a.title = std::move(title);
    a.abstract = std::move(abstract);
    a.body = std::move(body);
    a.published = std::move(published);
    a.body_sentences = text::split_sentences(a.body);
    return a;
}

inline Article parse_article_json(const nlohmann::json& doc, const std::string& origin) {
    for (const char* field : {"article_id", "title", "body"})
        if (!doc.contains(field) || !doc[field].is_string() || doc[field].get<std::string>().empty())
            throw CorpusError("malformed article " + origin + ": missing or empty '" + field + "'");
    return make_article(doc["article_id"].get<std::string>(), doc["title"].get<std::string>(),
                        doc.value("abstract", ""), doc["body"].get<std::string>(),
                        doc.value("published", ""));
}

inline Article parse_article_file(const std::filesystem::path& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(detail::read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw CorpusError("malformed article " + path.string() + ": " + e.what());
    }
    return parse_article_json(doc, path.string());
}

class ArticleSource {
public:
    virtual ~ArticleSource() = default;

    /// Up to `limit` articles containing every query term, ranked by
    /// descending summed term frequency, ties by ascending article_id.
    virtual std::vector<const Article*> search(const SearchQuery& query, int limit) const = 0;
};

class CorpusIndex final : public ArticleSource {
public:
    static CorpusIndex ingest(const std::filesystem::path& dir) {
        if (!std::filesystem::is_directory(dir))
            throw CorpusError("corpus path is not a directory: " + dir.string());
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ".json")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());

        CorpusIndex index;
        for (const auto& path : files) index.articles_.push_back(parse_article_file(path));
        std::sort(index.articles_.begin(), index.articles_.end(),
                  [](const Article& a, const Article& b) { return a.article_id < b.article_id; });
        for (std::size_t i = 0; i + 1 < index.articles_.size(); ++i)
            if (index.articles_[i].article_id == index.articles_[i + 1].article_id)
                throw CorpusError("duplicate article_id: " + index.articles_[i].article_id);
        index.build();
        return index;
    }

    static CorpusIndex from_articles(std::vector<Article> articles) {
        CorpusIndex index;
        index.articles_ = std::move(articles);
        std::sort(index.articles_.begin(), index.articles_.end(),
                  [](const Article& a, const Article& b) { return a.article_id < b.article_id; });
        index.build();
        return index;
    }

    std::size_t size() const { return articles_.size(); }
    const std::vector<Article>& articles() const { return articles_; }

    const Article* find(std::string_view article_id) const {
        for (const Article& a : articles_)
            if (a.article_id == article_id) return &a;
        return nullptr;
    }

    /// Matched occurrences of one query term in an article's title+body under
    /// the shipped matching rule; 0 means no match. Exposed so the AND and
    /// ranking properties are testable directly.
    int term_frequency(std::size_t article_index, std::string_view term) const {
        int tf = -1;
        for (const auto& seg : text::segment(text::normalize(term))) {
            int unit;
            if (!seg.cjk) {
                unit = posting_tf(seg.chars, article_index);
            } else {
                auto cps = text::cjk_codepoints(seg.chars);
                if (cps.size() == 1) {
                    unit = posting_tf(cps[0], article_index);
                } else if (cps.size() == 2) {
                    unit = posting_tf(seg.chars, article_index);
                } else {
                    // Bigram postings prefilter, then exact substring count.
                    unit = 1;
                    for (std::size_t i = 0; i + 1 < cps.size() && unit > 0; ++i)
                        if (posting_tf(cps[i] + cps[i + 1], article_index) == 0) unit = 0;
                    if (unit > 0) unit = substring_count(search_text_[article_index], seg.chars);
                }
            }
            if (tf < 0 || unit < tf) tf = unit;
            if (tf == 0) return 0;
        }
        return tf < 0 ? 0 : tf;
    }

    std::vector<const Article*> search(const SearchQuery& query, int limit) const override {
        if (limit < 1) throw Error("search: limit must be >= 1");
        struct Hit {
            long score;
            std::size_t index;
        };
        std::vector<Hit> hits;
        for (std::size_t i = 0; i < articles_.size(); ++i) {
            long score = 0;
            bool all = !query.terms.empty();
            for (const std::string& term : query.terms) {
                int tf = term_frequency(i, term);
                if (tf == 0) {
                    all = false;
                    break;
                }
                score += tf;
            }
            if (all) hits.push_back({score, i});
        }
        std::sort(hits.begin(), hits.end(), [this](const Hit& a, const Hit& b) {
            if (a.score != b.score) return a.score > b.score;
            return articles_[a.index].article_id < articles_[b.index].article_id;
        });
        std::vector<const Article*> out;
        for (const Hit& h : hits) {
            if (static_cast<int>(out.size()) == limit) break;
            out.push_back(&articles_[h.index]);
        }
        return out;
    }

private:
    std::vector<Article> articles_;                               // sorted by article_id
    std::vector<std::string> search_text_;                        // normalized title+body
    std::map<std::string, std::vector<std::pair<std::size_t, int>>> postings_;  // term -> (idx, tf)

    void build() {
        search_text_.clear();
        postings_.clear();
        for (std::size_t i = 0; i < articles_.size(); ++i) {
            const Article& a = articles_[i];
            const std::string searchable = a.title + "\n" + a.body;
            search_text_.push_back(text::normalize(searchable));
            std::map<std::string, int> tf;
            for (const std::string& term : text::index_terms(searchable)) tf[term]++;
            for (const auto& [term, count] : tf) postings_[term].push_back({i, count});
        }
    }

    int posting_tf(const std::string& term, std::size_t article_index) const {
        auto it = postings_.find(term);
        if (it == postings_.end()) return 0;
        for (const auto& [idx, tf] : it->second)
            if (idx == article_index) return tf;
        return 0;
    }

    static int substring_count(const std::string& haystack, const std::string& needle) {
        if (needle.empty()) return 0;
        int count = 0;
        std::size_t pos = 0;
        while ((pos = haystack.find(needle, pos)) != std::string::npos) {
            count++;
            pos += needle.size();
        }
        return count;
    }
};

}  // namespace snsim
