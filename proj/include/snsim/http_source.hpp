#pragma once
// Article source backed by an HTTP search endpoint with the same contract as
// the local corpus index: GET <base>/search?q=<query>&limit=N returning a
// JSON array of article objects.

#include <deque>
#include <string>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "snsim/corpus.hpp"
#include "snsim/errors.hpp"

namespace snsim {

class HttpArticleSource final : public ArticleSource {
public:
    explicit HttpArticleSource(std::string base_url) : base_(std::move(base_url)) {}

    std::vector<const Article*> search(const SearchQuery& query, int limit) const override {
        if (limit < 1) throw Error("search: limit must be >= 1");
        httplib::Client client(base_);
        httplib::Params params{{"q", query.raw}, {"limit", std::to_string(limit)}};
        auto result = client.Get("/search", params, httplib::Headers{});
        if (!result)
            throw CorpusError("article source unreachable: " + httplib::to_string(result.error()));
        if (result->status != 200)
            throw CorpusError("article source returned status " + std::to_string(result->status));
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(result->body);
        } catch (const nlohmann::json::exception& e) {
            throw CorpusError(std::string("article source returned invalid JSON: ") + e.what());
        }
        if (!doc.is_array()) throw CorpusError("article source response is not an array");
        std::vector<const Article*> out;
        for (const auto& item : doc) {
            cache_.push_back(parse_article_json(item, base_ + "/search"));
            out.push_back(&cache_.back());
            if (static_cast<int>(out.size()) == limit) break;
        }
        return out;
    }

private:
    std::string base_;
    mutable std::deque<Article> cache_;  // deque keeps returned pointers stable
};

}  // namespace snsim
