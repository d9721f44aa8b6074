#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace snsim {

/// An AND search: keywords connected by one-byte spaces.
struct SearchQuery {
    std::vector<std::string> terms;
    std::string raw;
};

/// Builds a query from one line of text; nullopt when no terms remain.
inline std::optional<SearchQuery> make_query(std::string_view line) {
    SearchQuery q;
    std::string term;
    for (char c : line) {
        if (c == ' ') {
            if (!term.empty()) q.terms.push_back(std::move(term));
            term.clear();
        } else {
            term += c;
        }
    }
    if (!term.empty()) q.terms.push_back(std::move(term));
    if (q.terms.empty()) return std::nullopt;
    std::ostringstream raw;
    for (std::size_t i = 0; i < q.terms.size(); ++i) {
        if (i) raw << ' ';
        raw << q.terms[i];
    }
    q.raw = raw.str();
    return q;
}

}  // namespace snsim
