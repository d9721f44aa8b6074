#pragma once
// Parsers for backend completions: query lists, persona blocks, post bodies.
// These accept sloppy output (echoed scaffolding, stray bullets, truncated
// closing tags) and reduce it to the structured pieces the engine needs.

#include <string>
#include <string_view>
#include <vector>

#include "snsim/errors.hpp"
#include "snsim/query.hpp"
#include "snsim/text.hpp"

namespace snsim {

constexpr int kMaxQueriesPerEvent = 10;

/// Splits a completion into at most 10 search queries: one per line, leading
/// "-" bullets stripped, empty lines dropped. Returns an empty list when
/// nothing parses; the caller decides the fallback.
inline std::vector<SearchQuery> parse_queries(std::string_view raw) {
    std::vector<SearchQuery> queries;
    std::size_t pos = 0;
    while (pos <= raw.size() && static_cast<int>(queries.size()) < kMaxQueriesPerEvent) {
        std::size_t eol = raw.find('\n', pos);
        if (eol == std::string_view::npos) eol = raw.size();
        std::string line = text::trim(raw.substr(pos, eol - pos));
        pos = eol + 1;
        while (!line.empty() && line.front() == '-') line = text::trim(line.substr(1));
        if (line.empty()) {
            if (pos > raw.size()) break;
            continue;
        }
        if (auto q = make_query(line)) queries.push_back(std::move(*q));
        if (pos > raw.size()) break;
    }
    return queries;
}

struct ParsedPersona {
    std::string name;
    std::string description;
};

namespace detail {

inline std::string first_line(std::string_view s) {
    std::size_t eol = s.find('\n');
    return std::string(eol == std::string_view::npos ? s : s.substr(0, eol));
}

}  // namespace detail

/// Extracts (name, description) from a persona completion shaped like the
/// persona prompt's continuation: the name runs up to its closing </pre> (or
/// the first line), the description sits inside the user-description block.
/// Name and description are trimmed and truncated to 20 / 30 characters.
inline ParsedPersona parse_persona(std::string_view raw) {
    std::string_view rest = raw;
    while (!rest.empty() && (rest.front() == '\n' || rest.front() == '\r')) rest.remove_prefix(1);

    std::size_t name_end = rest.find("</pre>");
    std::string name = name_end == std::string_view::npos ? detail::first_line(rest)
                                                          : std::string(rest.substr(0, name_end));
    name = text::trim(name);
    if (name.empty()) throw ParseError("persona response has no name");

    std::size_t desc_tag = rest.find("user-description");
    if (desc_tag == std::string_view::npos)
        throw ParseError("persona response has no user-description block");
    std::size_t desc_start = rest.find('>', desc_tag);
    if (desc_start == std::string_view::npos)
        throw ParseError("persona response has a malformed user-description block");
    desc_start++;
    std::size_t desc_end = rest.find("</pre>", desc_start);
    std::string description =
        text::trim(desc_end == std::string_view::npos ? rest.substr(desc_start)
                                                      : rest.substr(desc_start, desc_end - desc_start));
    if (description.empty()) throw ParseError("persona response has an empty description");

    ParsedPersona p;
    p.name = text::truncate_codepoints(name, 20);
    p.description = text::truncate_codepoints(description, 30);
    return p;
}

/// Strips an echoed "[name]:" / "[name][ReplyTo: x]: [" scaffold plus a
/// trailing unmatched bracket, then trims. Throws on an empty body.
inline std::string parse_post_body(std::string_view raw) {
    std::string s = text::trim(raw);

    if (!s.empty() && s.front() == '[') {
        // Consume leading [..] groups followed by ':'; leave the text alone
        // if the shape does not match a scaffold.
        std::size_t pos = 0;
        bool saw_group = false;
        while (pos < s.size() && s[pos] == '[') {
            std::size_t close = s.find(']', pos);
            if (close == std::string::npos) break;
            pos = close + 1;
            saw_group = true;
            while (pos < s.size() && s[pos] == ' ') pos++;
            if (pos < s.size() && s[pos] == '[') continue;
            break;
        }
        if (saw_group && pos < s.size() && s[pos] == ':') {
            pos++;
            while (pos < s.size() && s[pos] == ' ') pos++;
            if (pos < s.size() && s[pos] == '[') pos++;  // reply scaffold opens a bracket
            s = s.substr(pos);
        }
    }

    // Drop a trailing ']' that closes nothing inside the body.
    if (!s.empty() && s.back() == ']') {
        long depth = 0;
        for (char c : s) {
            if (c == '[') depth++;
            if (c == ']') depth--;
        }
        if (depth < 0) s.pop_back();
    }

    s = text::trim(s);
    if (s.empty()) throw ParseError("empty post body");
    return s;
}

}  // namespace snsim
