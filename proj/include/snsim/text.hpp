#pragma once
// UTF-8 text primitives shared by indexing, summarization and prompt handling:
// codepoint iteration, width folding, whitespace/CJK-aware segmentation and
// sentence splitting. All functions are pure and allocation is kept local.

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace snsim::text {

struct DecodedChar {
    char32_t cp;
    int len;  // bytes consumed
};

inline DecodedChar decode_utf8(std::string_view s, std::size_t pos) {
    const auto b = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
    const unsigned char c = b(pos);
    if (c < 0x80) return {c, 1};
    if ((c >> 5) == 0x6 && pos + 1 < s.size())
        return {static_cast<char32_t>(((c & 0x1Fu) << 6) | (b(pos + 1) & 0x3Fu)), 2};
    if ((c >> 4) == 0xE && pos + 2 < s.size())
        return {static_cast<char32_t>(((c & 0x0Fu) << 12) | ((b(pos + 1) & 0x3Fu) << 6) |
                                      (b(pos + 2) & 0x3Fu)),
                3};
    if ((c >> 3) == 0x1E && pos + 3 < s.size())
        return {static_cast<char32_t>(((c & 0x07u) << 18) | ((b(pos + 1) & 0x3Fu) << 12) |
                                      ((b(pos + 2) & 0x3Fu) << 6) | (b(pos + 3) & 0x3Fu)),
                4};
    return {0xFFFD, 1};  // stray byte: consume one and move on
}

inline void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

inline std::size_t codepoint_count(std::string_view s) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < s.size(); n++) i += static_cast<std::size_t>(decode_utf8(s, i).len);
    return n;
}

/// Keeps at most `max_cp` codepoints, never splitting a UTF-8 sequence.
inline std::string truncate_codepoints(std::string_view s, std::size_t max_cp) {
    std::size_t i = 0, n = 0;
    while (i < s.size() && n < max_cp) {
        i += static_cast<std::size_t>(decode_utf8(s, i).len);
        n++;
    }
    return std::string(s.substr(0, i));
}

inline bool is_cjk(char32_t cp) {
    return (cp >= 0x3040 && cp <= 0x309F) ||   // hiragana
           (cp >= 0x30A0 && cp <= 0x30FF) ||   // katakana (incl. prolonged sound mark)
           (cp >= 0x31F0 && cp <= 0x31FF) ||   // katakana phonetic extensions
           (cp >= 0x3400 && cp <= 0x4DBF) ||   // CJK ext A
           (cp >= 0x4E00 && cp <= 0x9FFF);     // CJK unified
}

inline bool is_space_cp(char32_t cp) {
    return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == 0x3000;
}

inline bool is_ascii_alnum(char32_t cp) {
    return (cp >= U'0' && cp <= U'9') || (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z');
}

/// Width folding + ASCII lowercasing. Fullwidth ASCII forms (U+FF01..FF5E)
/// fold to their ASCII counterparts and ideographic space folds to ' ';
/// everything else passes through. This is the normalization the search
/// index and query matching share.
inline std::string normalize(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        auto [cp, len] = decode_utf8(s, i);
        i += static_cast<std::size_t>(len);
        if (cp >= 0xFF01 && cp <= 0xFF5E) cp = cp - 0xFEE0;
        if (cp == 0x3000) cp = U' ';
        if (cp >= U'A' && cp <= U'Z') cp = cp - U'A' + U'a';
        append_utf8(out, cp);
    }
    return out;
}

struct Segment {
    std::string chars;  // UTF-8 text of the run
    bool cjk = false;
};

/// Splits normalized text into ASCII-alphanumeric runs and CJK runs.
/// Any other codepoint is a separator.
inline std::vector<Segment> segment(std::string_view normalized) {
    std::vector<Segment> out;
    Segment cur;
    bool in_run = false;
    bool run_cjk = false;
    auto flush = [&] {
        if (in_run && !cur.chars.empty()) out.push_back(cur);
        cur = Segment{};
        in_run = false;
    };
    for (std::size_t i = 0; i < normalized.size();) {
        auto [cp, len] = decode_utf8(normalized, i);
        i += static_cast<std::size_t>(len);
        const bool alnum = is_ascii_alnum(cp);
        const bool cjk = is_cjk(cp);
        if (!alnum && !cjk) {
            flush();
            continue;
        }
        if (in_run && run_cjk != cjk) flush();
        if (!in_run) {
            in_run = true;
            run_cjk = cjk;
            cur.cjk = cjk;
        }
        append_utf8(cur.chars, cp);
    }
    flush();
    return out;
}

inline std::vector<std::string> cjk_codepoints(std::string_view run) {
    std::vector<std::string> cps;
    for (std::size_t i = 0; i < run.size();) {
        auto [cp, len] = decode_utf8(run, i);
        std::string one;
        append_utf8(one, cp);
        cps.push_back(std::move(one));
        i += static_cast<std::size_t>(len);
    }
    return cps;
}

/// Index vocabulary of a text: ASCII tokens as-is, CJK runs as unigrams plus
/// overlapping character bigrams. This is the shipped CJK segmentation rule;
/// swap this function to change it.
inline std::vector<std::string> index_terms(std::string_view raw) {
    std::vector<std::string> terms;
    for (const Segment& seg : segment(normalize(raw))) {
        if (!seg.cjk) {
            terms.push_back(seg.chars);
            continue;
        }
        auto cps = cjk_codepoints(seg.chars);
        for (const auto& c : cps) terms.push_back(c);
        for (std::size_t i = 0; i + 1 < cps.size(); ++i) terms.push_back(cps[i] + cps[i + 1]);
    }
    return terms;
}

inline bool is_stopword(std::string_view w) {
    static const std::unordered_set<std::string_view> kStop = {
        "a",  "an",  "and", "are", "as",  "at", "be",  "by", "for", "from", "in",  "is",
        "it", "its", "of",  "on",  "or",  "s",  "the", "to", "was", "were", "with"};
    return kStop.count(w) > 0;
}

/// Content words of a text: segments minus stopwords and single ASCII letters,
/// first occurrence order, distinct. Used for query fallbacks.
inline std::vector<std::string> content_words(std::string_view raw) {
    std::vector<std::string> words;
    std::unordered_set<std::string> seen;
    for (const Segment& seg : segment(normalize(raw))) {
        if (!seg.cjk && (seg.chars.size() < 2 || is_stopword(seg.chars))) continue;
        if (seen.insert(seg.chars).second) words.push_back(seg.chars);
    }
    return words;
}

inline bool is_terminator_cp(char32_t cp) {
    return cp == 0x3002 || cp == 0xFF01 || cp == 0xFF1F;  // 。！？
}

inline bool is_ascii_terminator(char32_t cp) { return cp == U'.' || cp == U'!' || cp == U'?'; }

/// Splits on sentence-terminal punctuation: 。！？ always end a sentence;
/// .!? end one only when followed by whitespace or end of text. Terminators
/// stay attached, segments are trimmed, and segments without any
/// non-terminator content are dropped.
inline std::vector<std::string> split_sentences(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    bool has_content = false;
    auto flush = [&] {
        while (!cur.empty() && (cur.back() == ' ' || cur.back() == '\t' || cur.back() == '\n' ||
                                cur.back() == '\r'))
            cur.pop_back();
        if (!cur.empty() && has_content) out.push_back(cur);
        cur.clear();
        has_content = false;
    };
    for (std::size_t i = 0; i < s.size();) {
        auto [cp, len] = decode_utf8(s, i);
        i += static_cast<std::size_t>(len);
        if (is_space_cp(cp) && cur.empty()) continue;  // skip inter-sentence whitespace
        append_utf8(cur, cp);
        if (is_terminator_cp(cp)) {
            flush();
            continue;
        }
        if (is_ascii_terminator(cp)) {
            char32_t next = 0;
            if (i < s.size()) next = decode_utf8(s, i).cp;
            if (i >= s.size() || is_space_cp(next)) {
                flush();
                continue;
            }
        }
        if (!is_space_cp(cp) && !is_terminator_cp(cp) && !is_ascii_terminator(cp))
            has_content = true;
    }
    flush();
    return out;
}

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
    while (b < e && is_ws(s[b])) b++;
    while (e > b && is_ws(s[e - 1])) e--;
    return std::string(s.substr(b, e - b));
}

}  // namespace snsim::text
