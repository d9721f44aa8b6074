#pragma once
// Prompt templates with {placeholder} substitution. Templates are data files
// loaded verbatim; rendering is pure substitution with no escaping, trimming
// or reflow, so rendered prompts are byte-stable.

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "snsim/errors.hpp"

namespace snsim {

enum class PromptId { persona_gen, query_gen_post, query_gen_reply, post_gen, reply_gen };

inline const char* to_string(PromptId id) {
    switch (id) {
        case PromptId::persona_gen: return "persona_gen";
        case PromptId::query_gen_post: return "query_gen_post";
        case PromptId::query_gen_reply: return "query_gen_reply";
        case PromptId::post_gen: return "post_gen";
        case PromptId::reply_gen: return "reply_gen";
    }
    return "persona_gen";
}

struct PromptTemplate {
    PromptId id;
    std::string body;
};

using Bindings = std::map<std::string, std::string>;

/// Substitutes every {name} span with bindings.at(name). A '{' without a '}'
/// on the same line is literal text. An unbound placeholder is an error that
/// names the placeholder.
inline std::string render_text(std::string_view body, const Bindings& bindings) {
    std::string out;
    out.reserve(body.size());
    for (std::size_t i = 0; i < body.size();) {
        const char c = body[i];
        if (c != '{') {
            out += c;
            i++;
            continue;
        }
        std::size_t close = i + 1;
        while (close < body.size() && body[close] != '}' && body[close] != '\n' &&
               body[close] != '{')
            close++;
        if (close >= body.size() || body[close] != '}') {
            out += c;  // literal brace
            i++;
            continue;
        }
        const std::string name(body.substr(i + 1, close - i - 1));
        auto it = bindings.find(name);
        if (it == bindings.end()) throw PromptError("unbound placeholder {" + name + "}");
        out += it->second;
        i = close + 1;
    }
    return out;
}

inline std::string render(const PromptTemplate& tpl, const Bindings& bindings) {
    return render_text(tpl.body, bindings);
}

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace detail

/// The five generation templates plus the few-shot example block the persona
/// template repeats per sampled persona.
struct TemplateSet {
    PromptTemplate persona_gen;
    PromptTemplate query_gen_post;
    PromptTemplate query_gen_reply;
    PromptTemplate post_gen;
    PromptTemplate reply_gen;
    std::string persona_example;  // block bound with {sample user name}/{sample user persona}

    const PromptTemplate& get(PromptId id) const {
        switch (id) {
            case PromptId::persona_gen: return persona_gen;
            case PromptId::query_gen_post: return query_gen_post;
            case PromptId::query_gen_reply: return query_gen_reply;
            case PromptId::post_gen: return post_gen;
            case PromptId::reply_gen: return reply_gen;
        }
        return persona_gen;
    }

    static TemplateSet load(const std::filesystem::path& dir) {
        TemplateSet set;
        set.persona_gen = {PromptId::persona_gen, detail::read_file(dir / "persona_gen.txt")};
        set.query_gen_post = {PromptId::query_gen_post, detail::read_file(dir / "query_gen_post.txt")};
        set.query_gen_reply = {PromptId::query_gen_reply, detail::read_file(dir / "query_gen_reply.txt")};
        set.post_gen = {PromptId::post_gen, detail::read_file(dir / "post_gen.txt")};
        set.reply_gen = {PromptId::reply_gen, detail::read_file(dir / "reply_gen.txt")};
        set.persona_example = detail::read_file(dir / "persona_example.txt");
        return set;
    }
};

}  // namespace snsim
