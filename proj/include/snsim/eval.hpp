#pragma once
// Human-evaluation instruments: blinded sheets for posts/replies and for
// threads, a plain-text rating file format for manual entry, and aggregation
// into count and percentage tables.
//
// Post sheets present exactly four fields (community goal, community rule,
// the author's persona description, the text) plus five items; thread sheets
// present goal, rule and the full thread plus four items. Sheets never carry
// the rag mode: the mode shapes content generation, not sheet chrome. Sheet
// order is shuffled under the run's seed ("sheet_shuffle" stream).

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "snsim/engine.hpp"
#include "snsim/errors.hpp"
#include "snsim/model.hpp"
#include "snsim/rng.hpp"
#include "snsim/text.hpp"

namespace snsim {

struct EvalConfig {
    int post_subjects = 6;    // raters per post sheet
    int thread_subjects = 3;  // raters per thread sheet
};

using RatingScale = std::array<const char*, 4>;  // best level first (value_code 0)

inline const RatingScale& conformity_scale() {
    static const RatingScale s{"Compatible", "Somewhat compatible", "Somewhat incompatible",
                               "Incompatible"};
    return s;
}
inline const RatingScale& grammar_scale() {
    static const RatingScale s{"None at all", "Almost none", "Slightly", "Many"};
    return s;
}
inline const RatingScale& naturalness_scale() {
    static const RatingScale s{"natural", "somewhat natural", "somewhat unnatural", "unnatural"};
    return s;
}

struct EvalItem {
    const char* question;
    const RatingScale* scale;
};

inline const std::vector<EvalItem>& post_items() {
    static const std::vector<EvalItem> items{
        {"Is there any grammatical errors in the content of the post?", &grammar_scale()},
        {"Is the content of the post appropriate for the community goals?", &conformity_scale()},
        {"Is the content of the post adhere to the community rules?", &conformity_scale()},
        {"Is the content of the post as imagined by the persona used to generate the post?",
         &conformity_scale()},
        {"Is the content of the post natural as a post on an internet forum with that community "
         "goal?",
         &naturalness_scale()}};
    return items;
}

inline const std::vector<EvalItem>& thread_items() {
    static const std::vector<EvalItem> items{
        {"Is there any grammatical errors in the content of the exchange?", &grammar_scale()},
        {"Is the content of the exchange is appropriate for the community goal?",
         &conformity_scale()},
        {"Is the content of the exchange in compliance with the community rules?",
         &conformity_scale()},
        {"Is the exchange natural as an exchange on an internet forum with that community goal?",
         &naturalness_scale()}};
    return items;
}

struct Sheet {
    std::string target_kind;  // "post" | "thread"
    std::uint64_t target_id = 0;
    std::string body;
};

namespace detail {

inline void append_items(std::ostringstream& out, const std::vector<EvalItem>& items) {
    out << "Items:\n";
    for (std::size_t i = 0; i < items.size(); ++i) {
        out << ' ' << (i + 1) << ". " << items[i].question << '\n' << "    (";
        const RatingScale& scale = *items[i].scale;
        for (std::size_t level = 0; level < scale.size(); ++level) {
            if (level) out << " / ";
            out << level << " = " << scale[level];
        }
        out << ")\n";
    }
}

template <typename T>
inline void shuffle_sheets(std::vector<T>& sheets, std::uint64_t seed) {
    RngStream rng(seed, "sheet_shuffle");
    for (std::size_t i = 0; i + 1 < sheets.size(); ++i)
        std::swap(sheets[i],
                  sheets[i + static_cast<std::size_t>(rng.bounded(sheets.size() - i))]);
}

}  // namespace detail

/// One sheet per post and reply, shuffled under the run seed.
inline std::vector<Sheet> make_post_sheets(const SimulationResult& result,
                                           const EvalConfig& eval = {}) {
    std::map<std::string, std::string> persona_of;
    for (const UserPersona& p : result.personas) persona_of[p.name] = p.description;

    std::vector<Sheet> sheets;
    for (const Thread& thread : result.threads) {
        for (const Post& post : thread.posts) {
            std::ostringstream out;
            out << "== Post evaluation sheet ==\n"
                << "Target: post " << post.post_id << "\n"
                << "Evaluate only the content of the post, ignoring the context before and after "
                   "it.\n"
                << "Subjects required: " << eval.post_subjects << "\n\n"
                << "Community goal: " << result.config.community.goal << '\n'
                << "Community rule: " << result.config.community.rule << '\n'
                << "User persona: " << persona_of[post.author] << '\n'
                << "Post:\n"
                << post.body << "\n\n";
            detail::append_items(out, post_items());
            sheets.push_back({"post", post.post_id, out.str()});
        }
    }
    detail::shuffle_sheets(sheets, result.config.rng_seed);
    return sheets;
}

/// One sheet per thread that has at least one reply; reply-less threads are
/// excluded. Shuffled under the run seed.
inline std::vector<Sheet> make_thread_sheets(const SimulationResult& result,
                                             const EvalConfig& eval = {}) {
    std::vector<Sheet> sheets;
    for (const Thread& thread : result.threads) {
        if (thread.posts.size() < 2) continue;
        std::ostringstream out;
        out << "== Thread evaluation sheet ==\n"
            << "Target: thread " << thread.thread_id << "\n"
            << "Subjects required: " << eval.thread_subjects << "\n\n"
            << "Community goal: " << result.config.community.goal << '\n'
            << "Community rule: " << result.config.community.rule << '\n'
            << "Thread:\n"
            << render_thread(thread) << "\n\n";
        detail::append_items(out, thread_items());
        sheets.push_back({"thread", static_cast<std::uint64_t>(thread.thread_id), out.str()});
    }
    detail::shuffle_sheets(sheets, result.config.rng_seed);
    return sheets;
}

struct RatingRecord {
    std::string subject_id;
    std::string target_kind;  // "post" | "thread"
    std::uint64_t target_id = 0;
    int item_index = 0;  // 1..5 for posts, 1..4 for threads
    int value_code = 0;  // 0 = best level .. 3 = worst level
};

struct RatingSet {
    std::string scenario = "unknown";
    std::string condition = "unknown";
    std::vector<RatingRecord> records;
};

/// Rating file: '#'-prefixed metadata lines (`# scenario: X`,
/// `# condition: Y`), then one record per line:
///   subject_id target_kind target_id item_index value_code
inline RatingSet parse_ratings(std::istream& in, const std::string& origin) {
    RatingSet set;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        const std::string trimmed = text::trim(line);
        if (trimmed.empty()) continue;
        if (trimmed.front() == '#') {
            const auto meta = trimmed.substr(1);
            if (auto at = meta.find(':'); at != std::string::npos) {
                const std::string key = text::trim(meta.substr(0, at));
                const std::string value = text::trim(meta.substr(at + 1));
                if (key == "scenario") set.scenario = value;
                if (key == "condition") set.condition = value;
            }
            continue;
        }
        std::istringstream fields(trimmed);
        RatingRecord rec;
        long long target = -1;
        if (!(fields >> rec.subject_id >> rec.target_kind >> target >> rec.item_index >>
              rec.value_code) ||
            target < 0)
            throw ParseError(origin + ":" + std::to_string(line_no) + ": malformed rating line");
        rec.target_id = static_cast<std::uint64_t>(target);
        const int max_item = rec.target_kind == "post"     ? 5
                             : rec.target_kind == "thread" ? 4
                                                           : -1;
        if (max_item < 0)
            throw ParseError(origin + ":" + std::to_string(line_no) +
                             ": target_kind must be post|thread");
        if (rec.item_index < 1 || rec.item_index > max_item)
            throw ParseError(origin + ":" + std::to_string(line_no) + ": item_index out of range");
        if (rec.value_code < 0 || rec.value_code > 3)
            throw ParseError(origin + ":" + std::to_string(line_no) +
                             ": value_code must be in [0,3]");
        set.records.push_back(std::move(rec));
    }
    return set;
}

inline RatingSet load_ratings(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read ratings file: " + path.string());
    return parse_ratings(in, path.string());
}

struct AggregateRow {
    std::string scenario;
    std::string condition;
    std::string target_kind;
    int item_index = 0;
    std::array<std::uint64_t, 4> counts{};
    std::uint64_t total = 0;
    std::array<double, 4> percentages{};  // 100*count/total, two decimals
};

/// Per (scenario, condition, target kind, item): level counts, the Eval.
/// total, and percentages rounded to two decimals.
inline std::vector<AggregateRow> aggregate(const std::vector<RatingSet>& sets) {
    std::map<std::tuple<std::string, std::string, std::string, int>, AggregateRow> rows;
    std::size_t record_count = 0;
    for (const RatingSet& set : sets) {
        for (const RatingRecord& rec : set.records) {
            record_count++;
            auto key = std::make_tuple(set.scenario, set.condition, rec.target_kind, rec.item_index);
            AggregateRow& row = rows[key];
            row.scenario = set.scenario;
            row.condition = set.condition;
            row.target_kind = rec.target_kind;
            row.item_index = rec.item_index;
            row.counts[static_cast<std::size_t>(rec.value_code)]++;
            row.total++;
        }
    }
    if (record_count == 0) throw Error("aggregate: no rating records");
    std::vector<AggregateRow> out;
    for (auto& [key, row] : rows) {
        for (std::size_t level = 0; level < 4; ++level)
            row.percentages[level] =
                std::round(static_cast<double>(row.counts[level]) * 10000.0 /
                           static_cast<double>(row.total)) /
                100.0;
        out.push_back(row);
    }
    return out;
}

namespace detail {

inline const std::vector<EvalItem>& items_for(const std::string& target_kind) {
    return target_kind == "thread" ? thread_items() : post_items();
}

inline std::string format_pct(double pct) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << pct << '%';
    return out.str();
}

}  // namespace detail

inline std::string format_counts_tsv(const std::vector<AggregateRow>& rows) {
    std::ostringstream out;
    out << "scenario\tcondition\ttarget_kind\titem\tlevel0\tlevel1\tlevel2\tlevel3\ttotal\n";
    for (const AggregateRow& r : rows) {
        out << r.scenario << '\t' << r.condition << '\t' << r.target_kind << '\t' << r.item_index;
        for (std::uint64_t c : r.counts) out << '\t' << c;
        out << '\t' << r.total << '\n';
    }
    return out.str();
}

inline std::string format_percentages_tsv(const std::vector<AggregateRow>& rows) {
    std::ostringstream out;
    out << "scenario\tcondition\ttarget_kind\titem\tlevel0\tlevel1\tlevel2\tlevel3\ttotal\n";
    out << std::fixed << std::setprecision(2);
    for (const AggregateRow& r : rows) {
        out << r.scenario << '\t' << r.condition << '\t' << r.target_kind << '\t' << r.item_index;
        for (double p : r.percentages) out << '\t' << p;
        out << '\t' << r.total << '\n';
    }
    return out.str();
}

/// Aligned tables, one section per (target kind, item), mirroring the count
/// and percentage table layout of the evaluation write-up.
inline std::string format_tables_text(const std::vector<AggregateRow>& rows, bool percentages) {
    std::map<std::pair<std::string, int>, std::vector<const AggregateRow*>> sections;
    for (const AggregateRow& r : rows) sections[{r.target_kind, r.item_index}].push_back(&r);

    std::ostringstream out;
    for (const auto& [key, section] : sections) {
        const auto& [kind, item] = key;
        const EvalItem& spec = detail::items_for(kind)[static_cast<std::size_t>(item - 1)];
        out << "=== " << kind << " item " << item << ": " << spec.question << " ===\n";
        out << std::left << std::setw(22) << "scenario" << std::setw(16) << "condition";
        for (const char* level : *spec.scale) out << std::setw(24) << level;
        if (percentages) out << std::setw(12) << "Eval. total";
        out << '\n';
        for (const AggregateRow* r : section) {
            out << std::left << std::setw(22) << r->scenario << std::setw(16) << r->condition;
            for (std::size_t level = 0; level < 4; ++level) {
                if (percentages)
                    out << std::setw(24) << detail::format_pct(r->percentages[level]);
                else
                    out << std::setw(24) << r->counts[level];
            }
            if (percentages) out << std::setw(12) << r->total;
            out << '\n';
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace snsim
