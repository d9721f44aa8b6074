// snsim command line: run simulations, ingest corpora, summarize single
// articles, emit evaluation sheets and aggregate rating files.
//
// Exit codes: 0 success, 1 validation/usage error, 2 runtime abort.

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "snsim/corpus.hpp"
#include "snsim/engine.hpp"
#include "snsim/eval.hpp"
#include "snsim/export.hpp"
#include "snsim/http_backend.hpp"
#include "snsim/http_source.hpp"
#include "snsim/scenario.hpp"
#include "snsim/summarize.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

std::unique_ptr<snsim::Backend> make_backend(const snsim::SimulationConfig& config,
                                             const std::string& mock_script,
                                             const std::string& http_url) {
    if (config.backend_id == "mock") {
        if (!mock_script.empty())
            return std::make_unique<snsim::MockBackend>(snsim::MockScript::load(mock_script));
        return std::make_unique<snsim::MockBackend>();
    }
    snsim::HttpBackendConfig http;
    http.url = http_url;
    if (http.url.empty())
        if (const char* env = std::getenv("SNSIM_BACKEND_URL")) http.url = env;
    if (http.url.empty())
        throw snsim::ConfigError("http backend: no endpoint (--http-url or SNSIM_BACKEND_URL)");
    return std::make_unique<snsim::HttpBackend>(http);
}

int cmd_simulate(const std::string& scenario_path, const std::string& mode,
                 const std::string& seed, const std::string& backend_id,
                 const std::string& corpus, const std::string& templates,
                 const std::string& out_dir, const std::string& mock_script,
                 const std::string& http_url) {
    snsim::SimulationConfig config = snsim::load_scenario(scenario_path);
    if (!mode.empty()) config.rag_mode = snsim::parse_rag_mode(mode);
    if (!seed.empty()) config.rng_seed = std::stoull(seed);
    if (!backend_id.empty()) config.backend_id = backend_id;
    if (!corpus.empty()) config.corpus_path = fs::absolute(corpus).lexically_normal().string();
    if (!templates.empty())
        config.template_dir = fs::absolute(templates).lexically_normal().string();
    snsim::validate_config(config);

    if (config.template_dir.empty())
        throw snsim::ConfigError("templates: no template directory configured");
    const snsim::TemplateSet template_set = snsim::TemplateSet::load(config.template_dir);
    const auto backend = make_backend(config, mock_script, http_url);

    std::unique_ptr<snsim::ArticleSource> source;
    if (config.rag_mode != snsim::RagMode::none) {
        if (config.community.source_id == "local") {
            if (config.corpus_path.empty())
                throw snsim::ConfigError("corpus: required for rag_mode " +
                                         std::string(to_string(config.rag_mode)));
            source = std::make_unique<snsim::CorpusIndex>(
                snsim::CorpusIndex::ingest(config.corpus_path));
        } else if (config.community.source_id == "http") {
            source = std::make_unique<snsim::HttpArticleSource>(config.corpus_path);
        } else {
            throw snsim::ConfigError("source_id: unknown article source '" +
                                     config.community.source_id + "'");
        }
    }

    const snsim::SimulationResult result = snsim::run(config, template_set, *backend, source.get());
    snsim::write_run_files(result, out_dir);

    std::size_t replies = 0;
    for (const auto& t : result.threads) replies += t.posts.size() - 1;
    std::cout << result.threads.size() << " threads, " << replies << " replies -> " << out_dir
              << std::endl;
    if (result.aborted) {
        std::cerr << "run aborted: " << *result.aborted << std::endl;
        return kExitRuntime;
    }
    return kExitOk;
}

int cmd_corpus_ingest(const std::string& in_dir) {
    const snsim::CorpusIndex index = snsim::CorpusIndex::ingest(in_dir);
    std::cout << index.size() << " articles indexed" << std::endl;
    if (index.size() == 0) std::cerr << "warning: corpus is empty" << std::endl;
    return kExitOk;
}

int cmd_summarize(const std::string& article_path, int depth, const snsim::LexRankConfig& lex) {
    const snsim::Article article = snsim::parse_article_file(article_path);
    std::vector<std::string> diagnostics;
    std::cout << snsim::summarize(article, depth, lex, &diagnostics) << std::endl;
    for (const auto& d : diagnostics) std::cerr << "note: " << d << std::endl;
    return kExitOk;
}

int cmd_eval_sheets(const std::string& run_path, const std::string& kind,
                    const std::string& out_dir, const snsim::EvalConfig& eval) {
    const snsim::SimulationResult result = snsim::load_run(run_path);
    const auto sheets = kind == "thread" ? snsim::make_thread_sheets(result, eval)
                                         : snsim::make_post_sheets(result, eval);
    fs::create_directories(out_dir);
    for (std::size_t i = 0; i < sheets.size(); ++i) {
        std::ostringstream name;
        name << kind << "_sheet_" << std::setw(3) << std::setfill('0') << (i + 1) << ".txt";
        std::ofstream out(fs::path(out_dir) / name.str(), std::ios::binary);
        out << sheets[i].body;
    }
    std::cout << sheets.size() << " sheets written to " << out_dir << std::endl;
    return kExitOk;
}

int cmd_aggregate(const std::vector<std::string>& rating_files, const std::string& out_dir) {
    std::vector<snsim::RatingSet> sets;
    for (const auto& path : rating_files) sets.push_back(snsim::load_ratings(path));
    const auto rows = snsim::aggregate(sets);
    fs::create_directories(out_dir);
    const fs::path out(out_dir);
    auto write = [](const fs::path& p, const std::string& content) {
        std::ofstream f(p, std::ios::binary);
        f << content;
    };
    write(out / "counts.tsv", snsim::format_counts_tsv(rows));
    write(out / "percentages.tsv", snsim::format_percentages_tsv(rows));
    write(out / "counts.txt", snsim::format_tables_text(rows, false));
    write(out / "percentages.txt", snsim::format_tables_text(rows, true));
    std::cout << rows.size() << " table rows written to " << out_dir << std::endl;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SNS community simulator"};
    app.require_subcommand(1);

    // simulate
    std::string scenario, mode, seed, backend_id, corpus, templates, out_dir, mock_script,
        http_url;
    auto* simulate = app.add_subcommand("simulate", "run a scenario end to end");
    simulate->add_option("--scenario", scenario, "scenario config file")
        ->required()
        ->check(CLI::ExistingFile);
    simulate->add_option("--mode", mode, "rag mode: none|simple|advanced (overrides scenario)")
        ->check(CLI::IsMember({"none", "simple", "advanced"}));
    simulate->add_option("--seed", seed, "rng seed (overrides scenario)");
    simulate->add_option("--backend", backend_id, "backend: mock|http (overrides scenario)")
        ->check(CLI::IsMember({"mock", "http"}));
    simulate->add_option("--corpus", corpus, "corpus directory (overrides scenario)");
    simulate->add_option("--templates", templates, "template directory (overrides scenario)");
    simulate->add_option("--mock-script", mock_script, "scripted mock responses (JSON)");
    simulate->add_option("--http-url", http_url, "completion endpoint for the http backend");
    simulate->add_option("--out", out_dir, "output directory")->required();

    // corpus-ingest
    std::string ingest_dir;
    bool check_only = false;
    auto* ingest = app.add_subcommand("corpus-ingest", "validate and index a corpus directory");
    ingest->add_option("--in", ingest_dir, "corpus directory")->required();
    ingest->add_flag("--check", check_only, "validate only (the default behavior)");

    // summarize
    std::string article_path;
    int depth = 0;
    snsim::LexRankConfig lex;
    auto* summarize = app.add_subcommand("summarize", "summarize one article file");
    summarize->add_option("--article", article_path, "article JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    summarize->add_option("--depth", depth, "reading depth 0..6")
        ->required()
        ->check(CLI::Range(0, 6));
    summarize->add_option("--threshold", lex.similarity_threshold, "similarity threshold");
    summarize->add_option("--damping", lex.damping, "damping factor");
    summarize->add_option("--epsilon", lex.convergence_epsilon, "convergence epsilon");
    summarize->add_option("--max-iterations", lex.max_iterations, "power iteration cap");

    // eval-sheets
    std::string run_path, kind, sheets_out;
    snsim::EvalConfig eval;
    auto* sheets = app.add_subcommand("eval-sheets", "emit blinded evaluation sheets");
    sheets->add_option("--run", run_path, "run.json produced by simulate")
        ->required()
        ->check(CLI::ExistingFile);
    sheets->add_option("--kind", kind, "post|thread")
        ->required()
        ->check(CLI::IsMember({"post", "thread"}));
    sheets->add_option("--out", sheets_out, "output directory")->required();
    sheets->add_option("--post-subjects", eval.post_subjects, "raters per post sheet");
    sheets->add_option("--thread-subjects", eval.thread_subjects, "raters per thread sheet");

    // aggregate
    std::vector<std::string> rating_files;
    std::string agg_out;
    auto* agg = app.add_subcommand("aggregate", "aggregate rating files into tables");
    agg->add_option("--ratings", rating_files, "rating file (repeatable)")
        ->required()
        ->check(CLI::ExistingFile);
    agg->add_option("--out", agg_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (simulate->parsed())
            return cmd_simulate(scenario, mode, seed, backend_id, corpus, templates, out_dir,
                                mock_script, http_url);
        if (ingest->parsed()) return cmd_corpus_ingest(ingest_dir);
        if (summarize->parsed()) return cmd_summarize(article_path, depth, lex);
        if (sheets->parsed()) return cmd_eval_sheets(run_path, kind, sheets_out, eval);
        if (agg->parsed()) return cmd_aggregate(rating_files, agg_out);
    } catch (const snsim::ConfigError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitValidation;
    } catch (const snsim::CorpusError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitValidation;
    } catch (const snsim::ParseError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitValidation;
    } catch (const snsim::Error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitRuntime;
    }
    return kExitValidation;
}
