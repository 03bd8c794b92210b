#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <httplib.h>

#include "citeforest/json_io.hpp"
#include "citeforest/pipeline.hpp"
#include "citeforest/service.hpp"
#include "citeforest/store.hpp"
#include "citeforest/visual.hpp"

namespace citeforest::cli {

namespace {

// Raised for user-facing failures; carries the exit code.
struct Failure {
    int code;
    std::string message;
};

struct Pipeline {
    std::string corpus;
    std::string log;
    std::optional<LoadedState> state;
    std::optional<SimplifiedForest> forest;
    std::optional<LevelAssignment> levels;

    const LoadedState& loaded() {
        if (state) return *state;
        if (corpus.empty()) throw Failure{2, "missing corpus: pass --corpus <csv> or run ingest first"};
        try {
            state = load_state(corpus, log);
        } catch (const Error& ex) {
            throw Failure{1, ex.what()};
        }
        return *state;
    }

    const SimplifiedForest& current_forest() {
        if (!forest) {
            const auto& s = loaded();
            forest = simplify_with(SimplifyConfig{}, s.records, s.graph, s.cases);
        }
        return *forest;
    }

    const LevelAssignment& current_levels() {
        if (!levels) levels = assign_levels(LevelConfig{}, loaded().records);
        return *levels;
    }
};

struct SimplifyOpts {
    std::string selector = "curated";
    std::optional<std::uint64_t> seed;
    std::string fallback = "tfidf";
};

struct LevelOpts {
    std::string mode = "fixed";
    int width = 5;
    int count = 0;
};

struct ExportOpts {
    std::string view = "simplified";
    std::string format = "json";
    std::string out;
    std::string degrees = "view";
};

struct ServeOpts {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string base_path;
    std::string cors_origin = "*";
};

struct CurationOpts {
    std::string doi;
    std::vector<std::string> suggest;  // ref:rank:category
    std::string json;                   // file or "-" for stdin
    std::string reviewer;
    NodeId chosen = 0;
};

void write_output(const std::string& doc, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << doc;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Failure{1, "cannot write " + path};
    f << doc;
}

ReferenceSuggestion parse_suggest(const std::string& spec) {
    std::istringstream ss(spec);
    std::string ref, rank, cat = "PBas";
    std::getline(ss, ref, ':');
    std::getline(ss, rank, ':');
    std::getline(ss, cat, ':');
    ReferenceSuggestion s;
    try {
        s.ref_id = std::stoll(ref);
        s.rank = rank.empty() ? 1 : std::stoi(rank);
    } catch (const std::exception&) {
        throw Failure{2, "bad --suggest '" + spec + "', expected ref:rank[:category]"};
    }
    auto c = parse_category(cat);
    if (!c) throw Failure{2, "unknown citation category '" + cat + "'"};
    s.category = *c;
    return s;
}

int report_response(const Response& r, std::ostream& out, std::ostream& err) {
    (r.status >= 400 ? err : out) << r.body;
    return r.status >= 400 ? 1 : 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"citeforest: main-citation forests for citation networks", "citeforest"};
    app.require_subcommand(1, 0);

    Pipeline pipe;
    app.add_option("--corpus", pipe.corpus, "Corpus CSV");
    app.add_option("--log", pipe.log, "Curation event log");

    std::string ingest_file, validate_file;
    auto* ingest = app.add_subcommand("ingest", "Load a corpus and build its citation graph");
    ingest->add_option("csv", ingest_file, "Corpus CSV")->required();
    auto* validate = app.add_subcommand("validate", "Check a corpus and report diagnostics");
    validate->add_option("csv", validate_file, "Corpus CSV")->required();

    SimplifyOpts so;
    auto* simplify = app.add_subcommand("simplify", "Choose one main reference per citing paper");
    simplify->add_option("--selector", so.selector)->check(CLI::IsMember({"curated", "random", "tfidf"}));
    simplify->add_option("--seed", so.seed, "Seed for the random selector");
    simplify->add_option("--fallback", so.fallback, "Selector for uncurated papers")
        ->check(CLI::IsMember({"random", "tfidf"}));

    LevelOpts lo;
    auto* levels = app.add_subcommand("levels", "Assign chronological levels");
    levels->add_option("--mode", lo.mode)->check(CLI::IsMember({"fixed", "balanced"}));
    levels->add_option("--width", lo.width, "Years per level (fixed mode)")->check(CLI::PositiveNumber);
    levels->add_option("--count", lo.count, "Number of levels (balanced mode)")->check(CLI::PositiveNumber);

    ExportOpts eo;
    auto* exp = app.add_subcommand("export", "Write a view document");
    exp->add_option("--view", eo.view)->check(CLI::IsMember({"full", "simplified"}));
    exp->add_option("--format", eo.format)->check(CLI::IsMember({"json", "dot"}));
    exp->add_option("--out", eo.out, "Output file (stdout when omitted)");
    exp->add_option("--degrees", eo.degrees, "In-degree source for node size")->check(CLI::IsMember({"view", "full"}));

    auto* stats = app.add_subcommand("stats", "Print node/edge/level counts");

    ServeOpts sv;
    auto* serve = app.add_subcommand("serve", "Run the HTTP service");
    serve->add_option("--port", sv.port)->check(CLI::Range(0, 65535));
    serve->add_option("--host", sv.host);
    serve->add_option("--base-path", sv.base_path);
    serve->add_option("--cors-origin", sv.cors_origin);

    CurationOpts co;
    auto* submit = app.add_subcommand("submit", "Submit 1-3 ranked main-reference suggestions");
    submit->add_option("--doi", co.doi, "Existing paper to curate");
    submit->add_option("--suggest", co.suggest, "ref:rank[:category], repeatable");
    submit->add_option("--json", co.json, "Request body file ('-' for stdin)");
    auto* review = app.add_subcommand("review", "Record a reviewer's choice");
    review->add_option("--doi", co.doi)->required();
    review->add_option("--reviewer", co.reviewer)->required();
    review->add_option("--chosen", co.chosen)->required();
    auto* resolve = app.add_subcommand("resolve", "Resolve a curation case");
    resolve->add_option("--doi", co.doi)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    auto service = [&] {
        const auto& s = pipe.loaded();
        if (pipe.log.empty()) throw Failure{2, "curation commands need --log"};
        ServiceConfig cfg;
        cfg.corpus_file = pipe.corpus;
        cfg.log_file = pipe.log;
        return std::make_unique<Service>(cfg, s);
    };

    try {
        int status = 0;
        for (auto* cmd : app.get_subcommands()) {
            if (cmd == ingest) {
                pipe.corpus = ingest_file;
                pipe.state.reset();
                pipe.forest.reset();
                pipe.levels.reset();
                const auto& s = pipe.loaded();
                err << "ingested " << s.records.size() << " records, " << s.graph.edge_count() << " citations, "
                    << s.cases.size() << " curation cases\n";
                for (const auto& w : s.warnings) err << "warning: " << w << "\n";
            } else if (cmd == validate) {
                std::vector<PaperRecord> records;
                try {
                    records = parse_csv(read_file(validate_file));
                } catch (const ParseError& ex) {
                    throw Failure{1, validate_file + ":" + std::to_string(ex.line()) + ": " + ex.detail()};
                } catch (const Error& ex) {
                    throw Failure{1, ex.what()};
                }
                const auto report = validate_corpus(records);
                for (const auto& d : report.errors) {
                    out << "error: record " << d.record_id << " " << d.code << ": " << d.message << "\n";
                }
                for (const auto& d : report.warnings) {
                    out << "warning: record " << d.record_id << " " << d.code << ": " << d.message << "\n";
                }
                out << report.errors.size() << " errors, " << report.warnings.size() << " warnings\n";
                if (!report.loadable()) status = 1;
            } else if (cmd == simplify) {
                SimplifyConfig cfg;
                cfg.selector = *parse_selector_kind(so.selector);
                cfg.fallback = *parse_selector_kind(so.fallback);
                cfg.seed = so.seed;
                const bool random_used = cfg.selector == SelectorKind::random ||
                                         (cfg.selector == SelectorKind::curated && cfg.fallback == SelectorKind::random);
                if (random_used && !cfg.seed) throw Failure{2, "the random selector requires --seed"};
                const auto& s = pipe.loaded();
                try {
                    pipe.forest = simplify_with(cfg, s.records, s.graph, s.cases);
                } catch (const Error& ex) {
                    throw Failure{1, ex.what()};
                }
                err << "simplified " << pipe.forest->nodes().size() << " nodes to " << pipe.forest->edge_count()
                    << " main-reference edges\n";
            } else if (cmd == levels) {
                LevelConfig cfg{*parse_level_mode(lo.mode), lo.width, lo.count};
                try {
                    pipe.levels = assign_levels(cfg, pipe.loaded().records);
                } catch (const LayeringError& ex) {
                    throw Failure{1, ex.what()};
                }
                std::map<int, std::size_t> per_level;
                for (const auto& [id, lvl] : pipe.levels->level_of) ++per_level[lvl];
                for (std::size_t k = 0; k < pipe.levels->bounds.size(); ++k) {
                    const auto& b = pipe.levels->bounds[k];
                    err << "level " << k << ": " << b.lo << "-" << b.hi << " (" << per_level[static_cast<int>(k)]
                        << " papers)\n";
                }
            } else if (cmd == exp) {
                const auto& s = pipe.loaded();
                const auto& lv = pipe.current_levels();
                const auto view = eo.view == "full"
                                      ? make_full_view(s.records, s.graph, lv)
                                      : make_simplified_view(s.records, s.graph, pipe.current_forest(), lv,
                                                             eo.degrees == "full" ? DegreeSource::full
                                                                                  : DegreeSource::view);
                write_output(eo.format == "json" ? export_view_json(view, lv) : export_view_dot(view, lv), eo.out,
                             out);
            } else if (cmd == stats) {
                const auto st = compute_stats(pipe.loaded().graph, pipe.current_forest(), pipe.current_levels());
                out << "node_count: " << st.node_count << "\n"
                    << "full_edge_count: " << st.full_edge_count << "\n"
                    << "simplified_edge_count: " << st.simplified_edge_count << "\n"
                    << "level_count: " << st.level_count << "\n"
                    << "root_count: " << st.root_count << "\n";
            } else if (cmd == serve) {
                ServiceConfig cfg;
                cfg.corpus_file = pipe.corpus;
                cfg.log_file = pipe.log;
                cfg.base_path = sv.base_path;
                cfg.cors_origin = sv.cors_origin;
                Service svc(cfg, pipe.loaded());
                httplib::Server server;
                svc.mount(server);
                err << "listening on " << sv.host << ":" << sv.port << sv.base_path << "\n";
                if (!server.listen(sv.host, sv.port)) throw Failure{1, "cannot listen on port " + std::to_string(sv.port)};
            } else if (cmd == submit) {
                std::string body;
                if (!co.json.empty()) {
                    if (co.json == "-") {
                        body.assign(std::istreambuf_iterator<char>(in), {});
                    } else {
                        body = read_file(co.json);
                    }
                } else {
                    if (co.doi.empty() || co.suggest.empty()) {
                        throw Failure{2, "submit needs --json, or --doi with at least one --suggest"};
                    }
                    json_io::Json j{{"paper", json_io::Json{{"doi", co.doi}}}, {"suggestions", json_io::Json::array()}};
                    for (const auto& spec : co.suggest) j["suggestions"].push_back(json_io::suggestion_json(parse_suggest(spec)));
                    body = j.dump();
                }
                status = std::max(status, report_response(service()->submit(body), out, err));
                pipe.state.reset();
                pipe.forest.reset();
            } else if (cmd == review) {
                const json_io::Json j{{"reviewer", co.reviewer}, {"chosen", co.chosen}};
                status = std::max(status, report_response(service()->review(co.doi, j.dump()), out, err));
                pipe.state.reset();
                pipe.forest.reset();
            } else if (cmd == resolve) {
                status = std::max(status, report_response(service()->resolve(co.doi), out, err));
                pipe.state.reset();
                pipe.forest.reset();
            }
            if (status != 0) return status;
        }
        return status;
    } catch (const Failure& f) {
        err << "error: " << f.message << "\n";
        return f.code;
    } catch (const Error& ex) {
        err << "error: " << ex.what() << "\n";
        return 1;
    }
}

}  // namespace citeforest::cli
