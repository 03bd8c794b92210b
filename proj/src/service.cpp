#include "citeforest/service.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include <httplib.h>

#include "citeforest/json_io.hpp"
#include "citeforest/query.hpp"
#include "citeforest/visual.hpp"

namespace citeforest {

using json_io::Json;

namespace {

Response json_response(int status, const Json& body) { return Response{status, body.dump(2) + "\n"}; }

Response error_response(int status, std::string_view code, const std::string& message) {
    return json_response(status, Json{{"error", Json{{"code", code}, {"message", message}}}});
}

Response validation_response(const ValidationReport& report) {
    Json errors = Json::array();
    for (const auto& d : report.errors) {
        errors.push_back(Json{{"record_id", d.record_id}, {"code", d.code}, {"message", d.message}});
    }
    const auto& first = report.errors.front();
    return json_response(422, Json{{"error", Json{{"code", first.code},
                                                  {"message", "record " + std::to_string(first.record_id) + ": " +
                                                                  first.message},
                                                  {"diagnostics", std::move(errors)}}}});
}

template <typename Int>
std::optional<Int> parse_number(std::string_view s) {
    Int v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

const PaperRecord* find_record(const Snapshot& snap, std::string_view doi) {
    for (const auto& rec : snap.records) {
        if (iequals(rec.doi, doi)) return &rec;
    }
    return nullptr;
}

std::string param(const QueryParams& p, const std::string& key, std::string fallback = {}) {
    auto it = p.find(key);
    return it == p.end() ? std::move(fallback) : it->second;
}

Json case_body(const CurationCase& c, const std::vector<PaperRecord>& records) {
    Json body = json_io::case_json(c);
    auto rec = std::ranges::find(records, c.paper_id, &PaperRecord::id);
    if (rec != records.end()) body["doi"] = rec->doi;
    return body;
}

}  // namespace

Service::Service(ServiceConfig config) : Service(config, load_state(config.corpus_file, config.log_file)) {}

Service::Service(ServiceConfig config, LoadedState state) : config_(std::move(config)) {
    if (!config_.log_file.empty()) log_ = std::make_unique<EventLog>(config_.log_file);
    current_ = make_snapshot(std::move(state.records), std::move(state.graph), std::move(state.cases),
                             state.last_sequence);
}

Service::~Service() = default;

std::shared_ptr<const Snapshot> Service::make_snapshot(std::vector<PaperRecord> records, CitationGraph graph,
                                                       std::map<NodeId, CurationCase> cases,
                                                       std::uint64_t last_sequence) const {
    auto snap = std::make_shared<Snapshot>();
    snap->records = std::move(records);
    snap->graph = std::move(graph);
    snap->cases = std::move(cases);
    snap->last_sequence = last_sequence;
    snap->forest = simplify_with(config_.simplify, snap->records, snap->graph, snap->cases);
    snap->levels = assign_levels(config_.levels, snap->records);
    return snap;
}

std::shared_ptr<const Snapshot> Service::snapshot() const {
    std::lock_guard lock(snapshot_mu_);
    return current_;
}

void Service::publish(std::shared_ptr<const Snapshot> next) {
    std::lock_guard lock(snapshot_mu_);
    current_ = std::move(next);
}

Response Service::get_graph(const QueryParams& params) const {
    const auto snap = snapshot();
    Json echo = Json::object();

    const auto view = param(params, "view", "simplified");
    if (view != "full" && view != "simplified") return error_response(400, "BAD_PARAMETER", "view must be full or simplified");
    echo["view"] = view;

    LevelConfig lc = config_.levels;
    if (params.contains("levels")) {
        auto mode = parse_level_mode(param(params, "levels"));
        if (!mode) return error_response(400, "BAD_PARAMETER", "levels must be fixed or balanced");
        lc.mode = *mode;
    }
    echo["levels"] = std::string(to_string(lc.mode));
    if (params.contains("width")) {
        auto w = parse_number<int>(param(params, "width"));
        if (!w || *w < 1) return error_response(400, "BAD_PARAMETER", "width must be a positive integer");
        lc.width = *w;
    }
    if (params.contains("count")) {
        auto c = parse_number<int>(param(params, "count"));
        if (!c || *c < 1) return error_response(400, "BAD_PARAMETER", "count must be a positive integer");
        lc.count = *c;
    }
    if (lc.mode == LevelMode::fixed) {
        echo["width"] = lc.width;
    } else {
        echo["count"] = lc.count;
    }

    SimplifyConfig sc = config_.simplify;
    if (params.contains("selector")) {
        auto k = parse_selector_kind(param(params, "selector"));
        if (!k) return error_response(400, "BAD_PARAMETER", "selector must be curated, random or tfidf");
        sc.selector = *k;
    }
    if (params.contains("fallback")) {
        auto k = parse_selector_kind(param(params, "fallback"));
        if (!k || *k == SelectorKind::curated) return error_response(400, "BAD_PARAMETER", "fallback must be random or tfidf");
        sc.fallback = *k;
    }
    if (params.contains("seed")) {
        auto s = parse_number<std::uint64_t>(param(params, "seed"));
        if (!s) return error_response(400, "BAD_PARAMETER", "seed must be an unsigned 64-bit integer");
        sc.seed = *s;
    }
    const bool needs_seed =
        sc.selector == SelectorKind::random || (sc.selector == SelectorKind::curated && sc.fallback == SelectorKind::random);
    if (needs_seed && !sc.seed) return error_response(400, "BAD_PARAMETER", "the random selector requires a seed");
    echo["selector"] = std::string(to_string(sc.selector));
    if (sc.selector == SelectorKind::curated) echo["fallback"] = std::string(to_string(sc.fallback));
    if (sc.seed) echo["seed"] = *sc.seed;

    auto degrees = DegreeSource::view;
    if (params.contains("degrees")) {
        const auto d = param(params, "degrees");
        if (d != "view" && d != "full") return error_response(400, "BAD_PARAMETER", "degrees must be view or full");
        degrees = d == "full" ? DegreeSource::full : DegreeSource::view;
    }
    echo["degrees"] = degrees == DegreeSource::full ? "full" : "view";

    LevelAssignment levels;
    try {
        levels = assign_levels(lc, snap->records);
    } catch (const LayeringError& ex) {
        return error_response(400, "BAD_PARAMETER", ex.what());
    }

    GraphView gv;
    if (view == "full") {
        gv = make_full_view(snap->records, snap->graph, levels);
    } else {
        const auto forest = simplify_with(sc, snap->records, snap->graph, snap->cases);
        gv = make_simplified_view(snap->records, snap->graph, forest, levels, degrees);
    }
    auto doc = json_io::view_document(gv, levels);
    doc["params"] = std::move(echo);
    return json_response(200, doc);
}

Response Service::get_paper(std::string_view doi) const {
    const auto snap = snapshot();
    const auto* rec = find_record(*snap, doi);
    if (!rec) return error_response(404, "NOT_FOUND", "no paper with DOI " + std::string(doi));
    return json_response(200, json_io::paper_json(*rec));
}

Response Service::get_paper_by_id(std::string_view id) const {
    const auto snap = snapshot();
    const auto n = parse_number<NodeId>(id);
    if (!n) return error_response(400, "BAD_PARAMETER", "paper id must be an integer");
    auto rec = std::ranges::find(snap->records, *n, &PaperRecord::id);
    if (rec == snap->records.end()) return error_response(404, "NOT_FOUND", "no paper with id " + std::string(id));
    return json_response(200, json_io::paper_json(*rec));
}

Response Service::get_main_path(std::string_view doi) const {
    const auto snap = snapshot();
    const auto* rec = find_record(*snap, doi);
    if (!rec) return error_response(404, "NOT_FOUND", "no paper with DOI " + std::string(doi));
    Json path = Json::array();
    for (NodeId id : main_path(snap->forest, rec->id)) {
        path.push_back(json_io::paper_json(*std::ranges::find(snap->records, id, &PaperRecord::id)));
    }
    return json_response(200, Json{{"doi", rec->doi}, {"path", std::move(path)}});
}

Response Service::search(const QueryParams& params) const {
    const auto snap = snapshot();
    const auto field_text = param(params, "field");
    const auto field = parse_search_field(field_text);
    if (!field) return error_response(400, "BAD_PARAMETER", "field must be doi, title or author");
    const auto q = param(params, "q");
    if (q.empty()) return error_response(400, "BAD_PARAMETER", "q must not be empty");
    Json results = Json::array();
    for (const auto& rec : citeforest::search(snap->records, *field, q)) results.push_back(json_io::paper_json(rec));
    return json_response(200, Json{{"field", field_text}, {"q", q}, {"results", std::move(results)}});
}

Response Service::stats() const {
    const auto snap = snapshot();
    const auto s = compute_stats(snap->graph, snap->forest, snap->levels);
    return json_response(200, Json{{"node_count", s.node_count},
                                   {"full_edge_count", s.full_edge_count},
                                   {"simplified_edge_count", s.simplified_edge_count},
                                   {"level_count", s.level_count},
                                   {"root_count", s.root_count}});
}

Response Service::mutate(CurationEvent event, int success_status) {
    std::lock_guard lock(writer_mu_);
    if (!log_) return error_response(503, "READ_ONLY", "no curation log configured");
    const auto snap = snapshot();
    event.sequence = snap->last_sequence + 1;
    if (event.timestamp.empty()) event.timestamp = config_.clock();

    CurationState state(snap->records, snap->cases, snap->last_sequence);
    CitationGraph graph;
    try {
        state.apply(event);
        graph = event.paper ? build_full_graph(state.records()) : snap->graph;
    } catch (const ValidationError& ex) {
        return validation_response(ex.report());
    } catch (const CurationError& ex) {
        return error_response(ex.is_lifecycle() ? 409 : 422, to_string(ex.code()), ex.what());
    } catch (const CycleError& ex) {
        return error_response(422, "CYCLE", ex.what());
    } catch (const StoreError& ex) {
        return error_response(409, "LIFECYCLE", ex.what());
    }
    const auto& c = state.cases().at(event.paper_id);
    if (event.kind == EventKind::resolved) event.final_ref = c.final_ref;

    try {
        log_->append(event);
    } catch (const StoreError& ex) {
        return error_response(500, "LOG_WRITE_FAILED", ex.what());
    }
    auto body = case_body(c, state.records());
    publish(make_snapshot(state.records(), std::move(graph), state.cases(), state.last_sequence()));
    return json_response(success_status, body);
}

Response Service::submit(std::string_view body) {
    CurationEvent event;
    event.kind = EventKind::submitted;
    try {
        const auto j = Json::parse(body);
        const auto& p = j.at("paper");
        for (const auto& s : j.at("suggestions")) event.suggestions.push_back(json_io::suggestion_from_json(s));

        const auto snap = snapshot();
        const PaperRecord* existing = nullptr;
        if (!p.contains("title") && p.contains("doi")) {
            existing = find_record(*snap, p.at("doi").get<std::string>());
            if (!existing) return error_response(404, "NOT_FOUND", "no paper with DOI " + p.at("doi").get<std::string>());
        } else if (!p.contains("title") && p.contains("id")) {
            auto it = std::ranges::find(snap->records, p.at("id").get<NodeId>(), &PaperRecord::id);
            if (it == snap->records.end()) return error_response(404, "NOT_FOUND", "no paper with that id");
            existing = &*it;
        }
        if (existing) {
            event.paper_id = existing->id;
        } else {
            auto rec = json_io::record_from_json(p);
            if (rec.id == 0) {
                NodeId max_id = 0;
                for (const auto& r : snap->records) max_id = std::max(max_id, r.id);
                rec.id = max_id + 1;
            }
            event.paper_id = rec.id;
            event.paper = std::move(rec);
        }
    } catch (const Json::exception& ex) {
        return error_response(400, "BAD_REQUEST", ex.what());
    } catch (const Error& ex) {
        return error_response(400, "BAD_REQUEST", ex.what());
    }
    return mutate(std::move(event), 201);
}

Response Service::review(std::string_view doi, std::string_view body, std::string_view reviewer_header) {
    CurationEvent event;
    event.kind = EventKind::reviewed;
    {
        const auto snap = snapshot();
        const auto* rec = find_record(*snap, doi);
        if (!rec) return error_response(404, "NOT_FOUND", "no paper with DOI " + std::string(doi));
        event.paper_id = rec->id;
    }
    try {
        const auto j = Json::parse(body);
        event.reviewer = j.value("reviewer", std::string(reviewer_header));
        event.chosen = j.at("chosen").get<NodeId>();
    } catch (const Json::exception& ex) {
        return error_response(400, "BAD_REQUEST", ex.what());
    }
    if (event.reviewer.empty()) return error_response(400, "BAD_REQUEST", "reviewer id is required");
    return mutate(std::move(event), 200);
}

Response Service::resolve(std::string_view doi) {
    CurationEvent event;
    event.kind = EventKind::resolved;
    {
        const auto snap = snapshot();
        const auto* rec = find_record(*snap, doi);
        if (!rec) return error_response(404, "NOT_FOUND", "no paper with DOI " + std::string(doi));
        event.paper_id = rec->id;
    }
    return mutate(std::move(event), 200);
}

void Service::mount(httplib::Server& server) {
    const auto base = config_.base_path;
    auto send = [](httplib::Response& res, const Response& r) {
        res.status = r.status;
        res.set_content(r.body, r.content_type);
    };
    auto query = [](const httplib::Request& req) {
        QueryParams out;
        for (const auto& [k, v] : req.params) out.emplace(k, v);
        return out;
    };

    server.set_post_routing_handler([origin = config_.cors_origin](const httplib::Request&, httplib::Response& res) {
        if (origin.empty()) return;
        res.set_header("Access-Control-Allow-Origin", origin);
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type, X-Reviewer-Id");
    });
    server.Options(base + "/.*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Get(base + "/graph", [=, this](const httplib::Request& req, httplib::Response& res) {
        send(res, get_graph(query(req)));
    });
    server.Get(base + "/search", [=, this](const httplib::Request& req, httplib::Response& res) {
        send(res, search(query(req)));
    });
    server.Get(base + "/stats", [=, this](const httplib::Request&, httplib::Response& res) { send(res, stats()); });
    server.Get(base + R"(/papers/id/(\d+))", [=, this](const httplib::Request& req, httplib::Response& res) {
        send(res, get_paper_by_id(req.matches[1].str()));
    });
    server.Get(base + "/papers/(.+)/main-path", [=, this](const httplib::Request& req, httplib::Response& res) {
        send(res, get_main_path(req.matches[1].str()));
    });
    server.Get(base + "/papers/(.+)", [=, this](const httplib::Request& req, httplib::Response& res) {
        send(res, get_paper(req.matches[1].str()));
    });
    server.Post(base + "/papers", [=, this](const httplib::Request& req, httplib::Response& res) {
        send(res, submit(req.body));
    });
    server.Post(base + "/papers/(.+)/review", [=, this](const httplib::Request& req, httplib::Response& res) {
        send(res, review(req.matches[1].str(), req.body, req.get_header_value("X-Reviewer-Id")));
    });
    server.Post(base + "/papers/(.+)/resolve", [=, this](const httplib::Request& req, httplib::Response& res) {
        send(res, resolve(req.matches[1].str()));
    });
}

}  // namespace citeforest
