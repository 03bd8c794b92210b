#include "citeforest/json_io.hpp"

namespace citeforest::json_io {

Json paper_json(const PaperRecord& rec) {
    return Json{
        {"id", rec.id},
        {"doi", rec.doi},
        {"title", rec.title},
        {"year", rec.year},
        {"authors", join(rec.authors, kAuthorSeparator)},
        {"keywords", join(rec.keywords, kKeywordSeparator)},
        {"url", rec.url},
        {"abstract", rec.abstract},
        {"refs", rec.refs},
    };
}

Json record_json(const PaperRecord& rec) {
    return Json{
        {"id", rec.id},          {"doi", rec.doi},       {"title", rec.title},
        {"authors", rec.authors}, {"year", rec.year},     {"abstract", rec.abstract},
        {"keywords", rec.keywords}, {"url", rec.url},     {"refs", rec.refs},
    };
}

namespace {

// Lists may arrive as arrays or as separator-joined strings.
std::vector<std::string> string_list(const Json& j, char sep) {
    std::vector<std::string> out;
    if (j.is_array()) {
        for (const auto& item : j) out.push_back(item.get<std::string>());
        return out;
    }
    const auto text = j.get<std::string>();
    std::size_t start = 0;
    while (start <= text.size()) {
        auto pos = text.find(sep, start);
        if (pos == std::string::npos) pos = text.size();
        auto item = text.substr(start, pos - start);
        const auto b = item.find_first_not_of(" \t");
        if (b != std::string::npos) {
            item = item.substr(b, item.find_last_not_of(" \t") - b + 1);
            out.push_back(item);
        }
        start = pos + 1;
    }
    return out;
}

}  // namespace

PaperRecord record_from_json(const Json& j) {
    PaperRecord rec;
    rec.id = j.value("id", NodeId{0});
    rec.doi = j.at("doi").get<std::string>();
    rec.title = j.value("title", std::string{});
    if (j.contains("authors")) rec.authors = string_list(j.at("authors"), kAuthorSeparator);
    rec.year = j.at("year").get<int>();
    rec.abstract = j.value("abstract", std::string{});
    if (j.contains("keywords")) rec.keywords = string_list(j.at("keywords"), kKeywordSeparator);
    rec.url = j.value("url", std::string{});
    if (j.contains("refs")) rec.refs = j.at("refs").get<std::vector<NodeId>>();
    return rec;
}

Json suggestion_json(const ReferenceSuggestion& s) {
    return Json{{"ref_id", s.ref_id}, {"rank", s.rank}, {"category", std::string(to_string(s.category))}};
}

ReferenceSuggestion suggestion_from_json(const Json& j) {
    ReferenceSuggestion s;
    s.ref_id = j.at("ref_id").get<NodeId>();
    s.rank = j.at("rank").get<int>();
    const auto cat = j.value("category", std::string("PBas"));
    auto parsed = parse_category(cat);
    if (!parsed) throw Error("unknown citation category '" + cat + "'");
    s.category = *parsed;
    return s;
}

Json case_json(const CurationCase& c) {
    Json suggestions = Json::array();
    for (const auto& s : c.suggestions) suggestions.push_back(suggestion_json(s));
    Json reviews = Json::array();
    for (const auto& r : c.reviews) {
        reviews.push_back(Json{{"reviewer", r.reviewer}, {"chosen", r.chosen}, {"timestamp", r.timestamp}});
    }
    return Json{
        {"paper_id", c.paper_id},
        {"status", std::string(to_string(c.status))},
        {"eligible_refs", c.eligible_refs},
        {"suggestions", std::move(suggestions)},
        {"reviews", std::move(reviews)},
        {"final_ref", c.final_ref ? Json(*c.final_ref) : Json(nullptr)},
    };
}

Json view_document(const GraphView& view, const LevelAssignment& levels) {
    const auto palette = level_palette(levels.level_count());
    Json lv = Json::array();
    for (std::size_t k = 0; k < levels.bounds.size(); ++k) {
        lv.push_back(Json{{"index", k}, {"lo", levels.bounds[k].lo}, {"hi", levels.bounds[k].hi}, {"color", palette[k]}});
    }
    Json nodes = Json::array();
    for (const auto& n : view.nodes) {
        nodes.push_back(Json{
            {"id", n.record.id},
            {"doi", n.record.doi},
            {"title", n.record.title},
            {"authors", n.record.authors},
            {"year", n.record.year},
            {"level", n.attrs.level},
            {"size", n.attrs.node_size},
            {"border", n.attrs.border_width},
            {"url", n.record.url},
        });
    }
    Json edges = Json::array();
    for (const auto& e : view.edges) edges.push_back(Json{{"from", e.from}, {"to", e.to}});
    return Json{
        {"view_kind", std::string(to_string(view.kind))},
        {"levels", std::move(lv)},
        {"nodes", std::move(nodes)},
        {"edges", std::move(edges)},
    };
}

}  // namespace citeforest::json_io
