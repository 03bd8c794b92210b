#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "citeforest/curation.hpp"
#include "citeforest/pipeline.hpp"
#include "citeforest/query.hpp"
#include "citeforest/store.hpp"
#include "citeforest/visual.hpp"

namespace py = pybind11;
using namespace citeforest;

namespace {

py::list edge_list(const std::vector<Edge>& edges) {
    py::list out;
    for (const auto& e : edges) out.append(py::make_tuple(e.from, e.to));
    return out;
}

SimplifyConfig simplify_config(const std::string& selector, std::optional<std::uint64_t> seed,
                               const std::string& fallback) {
    auto kind = parse_selector_kind(selector);
    auto fb = parse_selector_kind(fallback);
    if (!kind) throw py::value_error("selector must be curated, random or tfidf");
    if (!fb || *fb == SelectorKind::curated) throw py::value_error("fallback must be random or tfidf");
    return SimplifyConfig{*kind, seed, *fb};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Main-citation forests: corpus ingestion, simplification, layering and export";

    auto base = py::register_exception<Error>(m, "CiteforestError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<CycleError>(m, "CycleError", base.ptr());
    py::register_exception<CurationError>(m, "CurationError", base.ptr());
    py::register_exception<SelectorError>(m, "SelectorError", base.ptr());
    py::register_exception<LayeringError>(m, "LayeringError", base.ptr());
    py::register_exception<StoreError>(m, "StoreError", base.ptr());
    py::register_exception<UnknownNodeError>(m, "UnknownNodeError", base.ptr());

    py::class_<PaperRecord>(m, "PaperRecord")
        .def(py::init<>())
        .def_readwrite("id", &PaperRecord::id)
        .def_readwrite("doi", &PaperRecord::doi)
        .def_readwrite("title", &PaperRecord::title)
        .def_readwrite("authors", &PaperRecord::authors)
        .def_readwrite("year", &PaperRecord::year)
        .def_readwrite("abstract", &PaperRecord::abstract)
        .def_readwrite("keywords", &PaperRecord::keywords)
        .def_readwrite("url", &PaperRecord::url)
        .def_readwrite("refs", &PaperRecord::refs)
        .def(py::self == py::self)
        .def("__repr__", [](const PaperRecord& r) {
            return "<PaperRecord id=" + std::to_string(r.id) + " doi=" + r.doi + ">";
        });

    py::class_<Diagnostic>(m, "Diagnostic")
        .def_readonly("record_id", &Diagnostic::record_id)
        .def_readonly("code", &Diagnostic::code)
        .def_readonly("message", &Diagnostic::message)
        .def_readonly("related", &Diagnostic::related);
    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("errors", &ValidationReport::errors)
        .def_readonly("warnings", &ValidationReport::warnings)
        .def_property_readonly("loadable", &ValidationReport::loadable);

    m.def("parse_csv", [](const std::string& text) { return parse_csv(text); }, py::arg("text"));
    m.def("serialize_csv", [](const std::vector<PaperRecord>& r) { return serialize_csv(r); }, py::arg("records"));
    m.def("validate_corpus", [](const std::vector<PaperRecord>& r) { return validate_corpus(r); }, py::arg("records"));

    py::class_<CitationGraph>(m, "CitationGraph")
        .def_property_readonly("node_count", &CitationGraph::node_count)
        .def_property_readonly("edge_count", &CitationGraph::edge_count)
        .def("nodes", [](const CitationGraph& g) { return std::vector<NodeId>(g.nodes().begin(), g.nodes().end()); })
        .def("edges", [](const CitationGraph& g) { return edge_list(g.edges()); })
        .def("in_degree", &CitationGraph::in_degree, py::arg("id"))
        .def("refs", [](const CitationGraph& g, NodeId id) { auto r = g.refs(id); return std::vector<NodeId>(r.begin(), r.end()); })
        .def("citers", [](const CitationGraph& g, NodeId id) { auto r = g.citers(id); return std::vector<NodeId>(r.begin(), r.end()); });

    m.def("build_full_graph", [](const std::vector<PaperRecord>& r) { return build_full_graph(r); }, py::arg("records"));
    m.def("roots", &roots, py::arg("graph"));
    m.def("weak_components", &weak_components, py::arg("graph"));
    m.def("check_acyclic", [](const CitationGraph& g) { return check_acyclic(g); }, py::arg("graph"),
          "None when acyclic, otherwise one cycle as a list of ids");

    py::class_<SimplifiedForest>(m, "SimplifiedForest")
        .def_property_readonly("edge_count", &SimplifiedForest::edge_count)
        .def("nodes", [](const SimplifiedForest& f) { return std::vector<NodeId>(f.nodes().begin(), f.nodes().end()); })
        .def("edges", [](const SimplifiedForest& f) { return edge_list(f.edges()); })
        .def("main_ref", &SimplifiedForest::main_ref, py::arg("id"))
        .def("roots", &SimplifiedForest::roots);

    m.def(
        "simplify",
        [](const std::vector<PaperRecord>& records, const CitationGraph& graph, const std::string& selector,
           std::optional<std::uint64_t> seed, const std::string& fallback) {
            return simplify_with(simplify_config(selector, seed, fallback), records, graph);
        },
        py::arg("records"), py::arg("graph"), py::arg("selector") = "tfidf", py::arg("seed") = py::none(),
        py::arg("fallback") = "tfidf");
    m.def("select_main_random", &select_main_random, py::arg("paper"), py::arg("graph"), py::arg("seed"));
    m.def("select_main_tfidf",
          [](const PaperRecord& p, const std::vector<PaperRecord>& corpus) { return select_main_tfidf(p, corpus); },
          py::arg("paper"), py::arg("corpus"));

    py::class_<LevelAssignment>(m, "LevelAssignment")
        .def_readonly("level_of", &LevelAssignment::level_of)
        .def_property_readonly("bounds", [](const LevelAssignment& l) {
            py::list out;
            for (const auto& b : l.bounds) out.append(py::make_tuple(b.lo, b.hi));
            return out;
        });
    m.def("assign_levels_fixed",
          [](const std::vector<PaperRecord>& r, int width) { return assign_levels_fixed(r, width); },
          py::arg("records"), py::arg("width_years"));
    m.def("assign_levels_balanced",
          [](const std::vector<PaperRecord>& r, int count) { return assign_levels_balanced(r, count); },
          py::arg("records"), py::arg("level_count"));
    m.def("check_edge_monotone",
          [](const LevelAssignment& l, const CitationGraph& g) { return check_edge_monotone(l, g).empty(); },
          py::arg("levels"), py::arg("graph"));

    m.def(
        "export_view",
        [](const std::vector<PaperRecord>& records, const CitationGraph& graph, const LevelAssignment& levels,
           const std::optional<SimplifiedForest>& forest, const std::string& format) {
            const auto view = forest ? make_simplified_view(records, graph, *forest, levels)
                                     : make_full_view(records, graph, levels);
            if (format == "json") return export_view_json(view, levels);
            if (format == "dot") return export_view_dot(view, levels);
            throw py::value_error("format must be json or dot");
        },
        py::arg("records"), py::arg("graph"), py::arg("levels"), py::arg("forest") = py::none(),
        py::arg("format") = "json", "Full view when forest is None, simplified view otherwise");

    m.def("find_by_doi", [](const std::vector<PaperRecord>& c, const std::string& doi) { return find_by_doi(c, doi); },
          py::arg("corpus"), py::arg("doi"));
    m.def(
        "search",
        [](const std::vector<PaperRecord>& c, const std::string& field, const std::string& needle) {
            auto f = parse_search_field(field);
            if (!f) throw py::value_error("field must be doi, title or author");
            return search(c, *f, needle);
        },
        py::arg("corpus"), py::arg("field"), py::arg("needle"));
    m.def("main_path", &main_path, py::arg("forest"), py::arg("start"));
    m.def("descendants", &descendants, py::arg("forest"), py::arg("root"));

    py::class_<ReferenceSuggestion>(m, "ReferenceSuggestion")
        .def(py::init([](NodeId ref, int rank, const std::string& category) {
                 auto c = parse_category(category);
                 if (!c) throw py::value_error("unknown citation category");
                 return ReferenceSuggestion{ref, rank, *c};
             }),
             py::arg("ref_id"), py::arg("rank"), py::arg("category") = "PBas")
        .def_readonly("ref_id", &ReferenceSuggestion::ref_id)
        .def_readonly("rank", &ReferenceSuggestion::rank)
        .def_property_readonly("category", [](const ReferenceSuggestion& s) { return std::string(to_string(s.category)); });

    py::class_<CurationCase>(m, "CurationCase")
        .def_readonly("paper_id", &CurationCase::paper_id)
        .def_readonly("suggestions", &CurationCase::suggestions)
        .def_property_readonly("status", [](const CurationCase& c) { return std::string(to_string(c.status)); })
        .def_readonly("final_ref", &CurationCase::final_ref)
        .def_property_readonly("reviews", [](const CurationCase& c) {
            py::list out;
            for (const auto& r : c.reviews) out.append(py::make_tuple(r.reviewer, r.chosen, r.timestamp));
            return out;
        });
    m.def("submit_suggestions",
          [](const PaperRecord& p, const std::vector<PaperRecord>& corpus, std::vector<ReferenceSuggestion> s) {
              return submit_suggestions(p, corpus, std::move(s));
          },
          py::arg("paper"), py::arg("corpus"), py::arg("suggestions"));
    m.def("record_review", &record_review, py::arg("case"), py::arg("reviewer"), py::arg("chosen"),
          py::arg("timestamp") = "");
    m.def("resolve_case", &resolve_case, py::arg("case"));

    m.def(
        "stats",
        [](const std::vector<PaperRecord>& records, const CitationGraph& graph, const SimplifiedForest& forest,
           int width) {
            const auto s = compute_stats(graph, forest, assign_levels(LevelConfig{LevelMode::fixed, width, 0}, records));
            py::dict d;
            d["node_count"] = s.node_count;
            d["full_edge_count"] = s.full_edge_count;
            d["simplified_edge_count"] = s.simplified_edge_count;
            d["level_count"] = s.level_count;
            d["root_count"] = s.root_count;
            return d;
        },
        py::arg("records"), py::arg("graph"), py::arg("forest"), py::arg("width") = 5);

    m.def(
        "load_state",
        [](const std::filesystem::path& corpus, const std::filesystem::path& log) {
            auto s = load_state(corpus, log);
            return py::make_tuple(s.records, s.graph, s.cases);
        },
        py::arg("corpus_file"), py::arg("log_file") = std::filesystem::path{});
}
