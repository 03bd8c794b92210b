#include "citeforest/visual.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "citeforest/json_io.hpp"

namespace citeforest {

namespace {

double round2(double x) { return std::round(x * 100.0) / 100.0; }

template <typename Map>
const typename Map::mapped_type& lookup(const Map& m, NodeId id, const char* what) {
    auto it = m.find(id);
    if (it == m.end()) throw Error("node " + std::to_string(id) + " missing from " + what);
    return it->second;
}

std::string fixed2(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string dot_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out;
}

std::vector<ViewNode> view_nodes(std::span<const PaperRecord> records, const CitationGraph& graph,
                                 const std::map<NodeId, std::size_t>& degrees, const LevelAssignment& levels) {
    std::map<NodeId, std::size_t> authors;
    std::map<NodeId, const PaperRecord*> by_id;
    for (const auto& rec : records) {
        if (!graph.contains(rec.id)) continue;
        authors[rec.id] = rec.authors.size();
        by_id[rec.id] = &rec;
    }
    const auto attrs = compute_visual_attrs(graph.nodes(), degrees, authors, levels.level_of);
    std::vector<ViewNode> out;
    out.reserve(graph.node_count());
    for (NodeId id : graph.nodes()) out.push_back({*lookup(by_id, id, "records"), attrs.at(id)});
    return out;
}

std::map<NodeId, std::size_t> full_degrees(const CitationGraph& graph) {
    std::map<NodeId, std::size_t> deg;
    for (NodeId n : graph.nodes()) deg[n] = graph.in_degree(n);
    return deg;
}

}  // namespace

std::map<NodeId, VisualAttributes> compute_visual_attrs(std::span<const NodeId> nodes,
                                                        const std::map<NodeId, std::size_t>& in_degrees,
                                                        const std::map<NodeId, std::size_t>& author_counts,
                                                        const std::map<NodeId, int>& levels) {
    std::map<NodeId, VisualAttributes> out;
    for (NodeId id : nodes) {
        const auto deg = static_cast<double>(lookup(in_degrees, id, "in-degrees"));
        const auto n_authors = static_cast<double>(lookup(author_counts, id, "author counts"));
        const int level = lookup(levels, id, "levels");
        out[id] = VisualAttributes{
            .node_size = round2(kBaseNodeSize + kNodeSizeScale * std::sqrt(deg)),
            .border_width = round2(kBaseBorder + kBorderPerAuthor * (n_authors - 1)),
            .color = level,
            .level = level,
        };
    }
    return out;
}

std::vector<std::string> level_palette(std::size_t count) {
    std::vector<std::string> out;
    constexpr double s = 0.6, l = 0.55;
    for (std::size_t k = 0; k < count; ++k) {
        const double h = 360.0 * static_cast<double>(k) / static_cast<double>(count);
        const double c = (1 - std::abs(2 * l - 1)) * s;
        const double hp = h / 60.0;
        const double x = c * (1 - std::abs(std::fmod(hp, 2.0) - 1));
        double r = 0, g = 0, b = 0;
        if (hp < 1) r = c, g = x;
        else if (hp < 2) r = x, g = c;
        else if (hp < 3) g = c, b = x;
        else if (hp < 4) g = x, b = c;
        else if (hp < 5) r = x, b = c;
        else r = c, b = x;
        const double m = l - c / 2;
        auto channel = [&](double v) { return static_cast<int>(std::lround((v + m) * 255.0)); };
        char buf[8];
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x", channel(r), channel(g), channel(b));
        out.emplace_back(buf);
    }
    return out;
}

std::string_view to_string(ViewKind k) { return k == ViewKind::full ? "full" : "simplified"; }

GraphView make_full_view(std::span<const PaperRecord> records, const CitationGraph& graph,
                         const LevelAssignment& levels) {
    return GraphView{ViewKind::full, view_nodes(records, graph, full_degrees(graph), levels), graph.edges()};
}

GraphView make_simplified_view(std::span<const PaperRecord> records, const CitationGraph& graph,
                               const SimplifiedForest& forest, const LevelAssignment& levels,
                               DegreeSource degrees) {
    std::map<NodeId, std::size_t> deg;
    if (degrees == DegreeSource::full) {
        deg = full_degrees(graph);
    } else {
        for (NodeId n : forest.nodes()) deg[n] = 0;
        for (const auto& [from, to] : forest.main_edges()) ++deg[to];
    }
    return GraphView{ViewKind::simplified, view_nodes(records, graph, deg, levels), forest.edges()};
}

std::string export_view_json(const GraphView& view, const LevelAssignment& levels) {
    return json_io::view_document(view, levels).dump(2) + "\n";
}

std::string export_view_dot(const GraphView& view, const LevelAssignment& levels) {
    const auto palette = level_palette(levels.level_count());
    std::map<int, std::vector<const ViewNode*>> by_level;
    for (const auto& n : view.nodes) by_level[n.attrs.level].push_back(&n);

    std::string out = "digraph citations {\n  rankdir=TB;\n  node [shape=circle, style=filled];\n";
    for (const auto& [level, nodes] : by_level) {
        out += "  subgraph level_" + std::to_string(level) + " {\n    rank=same;\n";
        const auto& color = static_cast<std::size_t>(level) < palette.size() ? palette[level] : std::string("#cccccc");
        for (const auto* n : nodes) {
            out += "    n" + std::to_string(n->record.id) + " [label=\"" + dot_escape(n->record.title) +
                   "\", width=" + fixed2(n->attrs.node_size / 20.0) + ", penwidth=" + fixed2(n->attrs.border_width) +
                   ", fillcolor=\"" + color + "\"];\n";
        }
        out += "  }\n";
    }
    for (const auto& e : view.edges) {
        out += "  n" + std::to_string(e.from) + " -> n" + std::to_string(e.to) + ";\n";
    }
    out += "}\n";
    return out;
}

}  // namespace citeforest
