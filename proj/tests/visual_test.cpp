#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "citeforest/pipeline.hpp"
#include "citeforest/visual.hpp"
#include "test_support.hpp"

namespace citeforest {
namespace {

using testing::load_fixture;

struct Fixture {
    std::vector<PaperRecord> recs;
    CitationGraph graph;
    SimplifiedForest forest;
    LevelAssignment levels;

    explicit Fixture(const std::string& name, SimplifyConfig cfg = {SelectorKind::tfidf})
        : recs(load_fixture(name)),
          graph(build_full_graph(recs)),
          forest(simplify_with(cfg, recs, graph)),
          levels(assign_levels_fixed(recs, 5)) {}
};

const ViewNode& node(const GraphView& v, NodeId id) {
    return *std::ranges::find_if(v.nodes, [&](const ViewNode& n) { return n.record.id == id; });
}

TEST(VisualAttrs, FourPaperFixtureMostCitedNode) {
    Fixture f("mc4.csv");
    auto v = make_full_view(f.recs, f.graph, f.levels);
    EXPECT_NEAR(node(v, 1).attrs.node_size, 10 + 6 * std::sqrt(3.0), 0.01);
    EXPECT_DOUBLE_EQ(node(v, 1).attrs.node_size, 20.39);
    EXPECT_DOUBLE_EQ(node(v, 2).attrs.node_size, 10.0);
    EXPECT_DOUBLE_EQ(node(v, 1).attrs.border_width, 2.0);
    EXPECT_DOUBLE_EQ(node(v, 2).attrs.border_width, 3.0);
    EXPECT_EQ(node(v, 2).attrs.level, 1);
}

TEST(VisualAttrs, MissingInputThrows) {
    std::vector<NodeId> nodes = {1};
    EXPECT_THROW(compute_visual_attrs(nodes, {}, {{1, 1}}, {{1, 0}}), Error);
}

TEST(VisualAttrs, MonotoneInDegreeAndAuthors) {
    std::mt19937_64 rng(12);
    std::vector<NodeId> nodes;
    std::map<NodeId, std::size_t> deg, authors;
    std::map<NodeId, int> levels;
    for (NodeId id = 1; id <= 400; ++id) {
        nodes.push_back(id);
        deg[id] = rng() % 200;
        authors[id] = 1 + rng() % 30;
        levels[id] = 0;
    }
    auto attrs = compute_visual_attrs(nodes, deg, authors, levels);
    for (NodeId a : nodes) {
        for (NodeId b : nodes) {
            if (deg[a] <= deg[b]) ASSERT_LE(attrs[a].node_size, attrs[b].node_size);
            if (authors[a] <= authors[b]) ASSERT_LE(attrs[a].border_width, attrs[b].border_width);
        }
    }
}

TEST(Palette, DistinctHexColours) {
    auto p = level_palette(6);
    ASSERT_EQ(p.size(), 6u);
    std::set<std::string> unique(p.begin(), p.end());
    EXPECT_EQ(unique.size(), 6u);
    for (const auto& c : p) EXPECT_TRUE(std::regex_match(c, std::regex("#[0-9a-f]{6}")));
    EXPECT_EQ(level_palette(1), level_palette(1));
    EXPECT_TRUE(level_palette(0).empty());
}

TEST(Views, SimplifiedDegreesCountOnlyMainEdges) {
    Fixture f("mc17.csv");
    auto simplified = make_simplified_view(f.recs, f.graph, f.forest, f.levels);
    auto with_full = make_simplified_view(f.recs, f.graph, f.forest, f.levels, DegreeSource::full);
    EXPECT_EQ(simplified.edges.size(), 16u);
    std::size_t children_of_1 = f.forest.children(1).size();
    EXPECT_DOUBLE_EQ(node(simplified, 1).attrs.node_size,
                     std::round((10 + 6 * std::sqrt(static_cast<double>(children_of_1))) * 100) / 100);
    EXPECT_DOUBLE_EQ(node(with_full, 1).attrs.node_size, std::round((10 + 6 * std::sqrt(16.0)) * 100) / 100);
}

TEST(ExportJson, CountsAndFields) {
    Fixture f("mc17.csv");
    auto full = nlohmann::json::parse(export_view_json(make_full_view(f.recs, f.graph, f.levels), f.levels));
    auto simp = nlohmann::json::parse(
        export_view_json(make_simplified_view(f.recs, f.graph, f.forest, f.levels), f.levels));
    EXPECT_EQ(full["view_kind"], "full");
    EXPECT_EQ(simp["view_kind"], "simplified");
    EXPECT_EQ(full["nodes"].size(), 17u);
    EXPECT_EQ(full["edges"].size(), 43u);
    EXPECT_EQ(simp["nodes"].size(), 17u);
    EXPECT_EQ(simp["edges"].size(), 16u);
    EXPECT_EQ(full["levels"].size(), f.levels.level_count());

    for (const auto& n : full["nodes"]) {
        const auto& rec = *std::ranges::find(f.recs, n["id"].get<NodeId>(), &PaperRecord::id);
        EXPECT_EQ(n["doi"], rec.doi);
        EXPECT_EQ(n["title"], rec.title);
        EXPECT_EQ(n["year"], rec.year);
        EXPECT_EQ(n["authors"].get<std::vector<std::string>>(), rec.authors);
        EXPECT_EQ(n["level"], f.levels.level(rec.id));
        EXPECT_DOUBLE_EQ(n["border"].get<double>(), static_cast<double>(rec.authors.size()));
    }
    for (const auto& e : simp["edges"]) {
        EXPECT_EQ(f.forest.main_ref(e["from"].get<NodeId>()), e["to"].get<NodeId>());
    }
}

std::string without_edge_lines(const std::string& dot) {
    std::istringstream in(dot);
    std::string line, out;
    while (std::getline(in, line)) {
        if (line.find("->") == std::string::npos) out += line + "\n";
    }
    return out;
}

TEST(ExportDot, FullAndSimplifiedDifferOnlyInEdges) {
    Fixture f("mc17.csv");
    auto full = export_view_dot(make_full_view(f.recs, f.graph, f.levels), f.levels);
    auto simp = export_view_dot(make_simplified_view(f.recs, f.graph, f.forest, f.levels, DegreeSource::full),
                                f.levels);
    EXPECT_EQ(without_edge_lines(full), without_edge_lines(simp));
    auto count_edges = [](const std::string& s) {
        std::size_t n = 0;
        for (std::size_t pos = 0; (pos = s.find("->", pos)) != std::string::npos; ++pos) ++n;
        return n;
    };
    EXPECT_EQ(count_edges(full), 43u);
    EXPECT_EQ(count_edges(simp), 16u);
}

TEST(ExportDot, EscapesLabels) {
    auto recs = std::vector<PaperRecord>{testing::make_record(1, 2000, {}, {"X"}, "say \"hi\"\\now")};
    auto g = build_full_graph(recs);
    auto l = assign_levels_fixed(recs, 5);
    auto dot = export_view_dot(make_full_view(recs, g, l), l);
    EXPECT_NE(dot.find(R"(label="say \"hi\"\\now")"), std::string::npos) << dot;
}

TEST(Export, RandomSeedIsByteDeterministic) {
    auto once = [](std::uint64_t seed) {
        Fixture f("mc17.csv", {SelectorKind::random, seed});
        auto v = make_simplified_view(f.recs, f.graph, f.forest, f.levels);
        return export_view_json(v, f.levels) + export_view_dot(v, f.levels);
    };
    EXPECT_EQ(once(2024), once(2024));
}

}  // namespace
}  // namespace citeforest
