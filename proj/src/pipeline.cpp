#include "citeforest/pipeline.hpp"

#include <memory>
#include <set>
#include <unordered_map>

namespace citeforest {

std::optional<SelectorKind> parse_selector_kind(std::string_view text) {
    if (text == "curated") return SelectorKind::curated;
    if (text == "random") return SelectorKind::random;
    if (text == "tfidf") return SelectorKind::tfidf;
    return std::nullopt;
}

std::string_view to_string(SelectorKind k) {
    switch (k) {
        case SelectorKind::curated: return "curated";
        case SelectorKind::random: return "random";
        case SelectorKind::tfidf: return "tfidf";
    }
    return "?";
}

std::optional<LevelMode> parse_level_mode(std::string_view text) {
    if (text == "fixed") return LevelMode::fixed;
    if (text == "balanced") return LevelMode::balanced;
    return std::nullopt;
}

std::string_view to_string(LevelMode m) { return m == LevelMode::fixed ? "fixed" : "balanced"; }

namespace {

MainRefSelector automatic_selector(SelectorKind kind, std::optional<std::uint64_t> seed,
                                   std::span<const PaperRecord> records, const CitationGraph& graph) {
    auto by_id = std::make_shared<std::unordered_map<NodeId, const PaperRecord*>>();
    for (const auto& rec : records) by_id->emplace(rec.id, &rec);

    if (kind == SelectorKind::random) {
        if (!seed) throw Error("the random selector requires a seed");
        return [by_id, &graph, s = *seed](NodeId paper) { return select_main_random(*by_id->at(paper), graph, s); };
    }
    auto index = std::make_shared<TfidfIndex>(records);
    return [by_id, index](NodeId paper) { return index->select(*by_id->at(paper)); };
}

}  // namespace

MainRefSelector make_selector(const SimplifyConfig& config, std::span<const PaperRecord> records,
                              const CitationGraph& graph, const std::map<NodeId, CurationCase>& cases) {
    if (config.selector != SelectorKind::curated) {
        return automatic_selector(config.selector, config.seed, records, graph);
    }
    if (config.fallback == SelectorKind::curated) throw Error("curated selector needs a random or tfidf fallback");
    auto fallback = automatic_selector(config.fallback, config.seed, records, graph);
    auto resolved = std::make_shared<std::map<NodeId, NodeId>>();
    for (const auto& [id, c] : cases) {
        if (c.status == CaseStatus::resolved && c.final_ref) resolved->emplace(id, *c.final_ref);
    }
    return [resolved, fallback = std::move(fallback)](NodeId paper) {
        auto it = resolved->find(paper);
        return it != resolved->end() ? it->second : fallback(paper);
    };
}

SimplifiedForest simplify_with(const SimplifyConfig& config, std::span<const PaperRecord> records,
                               const CitationGraph& graph, const std::map<NodeId, CurationCase>& cases) {
    return simplify_graph(graph, make_selector(config, records, graph, cases));
}

LevelAssignment assign_levels(const LevelConfig& config, std::span<const PaperRecord> records) {
    if (records.empty()) return {};
    if (config.mode == LevelMode::fixed) return assign_levels_fixed(records, config.width);
    int count = config.count;
    if (count == 0) {
        std::set<int> years;
        for (const auto& r : records) years.insert(r.year);
        count = static_cast<int>(std::min<std::size_t>(5, years.size()));
    }
    return assign_levels_balanced(records, count);
}

Stats compute_stats(const CitationGraph& graph, const SimplifiedForest& forest, const LevelAssignment& levels) {
    return Stats{
        .node_count = graph.node_count(),
        .full_edge_count = graph.edge_count(),
        .simplified_edge_count = forest.edge_count(),
        .level_count = levels.level_count(),
        .root_count = roots(graph).size(),
    };
}

}  // namespace citeforest
