#ifndef CITEFOREST_PIPELINE_HPP
#define CITEFOREST_PIPELINE_HPP

// Configuration-driven glue used by the CLI, the HTTP service and the Python
// bindings: which selector builds the forest, which layering mode, and the
// summary counts.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>

#include "citeforest/curation.hpp"
#include "citeforest/layering.hpp"
#include "citeforest/simplify.hpp"

namespace citeforest {

enum class SelectorKind { curated, random, tfidf };
std::optional<SelectorKind> parse_selector_kind(std::string_view text);
std::string_view to_string(SelectorKind k);

struct SimplifyConfig {
    SelectorKind selector = SelectorKind::curated;
    std::optional<std::uint64_t> seed;
    /// Used by the curated selector for papers without a resolved case.
    SelectorKind fallback = SelectorKind::tfidf;
};

/// Builds the per-paper chooser. Resolved cases win for `curated`; every other
/// paper goes to the fallback. Throws Error when a random selector has no seed.
MainRefSelector make_selector(const SimplifyConfig& config, std::span<const PaperRecord> records,
                              const CitationGraph& graph, const std::map<NodeId, CurationCase>& cases);

SimplifiedForest simplify_with(const SimplifyConfig& config, std::span<const PaperRecord> records,
                               const CitationGraph& graph, const std::map<NodeId, CurationCase>& cases = {});

enum class LevelMode { fixed, balanced };
std::optional<LevelMode> parse_level_mode(std::string_view text);
std::string_view to_string(LevelMode m);

struct LevelConfig {
    LevelMode mode = LevelMode::fixed;
    int width = 5;
    int count = 0;  // balanced mode; 0 means min(5, distinct years)
};

/// Empty assignment for an empty corpus.
LevelAssignment assign_levels(const LevelConfig& config, std::span<const PaperRecord> records);

struct Stats {
    std::size_t node_count = 0;
    std::size_t full_edge_count = 0;
    std::size_t simplified_edge_count = 0;
    std::size_t level_count = 0;
    std::size_t root_count = 0;

    friend bool operator==(const Stats&, const Stats&) = default;
};

Stats compute_stats(const CitationGraph& graph, const SimplifiedForest& forest, const LevelAssignment& levels);

}  // namespace citeforest

#endif  // CITEFOREST_PIPELINE_HPP
