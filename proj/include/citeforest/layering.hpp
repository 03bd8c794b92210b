#ifndef CITEFOREST_LAYERING_HPP
#define CITEFOREST_LAYERING_HPP

#include <map>
#include <span>
#include <vector>

#include "citeforest/graph.hpp"

namespace citeforest {

struct YearRange {
    int lo = 0;
    int hi = 0;  // inclusive

    bool contains(int year) const noexcept { return lo <= year && year <= hi; }
    friend bool operator==(const YearRange&, const YearRange&) = default;
};

/// Chronological banding. Level 0 is the oldest band and is drawn on top.
/// Bands are contiguous, disjoint and ordered by year.
struct LevelAssignment {
    std::map<NodeId, int> level_of;
    std::vector<YearRange> bounds;

    std::size_t level_count() const noexcept { return bounds.size(); }
    int level(NodeId id) const;

    friend bool operator==(const LevelAssignment&, const LevelAssignment&) = default;
};

/// Fixed-width bands anchored at the oldest year: level k covers
/// [min_year + k*width, min_year + (k+1)*width - 1]. Empty trailing bands are dropped.
LevelAssignment assign_levels_fixed(std::span<const PaperRecord> records, int width_years);

/// Splits the distinct years into `level_count` contiguous groups so that the
/// largest group (in papers) is as small as possible. Papers of one year are
/// never split. Ties between optimal splits keep the newest groups shortest.
LevelAssignment assign_levels_balanced(std::span<const PaperRecord> records, int level_count);

struct LevelViolation {
    Edge edge;
    int citing_level = 0;
    int cited_level = 0;

    friend bool operator==(const LevelViolation&, const LevelViolation&) = default;
};

/// Every citation must point at the same or an older band. Returns the
/// edges that do not; empty means ok.
std::vector<LevelViolation> check_edge_monotone(const LevelAssignment& levels, const CitationGraph& graph);
std::vector<LevelViolation> check_edge_monotone(const LevelAssignment& levels, std::span<const Edge> edges);

}  // namespace citeforest

#endif  // CITEFOREST_LAYERING_HPP
