#include "citeforest/layering.hpp"

#include <algorithm>
#include <limits>

namespace citeforest {

int LevelAssignment::level(NodeId id) const {
    auto it = level_of.find(id);
    if (it == level_of.end()) throw UnknownNodeError(id);
    return it->second;
}

LevelAssignment assign_levels_fixed(std::span<const PaperRecord> records, int width_years) {
    if (records.empty()) throw LayeringError("cannot assign levels to an empty corpus");
    if (width_years < 1) throw LayeringError("level width must be at least one year");

    const auto [lo_it, hi_it] = std::ranges::minmax_element(records, {}, &PaperRecord::year);
    const long long min_year = lo_it->year;
    const long long max_year = hi_it->year;

    LevelAssignment out;
    for (const auto& rec : records) {
        out.level_of[rec.id] = static_cast<int>((rec.year - min_year) / width_years);
    }
    const long long count = (max_year - min_year) / width_years + 1;
    for (long long k = 0; k < count; ++k) {
        out.bounds.push_back({static_cast<int>(min_year + k * width_years),
                              static_cast<int>(min_year + (k + 1) * width_years - 1)});
    }
    return out;
}

LevelAssignment assign_levels_balanced(std::span<const PaperRecord> records, int level_count) {
    if (records.empty()) throw LayeringError("cannot assign levels to an empty corpus");
    if (level_count < 1) throw LayeringError("level count must be at least one");

    std::map<int, std::size_t> per_year;
    for (const auto& rec : records) ++per_year[rec.year];
    std::vector<int> years;
    std::vector<std::size_t> prefix{0};
    for (const auto& [y, n] : per_year) {
        years.push_back(y);
        prefix.push_back(prefix.back() + n);
    }
    const std::size_t n_years = years.size();
    const auto k_levels = static_cast<std::size_t>(level_count);
    if (k_levels > n_years) {
        throw LayeringError("level count " + std::to_string(level_count) + " exceeds the " +
                            std::to_string(n_years) + " distinct publication years");
    }

    // best[k][i]: minimal max load when the first i years form k groups.
    constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();
    std::vector<std::vector<std::size_t>> best(k_levels + 1, std::vector<std::size_t>(n_years + 1, inf));
    best[0][0] = 0;
    for (std::size_t k = 1; k <= k_levels; ++k) {
        for (std::size_t i = k; i <= n_years; ++i) {
            for (std::size_t j = k - 1; j < i; ++j) {
                if (best[k - 1][j] == inf) continue;
                const std::size_t load = std::max(best[k - 1][j], prefix[i] - prefix[j]);
                best[k][i] = std::min(best[k][i], load);
            }
        }
    }

    // Walk back from the newest year, taking the shortest feasible last group.
    const std::size_t target = best[k_levels][n_years];
    std::vector<std::size_t> starts(k_levels);
    std::size_t end = n_years;
    for (std::size_t k = k_levels; k >= 1; --k) {
        std::size_t j = end - 1;
        while (true) {
            if (best[k - 1][j] != inf && std::max(best[k - 1][j], prefix[end] - prefix[j]) <= target) break;
            --j;
        }
        starts[k - 1] = j;
        end = j;
    }

    LevelAssignment out;
    for (std::size_t k = 0; k < k_levels; ++k) {
        const int lo = years[starts[k]];
        const int hi = k + 1 < k_levels ? years[starts[k + 1]] - 1 : years.back();
        out.bounds.push_back({lo, hi});
    }
    for (const auto& rec : records) {
        auto it = std::ranges::upper_bound(out.bounds, rec.year, {}, &YearRange::lo);
        out.level_of[rec.id] = static_cast<int>(std::distance(out.bounds.begin(), it)) - 1;
    }
    return out;
}

std::vector<LevelViolation> check_edge_monotone(const LevelAssignment& levels, std::span<const Edge> edges) {
    std::vector<LevelViolation> out;
    for (const auto& e : edges) {
        const int from = levels.level(e.from);
        const int to = levels.level(e.to);
        if (to > from) out.push_back({e, from, to});
    }
    return out;
}

std::vector<LevelViolation> check_edge_monotone(const LevelAssignment& levels, const CitationGraph& graph) {
    const auto edges = graph.edges();
    return check_edge_monotone(levels, edges);
}

}  // namespace citeforest
