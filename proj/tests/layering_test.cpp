#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "citeforest/layering.hpp"
#include "citeforest/pipeline.hpp"
#include "test_support.hpp"

namespace citeforest {
namespace {

using testing::load_fixture;
using testing::make_record;

std::vector<PaperRecord> by_years(const std::vector<int>& years) {
    std::vector<PaperRecord> out;
    for (std::size_t i = 0; i < years.size(); ++i) out.push_back(make_record(static_cast<NodeId>(i + 1), years[i]));
    return out;
}

std::vector<std::size_t> loads(const LevelAssignment& l) {
    std::vector<std::size_t> out(l.level_count());
    for (const auto& [_, lvl] : l.level_of) out[lvl]++;
    return out;
}

TEST(FixedLevels, FourPaperFixtureFiveYearBuckets) {
    auto recs = load_fixture("mc4.csv");
    auto l = assign_levels_fixed(recs, 5);
    EXPECT_EQ(l.bounds, (std::vector<YearRange>{{1987, 1991}, {1992, 1996}}));
    EXPECT_EQ(l.level(1), 0);
    EXPECT_EQ(l.level(3), 0);
    EXPECT_EQ(l.level(2), 1);
    EXPECT_EQ(l.level(4), 1);
    EXPECT_TRUE(check_edge_monotone(l, build_full_graph(recs)).empty());
}

TEST(FixedLevels, GapYearsKeepEmptyLevels) {
    auto l = assign_levels_fixed(by_years({2000, 2011}), 5);
    EXPECT_EQ(l.level_count(), 3u);
    EXPECT_EQ(l.level(2), 2);
}

TEST(FixedLevels, Errors) {
    EXPECT_THROW(assign_levels_fixed({}, 5), LayeringError);
    EXPECT_THROW(assign_levels_fixed(by_years({2000}), 0), LayeringError);
    EXPECT_THROW(assign_levels_fixed(by_years({2000}), 5).level(9), UnknownNodeError);
}

TEST(BalancedLevels, SkewedYearIsItsOwnLevel) {
    std::vector<int> years(9, 2000);
    years.push_back(2001);
    auto l = assign_levels_balanced(by_years(years), 2);
    EXPECT_EQ(loads(l), (std::vector<std::size_t>{9, 1}));
    EXPECT_EQ(l.bounds, (std::vector<YearRange>{{2000, 2000}, {2001, 2001}}));
}

TEST(BalancedLevels, UniformYearsSplitEvenly) {
    auto l = assign_levels_balanced(by_years({2000, 2001, 2002, 2003, 2004, 2005, 2006, 2007, 2008, 2009}), 2);
    EXPECT_EQ(loads(l), (std::vector<std::size_t>{5, 5}));
}

TEST(BalancedLevels, BoundsCoverGapYears) {
    auto l = assign_levels_balanced(by_years({1990, 1990, 2000, 2010, 2010}), 3);
    ASSERT_EQ(l.level_count(), 3u);
    for (std::size_t k = 1; k < l.level_count(); ++k) EXPECT_EQ(l.bounds[k].lo, l.bounds[k - 1].hi + 1);
}

TEST(BalancedLevels, Errors) {
    EXPECT_THROW(assign_levels_balanced({}, 2), LayeringError);
    EXPECT_THROW(assign_levels_balanced(by_years({2000, 2001}), 3), LayeringError);
    EXPECT_THROW(assign_levels_balanced(by_years({2000}), 0), LayeringError);
}

TEST(LevelConfig, EmptyCorpusGivesNoLevels) {
    EXPECT_EQ(assign_levels(LevelConfig{}, {}).level_count(), 0u);
    EXPECT_EQ(assign_levels(LevelConfig{LevelMode::balanced}, {}).level_count(), 0u);
}

TEST(LevelConfig, BalancedDefaultCount) {
    EXPECT_EQ(assign_levels(LevelConfig{LevelMode::balanced}, by_years({2000, 2001})).level_count(), 2u);
    EXPECT_EQ(assign_levels(LevelConfig{LevelMode::balanced}, by_years({1, 2, 3, 4, 5, 6, 7})).level_count(), 5u);
}

// Oracle: try every split of the distinct years into k contiguous groups.
std::size_t brute_force_min_max_load(const std::vector<PaperRecord>& recs, int k) {
    std::map<int, std::size_t> per_year;
    for (const auto& r : recs) per_year[r.year]++;
    std::vector<std::size_t> counts;
    for (const auto& [_, n] : per_year) counts.push_back(n);
    std::size_t best = SIZE_MAX;
    std::function<void(std::size_t, int, std::size_t)> go = [&](std::size_t start, int groups_left, std::size_t worst) {
        if (groups_left == 0) {
            if (start == counts.size()) best = std::min(best, worst);
            return;
        }
        std::size_t load = 0;
        for (std::size_t end = start; end < counts.size(); ++end) {
            load += counts[end];
            go(end + 1, groups_left - 1, std::max(worst, load));
        }
    };
    go(0, k, 0);
    return best;
}

void expect_well_formed(const LevelAssignment& l, const std::vector<PaperRecord>& recs) {
    ASSERT_EQ(l.level_of.size(), recs.size());
    for (std::size_t k = 1; k < l.level_count(); ++k) ASSERT_EQ(l.bounds[k].lo, l.bounds[k - 1].hi + 1);
    for (const auto& r : recs) {
        const int lvl = l.level(r.id);
        ASSERT_GE(lvl, 0);
        ASSERT_LT(static_cast<std::size_t>(lvl), l.level_count());
        ASSERT_TRUE(l.bounds[lvl].contains(r.year));
    }
}

TEST(Levels, RandomCorpusProperties) {
    std::mt19937_64 rng(8);
    int checked = 0;
    while (checked < 300) {
        auto recs = testing::random_corpus(rng, 30);
        if (recs.empty()) continue;
        auto g = build_full_graph(recs);
        const int width = 1 + static_cast<int>(rng() % 8);
        auto fixed = assign_levels_fixed(recs, width);
        expect_well_formed(fixed, recs);
        EXPECT_TRUE(check_edge_monotone(fixed, g).empty());

        std::set<int> distinct;
        for (const auto& r : recs) distinct.insert(r.year);
        const int k = 1 + static_cast<int>(rng() % std::min<std::size_t>(distinct.size(), 6));
        auto balanced = assign_levels_balanced(recs, k);
        ASSERT_EQ(balanced.level_count(), static_cast<std::size_t>(k));
        expect_well_formed(balanced, recs);
        EXPECT_TRUE(check_edge_monotone(balanced, g).empty());
        auto l = loads(balanced);
        EXPECT_EQ(*std::ranges::max_element(l), brute_force_min_max_load(recs, k));
        ++checked;
    }
}

TEST(EdgeMonotone, ReportsViolations) {
    auto l = assign_levels_fixed(by_years({2000, 2010}), 5);
    std::vector<Edge> edges = {{1, 2}};
    auto v = check_edge_monotone(l, edges);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0], (LevelViolation{{1, 2}, 0, 2}));
}

}  // namespace
}  // namespace citeforest
