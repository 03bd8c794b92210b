#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "citeforest/graph.hpp"
#include "test_support.hpp"

namespace citeforest {
namespace {

using testing::load_fixture;
using testing::make_record;

TEST(FullGraph, FourPaperFixture) {
    auto recs = load_fixture("mc4.csv");
    auto g = build_full_graph(recs);
    EXPECT_EQ(g.node_count(), 4u);
    EXPECT_EQ(g.edge_count(), 3u);
    EXPECT_EQ(g.edges(), (std::vector<Edge>{{2, 1}, {3, 1}, {4, 1}}));
    EXPECT_EQ(g.in_degree(1), 3u);
    EXPECT_EQ(in_degree(g, 2), 0u);
    EXPECT_EQ(roots(g), std::vector<NodeId>{1});
    EXPECT_EQ(g.year(4), 1992);
    EXPECT_FALSE(check_acyclic(g));
}

TEST(FullGraph, EmptyCorpus) {
    auto g = build_full_graph({});
    EXPECT_EQ(g.node_count(), 0u);
    EXPECT_EQ(g.edge_count(), 0u);
    EXPECT_TRUE(roots(g).empty());
    EXPECT_TRUE(weak_components(g).empty());
}

TEST(FullGraph, DanglingRefsAreSkipped) {
    std::vector<PaperRecord> recs = {make_record(1, 2000), make_record(2, 2001, {1, 42})};
    auto g = build_full_graph(recs);
    EXPECT_EQ(g.edge_count(), 1u);
    EXPECT_FALSE(g.contains(42));
}

TEST(FullGraph, UnknownIdThrows) {
    auto g = build_full_graph(load_fixture("mc4.csv"));
    EXPECT_THROW(g.in_degree(99), UnknownNodeError);
    EXPECT_THROW(g.refs(0), UnknownNodeError);
}

TEST(FullGraph, InvalidCorpusThrowsValidationError) {
    std::vector<PaperRecord> recs = {make_record(1, 2000, {1})};
    EXPECT_THROW(build_full_graph(recs), ValidationError);
}

TEST(FullGraph, SameYearCycleRaisesCycleError) {
    std::vector<PaperRecord> recs = {make_record(1, 2000, {3}), make_record(2, 2000, {1}), make_record(3, 2000, {2})};
    try {
        build_full_graph(recs);
        FAIL() << "expected CycleError";
    } catch (const CycleError& e) {
        std::set<NodeId> members(e.cycle().begin(), e.cycle().end());
        EXPECT_EQ(members, (std::set<NodeId>{1, 2, 3}));
    }
}

TEST(CheckAcyclic, WitnessIsARealCycle) {
    std::vector<NodeId> nodes = {1, 2, 3, 4, 5};
    std::vector<Edge> edges = {{1, 2}, {2, 3}, {3, 4}, {4, 2}, {5, 1}};
    auto w = check_acyclic(nodes, edges);
    ASSERT_TRUE(w);
    std::set<Edge> es(edges.begin(), edges.end());
    ASSERT_GE(w->size(), 2u);
    for (std::size_t i = 0; i < w->size(); ++i) {
        EXPECT_TRUE(es.contains({(*w)[i], (*w)[(i + 1) % w->size()]}));
    }
    EXPECT_EQ(std::set<NodeId>(w->begin(), w->end()), (std::set<NodeId>{2, 3, 4}));
}

TEST(CheckAcyclic, SelfLoop) {
    std::vector<NodeId> nodes = {7};
    std::vector<Edge> edges = {{7, 7}};
    auto w = check_acyclic(nodes, edges);
    ASSERT_TRUE(w);
    EXPECT_EQ(*w, std::vector<NodeId>{7});
}

// Oracle: a cycle exists iff some node reaches itself, found by exhaustive DFS
// over simple paths.
bool brute_force_has_cycle(const std::vector<NodeId>& nodes, const std::vector<Edge>& edges) {
    std::function<bool(NodeId, NodeId, std::set<NodeId>&)> reaches = [&](NodeId cur, NodeId target,
                                                                        std::set<NodeId>& seen) {
        for (const auto& e : edges) {
            if (e.from != cur) continue;
            if (e.to == target) return true;
            if (seen.insert(e.to).second && reaches(e.to, target, seen)) return true;
        }
        return false;
    };
    for (NodeId n : nodes) {
        std::set<NodeId> seen{n};
        if (reaches(n, n, seen)) return true;
    }
    return false;
}

TEST(CheckAcyclic, AgreesWithBruteForceOnSmallGraphs) {
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 500; ++iter) {
        const int n = 1 + static_cast<int>(rng() % 8);
        std::vector<NodeId> nodes(n);
        std::iota(nodes.begin(), nodes.end(), 1);
        std::vector<Edge> edges;
        const int density = 1 + static_cast<int>(rng() % 4);
        for (NodeId a : nodes)
            for (NodeId b : nodes)
                if (a != b && static_cast<int>(rng() % 10) < density) edges.push_back({a, b});
        auto w = check_acyclic(nodes, edges);
        ASSERT_EQ(w.has_value(), brute_force_has_cycle(nodes, edges)) << "iteration " << iter;
    }
}

// Oracle: union-find over the undirected edge set.
std::set<std::set<NodeId>> union_find_components(const CitationGraph& g) {
    std::map<NodeId, NodeId> parent;
    for (NodeId n : g.nodes()) parent[n] = n;
    std::function<NodeId(NodeId)> find = [&](NodeId x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& e : g.edges()) parent[find(e.from)] = find(e.to);
    std::map<NodeId, std::set<NodeId>> groups;
    for (NodeId n : g.nodes()) groups[find(n)].insert(n);
    std::set<std::set<NodeId>> out;
    for (auto& [_, s] : groups) out.insert(s);
    return out;
}

TEST(Graph, RandomCorpusInvariants) {
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 300; ++iter) {
        auto recs = testing::random_corpus(rng);
        auto g = build_full_graph(recs);
        ASSERT_EQ(g.node_count(), recs.size());

        std::size_t in_sum = 0, out_sum = 0;
        for (NodeId n : g.nodes()) {
            in_sum += g.in_degree(n);
            out_sum += g.out_degree(n);
        }
        EXPECT_EQ(in_sum, g.edge_count());
        EXPECT_EQ(out_sum, g.edge_count());

        std::size_t expected_edges = 0;
        for (const auto& r : recs)
            for (NodeId ref : r.refs) expected_edges += g.contains(ref);
        EXPECT_EQ(g.edge_count(), expected_edges);

        for (NodeId r : roots(g)) EXPECT_EQ(g.out_degree(r), 0u);

        auto comps = weak_components(g);
        std::set<std::set<NodeId>> got;
        NodeId prev_min = 0;
        for (const auto& c : comps) {
            ASSERT_TRUE(std::ranges::is_sorted(c));
            EXPECT_GT(c.front(), prev_min);
            prev_min = c.front();
            got.emplace(c.begin(), c.end());
        }
        EXPECT_EQ(got, union_find_components(g));
    }
}

}  // namespace
}  // namespace citeforest
