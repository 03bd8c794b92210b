#ifndef CITEFOREST_GRAPH_HPP
#define CITEFOREST_GRAPH_HPP

#include <compare>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "citeforest/corpus.hpp"

namespace citeforest {

/// A citation edge. Edges run from the citing paper to the cited one.
struct Edge {
    NodeId from = 0;
    NodeId to = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Full citation network over a corpus. Immutable once built.
///
/// Nodes are kept in ascending id order; adjacency lists are sorted.
class CitationGraph {
public:
    CitationGraph() = default;

    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    /// Ascending node ids.
    std::span<const NodeId> nodes() const noexcept { return nodes_; }
    bool contains(NodeId id) const { return index_.contains(id); }

    int year(NodeId id) const { return years_[index_of(id)]; }
    /// In-corpus references of `id`, ascending.
    std::span<const NodeId> refs(NodeId id) const { return out_[index_of(id)]; }
    /// Papers citing `id`, ascending.
    std::span<const NodeId> citers(NodeId id) const { return in_[index_of(id)]; }

    std::size_t in_degree(NodeId id) const { return citers(id).size(); }
    std::size_t out_degree(NodeId id) const { return refs(id).size(); }

    /// All edges, sorted by (from, to).
    std::vector<Edge> edges() const;

private:
    friend CitationGraph build_full_graph(std::span<const PaperRecord> records);

    std::size_t index_of(NodeId id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw UnknownNodeError(id);
        return it->second;
    }

    std::vector<NodeId> nodes_;
    std::vector<int> years_;
    std::vector<std::vector<NodeId>> out_;
    std::vector<std::vector<NodeId>> in_;
    std::unordered_map<NodeId, std::size_t> index_;
    std::size_t edge_count_ = 0;
};

/// Builds the full citation graph. Dangling refs are skipped.
/// Throws ValidationError if the corpus has validation errors and CycleError
/// if same-year records cite each other in a cycle.
CitationGraph build_full_graph(std::span<const PaperRecord> records);

std::size_t in_degree(const CitationGraph& graph, NodeId id);

/// Empty optional when acyclic, otherwise one directed cycle (first node not repeated).
using CycleWitness = std::optional<std::vector<NodeId>>;

CycleWitness check_acyclic(const CitationGraph& graph);
/// Same check over a raw edge list; endpoints missing from `nodes` are added implicitly.
CycleWitness check_acyclic(std::span<const NodeId> nodes, std::span<const Edge> edges);

/// Nodes with no in-corpus references, ascending.
std::vector<NodeId> roots(const CitationGraph& graph);

/// Weakly connected components. Each component is sorted; components are
/// ordered by their smallest id.
std::vector<std::vector<NodeId>> weak_components(const CitationGraph& graph);

}  // namespace citeforest

#endif  // CITEFOREST_GRAPH_HPP
