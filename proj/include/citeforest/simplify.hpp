#ifndef CITEFOREST_SIMPLIFY_HPP
#define CITEFOREST_SIMPLIFY_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "citeforest/graph.hpp"

namespace citeforest {

/// The citation graph reduced to one main reference per citing paper.
///
/// Every node with at least one in-corpus reference keeps exactly one
/// outgoing edge; reference-less papers are the roots of the forest.
class SimplifiedForest {
public:
    SimplifiedForest() = default;

    std::span<const NodeId> nodes() const noexcept { return nodes_; }
    bool contains(NodeId id) const { return years_.contains(id); }
    int year(NodeId id) const;

    std::optional<NodeId> main_ref(NodeId id) const;
    const std::map<NodeId, NodeId>& main_edges() const noexcept { return main_edge_; }
    std::size_t edge_count() const noexcept { return main_edge_.size(); }

    /// Edges sorted by citing id.
    std::vector<Edge> edges() const;
    /// Nodes without a main reference, ascending.
    std::vector<NodeId> roots() const;
    /// Papers whose main reference is `id`, ascending.
    std::vector<NodeId> children(NodeId id) const;

private:
    friend SimplifiedForest simplify_graph(const CitationGraph&, const std::function<NodeId(NodeId)>&);

    std::vector<NodeId> nodes_;
    std::map<NodeId, int> years_;
    std::map<NodeId, NodeId> main_edge_;
    std::map<NodeId, std::vector<NodeId>> children_;
};

/// Chooses the main reference of a paper that has at least one in-corpus ref.
using MainRefSelector = std::function<NodeId(NodeId paper)>;

/// Applies `selector` to every node with in-corpus references.
/// Throws SelectorError naming the node if the selector returns something
/// that is not one of that node's in-corpus references.
SimplifiedForest simplify_graph(const CitationGraph& graph, const MainRefSelector& selector);

/// Uniform seeded choice among the in-corpus refs of `paper`.
///
/// A std::mt19937_64 is seeded with `seed ^ paper.id`; the chosen index is
/// its first output modulo the ref count, over refs sorted ascending.
/// Throws SelectorError when the paper has no in-corpus refs.
NodeId select_main_random(const PaperRecord& paper, const CitationGraph& graph, std::uint64_t seed);

/// TF-IDF term space over a corpus.
///
/// Document text is title, abstract and keywords. Tokens are maximal runs of
/// ASCII alphanumerics (or non-ASCII bytes), lowercased, of length >= 2.
/// Weights are raw term count times ln(N / df) with N the corpus size.
class TfidfIndex {
public:
    explicit TfidfIndex(std::span<const PaperRecord> corpus);

    /// Cosine similarity between two documents' TF-IDF vectors; 0 when either is zero.
    double similarity(const PaperRecord& a, const PaperRecord& b) const;

    /// The in-corpus ref of `paper` most similar to it; ties go to the smaller id.
    NodeId select(const PaperRecord& paper) const;

private:
    using Vector = std::map<std::string, double>;
    Vector vectorize(const PaperRecord& doc) const;

    std::size_t corpus_size_ = 0;
    std::map<std::string, std::size_t> document_frequency_;
    std::map<NodeId, const PaperRecord*> by_id_;
};

std::vector<std::string> tfidf_tokens(const PaperRecord& doc);

/// Convenience over TfidfIndex for a single selection.
NodeId select_main_tfidf(const PaperRecord& paper, std::span<const PaperRecord> corpus);

}  // namespace citeforest

#endif  // CITEFOREST_SIMPLIFY_HPP
