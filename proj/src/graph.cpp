#include "citeforest/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace citeforest {

std::vector<Edge> CitationGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        for (NodeId to : out_[i]) out.push_back({nodes_[i], to});
    }
    return out;
}

CitationGraph build_full_graph(std::span<const PaperRecord> records) {
    auto report = validate_corpus(records);
    if (!report.loadable()) throw ValidationError(std::move(report));

    std::vector<const PaperRecord*> sorted;
    sorted.reserve(records.size());
    for (const auto& rec : records) sorted.push_back(&rec);
    std::ranges::sort(sorted, {}, &PaperRecord::id);

    CitationGraph g;
    g.nodes_.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        g.nodes_.push_back(sorted[i]->id);
        g.years_.push_back(sorted[i]->year);
        g.index_.emplace(sorted[i]->id, i);
    }
    g.out_.resize(sorted.size());
    g.in_.resize(sorted.size());

    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (NodeId ref : sorted[i]->refs) {
            auto it = g.index_.find(ref);
            if (it == g.index_.end()) continue;
            g.out_[i].push_back(ref);
            g.in_[it->second].push_back(sorted[i]->id);
            ++g.edge_count_;
        }
        std::ranges::sort(g.out_[i]);
    }
    // in_ lists were filled in ascending citer order already.

    if (auto cycle = check_acyclic(g)) throw CycleError(std::move(*cycle));
    return g;
}

std::size_t in_degree(const CitationGraph& graph, NodeId id) { return graph.in_degree(id); }

CycleWitness check_acyclic(const CitationGraph& graph) {
    const auto edges = graph.edges();
    return check_acyclic(graph.nodes(), edges);
}

CycleWitness check_acyclic(std::span<const NodeId> nodes, std::span<const Edge> edges) {
    std::map<NodeId, std::vector<NodeId>> adj;
    for (NodeId n : nodes) adj[n];
    for (const auto& e : edges) {
        adj[e.from].push_back(e.to);
        adj[e.to];
    }
    for (auto& [_, next] : adj) std::ranges::sort(next);

    enum class Mark { fresh, open, done };
    std::map<NodeId, Mark> mark;
    for (const auto& [n, _] : adj) mark[n] = Mark::fresh;

    struct Frame {
        NodeId node;
        std::size_t next;
    };
    for (const auto& [start, _] : adj) {
        if (mark[start] != Mark::fresh) continue;
        std::vector<Frame> stack{{start, 0}};
        mark[start] = Mark::open;
        while (!stack.empty()) {
            auto& top = stack.back();
            const auto& succ = adj[top.node];
            if (top.next == succ.size()) {
                mark[top.node] = Mark::done;
                stack.pop_back();
                continue;
            }
            const NodeId v = succ[top.next++];
            if (mark[v] == Mark::open) {
                std::vector<NodeId> cycle;
                auto it = std::ranges::find(stack, v, &Frame::node);
                for (; it != stack.end(); ++it) cycle.push_back(it->node);
                return cycle;
            }
            if (mark[v] == Mark::fresh) {
                mark[v] = Mark::open;
                stack.push_back({v, 0});
            }
        }
    }
    return std::nullopt;
}

std::vector<NodeId> roots(const CitationGraph& graph) {
    std::vector<NodeId> out;
    for (NodeId n : graph.nodes()) {
        if (graph.out_degree(n) == 0) out.push_back(n);
    }
    return out;
}

std::vector<std::vector<NodeId>> weak_components(const CitationGraph& graph) {
    std::vector<std::vector<NodeId>> components;
    std::unordered_map<NodeId, bool> seen;
    for (NodeId start : graph.nodes()) {
        if (seen[start]) continue;
        std::vector<NodeId> comp;
        std::queue<NodeId> todo;
        todo.push(start);
        seen[start] = true;
        while (!todo.empty()) {
            const NodeId n = todo.front();
            todo.pop();
            comp.push_back(n);
            for (auto nbrs : {graph.refs(n), graph.citers(n)}) {
                for (NodeId m : nbrs) {
                    if (!seen[m]) {
                        seen[m] = true;
                        todo.push(m);
                    }
                }
            }
        }
        std::ranges::sort(comp);
        components.push_back(std::move(comp));
    }
    return components;
}

}  // namespace citeforest
