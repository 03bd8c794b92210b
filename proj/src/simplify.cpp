#include "citeforest/simplify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <set>

namespace citeforest {

int SimplifiedForest::year(NodeId id) const {
    auto it = years_.find(id);
    if (it == years_.end()) throw UnknownNodeError(id);
    return it->second;
}

std::optional<NodeId> SimplifiedForest::main_ref(NodeId id) const {
    if (!contains(id)) throw UnknownNodeError(id);
    auto it = main_edge_.find(id);
    if (it == main_edge_.end()) return std::nullopt;
    return it->second;
}

std::vector<Edge> SimplifiedForest::edges() const {
    std::vector<Edge> out;
    out.reserve(main_edge_.size());
    for (const auto& [from, to] : main_edge_) out.push_back({from, to});
    return out;
}

std::vector<NodeId> SimplifiedForest::roots() const {
    std::vector<NodeId> out;
    for (NodeId n : nodes_) {
        if (!main_edge_.contains(n)) out.push_back(n);
    }
    return out;
}

std::vector<NodeId> SimplifiedForest::children(NodeId id) const {
    if (!contains(id)) throw UnknownNodeError(id);
    auto it = children_.find(id);
    return it == children_.end() ? std::vector<NodeId>{} : it->second;
}

SimplifiedForest simplify_graph(const CitationGraph& graph, const MainRefSelector& selector) {
    SimplifiedForest forest;
    forest.nodes_.assign(graph.nodes().begin(), graph.nodes().end());
    for (NodeId n : graph.nodes()) {
        forest.years_.emplace(n, graph.year(n));
        const auto refs = graph.refs(n);
        if (refs.empty()) continue;
        const NodeId chosen = selector(n);
        if (!std::ranges::binary_search(refs, chosen)) {
            throw SelectorError(n, "selector chose " + std::to_string(chosen) + ", which is not an in-corpus reference");
        }
        forest.main_edge_.emplace(n, chosen);
        forest.children_[chosen].push_back(n);
    }
    return forest;
}

NodeId select_main_random(const PaperRecord& paper, const CitationGraph& graph, std::uint64_t seed) {
    const auto refs = graph.refs(paper.id);
    if (refs.empty()) throw SelectorError(paper.id, "no in-corpus references to choose from");
    std::mt19937_64 gen(seed ^ static_cast<std::uint64_t>(paper.id));
    return refs[gen() % refs.size()];
}

std::vector<std::string> tfidf_tokens(const PaperRecord& doc) {
    std::string text = doc.title + ' ' + doc.abstract;
    for (const auto& kw : doc.keywords) text += ' ' + kw;

    std::vector<std::string> tokens;
    std::string cur;
    auto flush = [&] {
        if (cur.size() >= 2) tokens.push_back(cur);
        cur.clear();
    };
    for (char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        if (c >= 0x80 || std::isalnum(c)) {
            cur += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : ch;
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

TfidfIndex::TfidfIndex(std::span<const PaperRecord> corpus) : corpus_size_(corpus.size()) {
    for (const auto& rec : corpus) {
        by_id_.emplace(rec.id, &rec);
        auto toks = tfidf_tokens(rec);
        std::set<std::string> unique(toks.begin(), toks.end());
        for (const auto& t : unique) ++document_frequency_[t];
    }
}

TfidfIndex::Vector TfidfIndex::vectorize(const PaperRecord& doc) const {
    Vector v;
    for (const auto& t : tfidf_tokens(doc)) v[t] += 1.0;
    for (auto it = v.begin(); it != v.end();) {
        auto df = document_frequency_.find(it->first);
        // Terms unseen in the corpus carry no weight.
        if (df == document_frequency_.end()) {
            it = v.erase(it);
            continue;
        }
        it->second *= std::log(static_cast<double>(corpus_size_) / static_cast<double>(df->second));
        ++it;
    }
    return v;
}

double TfidfIndex::similarity(const PaperRecord& a, const PaperRecord& b) const {
    const auto va = vectorize(a);
    const auto vb = vectorize(b);
    double dot = 0, na = 0, nb = 0;
    for (const auto& [t, w] : va) {
        na += w * w;
        if (auto it = vb.find(t); it != vb.end()) dot += w * it->second;
    }
    for (const auto& [t, w] : vb) nb += w * w;
    if (na == 0 || nb == 0) return 0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

NodeId TfidfIndex::select(const PaperRecord& paper) const {
    std::set<NodeId> refs;
    for (NodeId r : paper.refs) {
        if (r != paper.id && by_id_.contains(r)) refs.insert(r);
    }
    if (refs.empty()) throw SelectorError(paper.id, "no in-corpus references to choose from");

    NodeId best = *refs.begin();
    double best_score = -1;
    for (NodeId r : refs) {
        const double s = similarity(paper, *by_id_.at(r));
        if (s > best_score) {
            best = r;
            best_score = s;
        }
    }
    return best;
}

NodeId select_main_tfidf(const PaperRecord& paper, std::span<const PaperRecord> corpus) {
    return TfidfIndex(corpus).select(paper);
}

}  // namespace citeforest
