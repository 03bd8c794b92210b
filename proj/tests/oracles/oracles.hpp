#ifndef CITEFOREST_TEST_ORACLES_HPP
#define CITEFOREST_TEST_ORACLES_HPP

// Reference implementations kept deliberately naive and independent of the
// library code paths they check.

#include <cctype>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "citeforest/curation.hpp"

namespace citeforest::oracle {

// Explicit passes over the candidates rather than a sort key.
inline NodeId plurality_winner(const CurationCase& c) {
    if (c.reviews.empty()) {
        for (const auto& s : c.suggestions)
            if (s.rank == 1) return s.ref_id;
    }
    std::map<NodeId, int> votes;
    for (const auto& r : c.reviews) votes[r.chosen]++;
    int top = 0;
    for (const auto& [_, v] : votes) top = std::max(top, v);
    std::vector<NodeId> tied;
    for (const auto& [id, v] : votes)
        if (v == top) tied.push_back(id);
    for (int rank = 1; rank <= 3; ++rank) {
        for (NodeId id : tied) {
            for (const auto& s : c.suggestions)
                if (s.ref_id == id && s.rank == rank) return id;
        }
    }
    return tied.front();  // nothing suggested among the tied: smallest id
}

// Dense term-document matrix over title, abstract and keywords.
class BruteTfidf {
public:
    explicit BruteTfidf(const std::vector<PaperRecord>& docs) {
        for (const auto& d : docs) {
            auto words = split(d);
            for (const auto& w : words)
                if (!index_.contains(w)) index_.emplace(w, index_.size());
        }
        df_.assign(index_.size(), 0);
        for (const auto& d : docs) {
            std::vector<bool> seen(index_.size(), false);
            for (const auto& w : split(d)) seen[index_.at(w)] = true;
            for (std::size_t i = 0; i < seen.size(); ++i) df_[i] += seen[i];
        }
        n_docs_ = docs.size();
    }

    double cosine(const PaperRecord& a, const PaperRecord& b) const {
        auto va = vec(a), vb = vec(b);
        double dot = 0, na = 0, nb = 0;
        for (std::size_t i = 0; i < va.size(); ++i) {
            dot += va[i] * vb[i];
            na += va[i] * va[i];
            nb += vb[i] * vb[i];
        }
        if (na == 0 || nb == 0) return 0;
        return dot / std::sqrt(na * nb);
    }

private:
    static std::vector<std::string> split(const PaperRecord& d) {
        std::string text = d.title + " " + d.abstract;
        for (const auto& k : d.keywords) text += " " + k;
        std::vector<std::string> out;
        std::string w;
        for (std::size_t i = 0; i <= text.size(); ++i) {
            const unsigned char c = i < text.size() ? static_cast<unsigned char>(text[i]) : ' ';
            if (std::isalnum(c) || c >= 0x80) {
                w += static_cast<char>(std::tolower(c));
            } else {
                if (w.size() > 1) out.push_back(w);
                w.clear();
            }
        }
        return out;
    }

    std::vector<double> vec(const PaperRecord& d) const {
        std::vector<double> v(index_.size(), 0.0);
        for (const auto& w : split(d)) {
            auto it = index_.find(w);
            if (it != index_.end()) v[it->second] += 1;
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] *= std::log(static_cast<double>(n_docs_) / df_[i]);
        }
        return v;
    }

    std::map<std::string, std::size_t> index_;
    std::vector<double> df_;
    std::size_t n_docs_ = 0;
};

}  // namespace citeforest::oracle

#endif  // CITEFOREST_TEST_ORACLES_HPP
