#include "citeforest/curation.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

namespace citeforest {

namespace {

constexpr std::array<std::string_view, 5> kCategoryNames = {"PBas", "PModi", "PUse", "Neut", "Weak"};
constexpr std::array<std::string_view, 3> kStatusNames = {"submitted", "under_review", "resolved"};

bool shares_author(const PaperRecord& a, const PaperRecord& b) {
    for (const auto& x : a.authors) {
        for (const auto& y : b.authors) {
            if (iequals(x, y)) return true;
        }
    }
    return false;
}

}  // namespace

std::string_view to_string(CitationCategory c) { return kCategoryNames[static_cast<std::size_t>(c)]; }

std::optional<CitationCategory> parse_category(std::string_view text) {
    for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
        if (iequals(text, kCategoryNames[i])) return static_cast<CitationCategory>(i);
    }
    return std::nullopt;
}

bool eligible_as_main(CitationCategory c) {
    return c == CitationCategory::PBas || c == CitationCategory::PModi || c == CitationCategory::PUse;
}

std::string_view to_string(CaseStatus s) { return kStatusNames[static_cast<std::size_t>(s)]; }

std::optional<CaseStatus> parse_status(std::string_view text) {
    for (std::size_t i = 0; i < kStatusNames.size(); ++i) {
        if (text == kStatusNames[i]) return static_cast<CaseStatus>(i);
    }
    return std::nullopt;
}

std::string_view to_string(CurationErrorCode code) {
    switch (code) {
        case CurationErrorCode::no_suggestions: return "NO_SUGGESTIONS";
        case CurationErrorCode::too_many_suggestions: return "TOO_MANY_SUGGESTIONS";
        case CurationErrorCode::bad_ranks: return "BAD_RANKS";
        case CurationErrorCode::duplicate_suggestion: return "DUPLICATE_SUGGESTION";
        case CurationErrorCode::not_a_reference: return "NOT_A_REFERENCE";
        case CurationErrorCode::ineligible_category: return "INELIGIBLE_CATEGORY";
        case CurationErrorCode::all_self_cited: return "ALL_SELF_CITED";
        case CurationErrorCode::unknown_paper: return "UNKNOWN_PAPER";
        case CurationErrorCode::case_resolved: return "CASE_RESOLVED";
    }
    return "UNKNOWN";
}

CurationError::CurationError(CurationErrorCode code, const std::string& message)
    : Error(std::string(to_string(code)) + ": " + message), code_(code) {}

CurationCase submit_suggestions(const PaperRecord& paper, std::span<const PaperRecord> corpus,
                                std::vector<ReferenceSuggestion> suggestions) {
    using enum CurationErrorCode;
    std::unordered_map<NodeId, const PaperRecord*> by_id;
    for (const auto& rec : corpus) by_id.emplace(rec.id, &rec);
    if (!by_id.contains(paper.id)) {
        throw CurationError(unknown_paper, "paper " + std::to_string(paper.id) + " is not in the corpus");
    }

    if (suggestions.empty()) throw CurationError(no_suggestions, "at least one suggestion is required");
    if (suggestions.size() > kMaxSuggestions) {
        throw CurationError(too_many_suggestions, "at most 3 suggestions allowed, got " +
                                                      std::to_string(suggestions.size()));
    }

    std::ranges::stable_sort(suggestions, {}, &ReferenceSuggestion::rank);
    for (std::size_t i = 0; i < suggestions.size(); ++i) {
        if (suggestions[i].rank != static_cast<int>(i) + 1) {
            throw CurationError(bad_ranks, "suggestion ranks must be 1.." + std::to_string(suggestions.size()));
        }
    }

    CurationCase c;
    c.paper_id = paper.id;
    for (NodeId r : paper.refs) {
        if (r != paper.id && by_id.contains(r)) c.eligible_refs.push_back(r);
    }
    std::ranges::sort(c.eligible_refs);
    c.eligible_refs.erase(std::unique(c.eligible_refs.begin(), c.eligible_refs.end()), c.eligible_refs.end());

    std::set<NodeId> seen;
    bool any_independent = false;
    for (const auto& s : suggestions) {
        if (!seen.insert(s.ref_id).second) {
            throw CurationError(duplicate_suggestion, "reference " + std::to_string(s.ref_id) + " suggested twice");
        }
        if (!std::ranges::binary_search(c.eligible_refs, s.ref_id)) {
            throw CurationError(not_a_reference,
                                std::to_string(s.ref_id) + " is not an in-corpus reference of paper " +
                                    std::to_string(paper.id));
        }
        if (!eligible_as_main(s.category)) {
            throw CurationError(ineligible_category, std::string(to_string(s.category)) +
                                                         " references cannot be main references");
        }
        if (!shares_author(paper, *by_id.at(s.ref_id))) any_independent = true;
    }
    if (!any_independent) {
        throw CurationError(all_self_cited, "every suggested reference shares an author with the paper");
    }

    c.suggestions = std::move(suggestions);
    return c;
}

CurationCase record_review(CurationCase c, std::string reviewer, NodeId chosen, std::string timestamp) {
    using enum CurationErrorCode;
    if (c.status == CaseStatus::resolved) {
        throw CurationError(case_resolved, "case for paper " + std::to_string(c.paper_id) + " is already resolved");
    }
    if (!std::ranges::binary_search(c.eligible_refs, chosen)) {
        throw CurationError(not_a_reference,
                            std::to_string(chosen) + " is not a reference of paper " + std::to_string(c.paper_id));
    }
    auto it = std::ranges::find(c.reviews, reviewer, &Review::reviewer);
    if (it != c.reviews.end()) {
        it->chosen = chosen;
        it->timestamp = std::move(timestamp);
    } else {
        c.reviews.push_back({std::move(reviewer), chosen, std::move(timestamp)});
    }
    c.status = CaseStatus::under_review;
    return c;
}

NodeId plurality_winner(const CurationCase& c) {
    if (c.reviews.empty()) {
        if (c.suggestions.empty()) throw CurationError(CurationErrorCode::no_suggestions, "case has no suggestions");
        return c.suggestions.front().ref_id;
    }
    std::map<NodeId, std::size_t> votes;
    for (const auto& r : c.reviews) ++votes[r.chosen];

    auto rank_of = [&](NodeId id) {
        auto it = std::ranges::find(c.suggestions, id, &ReferenceSuggestion::ref_id);
        return it == c.suggestions.end() ? std::numeric_limits<int>::max() : it->rank;
    };
    // Best = most votes, then best author rank, then smallest id.
    auto key = [&](const auto& entry) {
        return std::tuple(-static_cast<long long>(entry.second), rank_of(entry.first), entry.first);
    };
    auto best = std::ranges::min_element(votes, {}, key);
    return best->first;
}

CurationCase resolve_case(CurationCase c) {
    if (c.status == CaseStatus::resolved) {
        throw CurationError(CurationErrorCode::case_resolved,
                            "case for paper " + std::to_string(c.paper_id) + " is already resolved");
    }
    c.final_ref = plurality_winner(c);
    c.status = CaseStatus::resolved;
    return c;
}

}  // namespace citeforest
