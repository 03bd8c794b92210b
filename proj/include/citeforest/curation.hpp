#ifndef CITEFOREST_CURATION_HPP
#define CITEFOREST_CURATION_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citeforest/corpus.hpp"

namespace citeforest {

// Citation function of a reference. Only PBas, PModi and PUse mark a
// reference as one of the few that actually shaped the citing paper.
enum class CitationCategory { PBas, PModi, PUse, Neut, Weak };

std::string_view to_string(CitationCategory c);
std::optional<CitationCategory> parse_category(std::string_view text);
bool eligible_as_main(CitationCategory c);

struct ReferenceSuggestion {
    NodeId ref_id = 0;
    int rank = 1;
    CitationCategory category = CitationCategory::PBas;

    friend bool operator==(const ReferenceSuggestion&, const ReferenceSuggestion&) = default;
};

struct Review {
    std::string reviewer;
    NodeId chosen = 0;
    std::string timestamp;

    friend bool operator==(const Review&, const Review&) = default;
};

enum class CaseStatus { submitted, under_review, resolved };

std::string_view to_string(CaseStatus s);
std::optional<CaseStatus> parse_status(std::string_view text);

/// Lifecycle of choosing one paper's main reference.
///
/// `eligible_refs` is the paper's in-corpus reference list captured at
/// submission; reviews may choose any of them.
struct CurationCase {
    NodeId paper_id = 0;
    std::vector<NodeId> eligible_refs;
    std::vector<ReferenceSuggestion> suggestions;  // sorted by rank
    std::vector<Review> reviews;
    CaseStatus status = CaseStatus::submitted;
    std::optional<NodeId> final_ref;

    friend bool operator==(const CurationCase&, const CurationCase&) = default;
};

enum class CurationErrorCode {
    no_suggestions,
    too_many_suggestions,
    bad_ranks,
    duplicate_suggestion,
    not_a_reference,
    ineligible_category,
    all_self_cited,
    unknown_paper,
    case_resolved,
};

std::string_view to_string(CurationErrorCode code);

class CurationError : public Error {
public:
    CurationError(CurationErrorCode code, const std::string& message);
    CurationErrorCode code() const noexcept { return code_; }
    /// Lifecycle violations (as opposed to invalid input).
    bool is_lifecycle() const noexcept { return code_ == CurationErrorCode::case_resolved; }

private:
    CurationErrorCode code_;
};

inline constexpr std::size_t kMaxSuggestions = 3;

/// Opens a case for `paper` (which must be in `corpus`).
///
/// Suggestion ranks must be exactly 1..n. Every suggestion has to be an
/// in-corpus reference of the paper with an eligible category, and at least
/// one suggested reference must have no author in common with the paper.
CurationCase submit_suggestions(const PaperRecord& paper, std::span<const PaperRecord> corpus,
                                std::vector<ReferenceSuggestion> suggestions);

/// Records (or replaces) `reviewer`'s choice. The choice may be any eligible
/// reference, suggested or not.
CurationCase record_review(CurationCase c, std::string reviewer, NodeId chosen, std::string timestamp = {});

/// Plurality vote over the reviews. A tie goes to the candidate the author
/// ranked best; suggested candidates beat unsuggested ones and unsuggested
/// ties go to the smaller id. No reviews means the rank-1 suggestion.
CurationCase resolve_case(CurationCase c);

/// The id resolve_case would pick, without changing the case.
NodeId plurality_winner(const CurationCase& c);

}  // namespace citeforest

#endif  // CITEFOREST_CURATION_HPP
