#ifndef CITEFOREST_CORPUS_HPP
#define CITEFOREST_CORPUS_HPP

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citeforest/errors.hpp"

namespace citeforest {

/// One scientific document of the corpus.
///
/// `refs` lists corpus-local ids of cited documents. Ids absent from the
/// corpus are allowed (they are reported as dangling and ignored when the
/// citation graph is built).
struct PaperRecord {
    NodeId id = 0;
    std::string doi;
    std::string title;
    std::vector<std::string> authors;
    int year = 0;
    std::string abstract;
    std::vector<std::string> keywords;
    std::string url;
    std::vector<NodeId> refs;

    friend bool operator==(const PaperRecord&, const PaperRecord&) = default;
};

/// Column names of the corpus table, in order.
inline constexpr std::string_view kCorpusHeader = "id,title,DOI,authors,year,abstract,keywords,url,ref";

inline constexpr char kAuthorSeparator = ';';
inline constexpr char kKeywordSeparator = ',';
inline constexpr char kRefSeparator = ';';

/// Parses a corpus table. The first row must be exactly the corpus header.
/// Throws ParseError on a wrong column count, a non-integer id/year/ref, a
/// non-positive id or a duplicate id.
std::vector<PaperRecord> parse_csv(std::string_view raw_text, char delimiter = ',');

/// Writes records back in the corpus table format. parse_csv(serialize_csv(r)) == r
/// for any record list produced by parse_csv.
std::string serialize_csv(std::span<const PaperRecord> records, char delimiter = ',');

struct Diagnostic {
    NodeId record_id = 0;
    std::string code;
    std::string message;
    /// The other record involved (the cited id for reference problems).
    std::optional<NodeId> related;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct ValidationReport {
    std::vector<Diagnostic> errors;
    std::vector<Diagnostic> warnings;

    bool loadable() const noexcept { return errors.empty(); }
    friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

// Diagnostic codes.
namespace codes {
inline constexpr std::string_view kDuplicateId = "DUP_ID";
inline constexpr std::string_view kDuplicateDoi = "DUP_DOI";
inline constexpr std::string_view kMissingDoi = "MISSING_DOI";
inline constexpr std::string_view kMissingTitle = "MISSING_TITLE";
inline constexpr std::string_view kNoAuthors = "NO_AUTHORS";
inline constexpr std::string_view kDuplicateRef = "DUP_REF";
inline constexpr std::string_view kSelfRef = "SELF_REF";
inline constexpr std::string_view kTimeOrder = "TIME_ORDER";
inline constexpr std::string_view kDangling = "DANGLING";
inline constexpr std::string_view kSameYear = "SAME_YEAR";
}  // namespace codes

/// Checks the corpus invariants. Errors make the corpus unloadable;
/// dangling and same-year references are only warnings.
ValidationReport validate_corpus(std::span<const PaperRecord> records);

class ValidationError : public Error {
public:
    explicit ValidationError(ValidationReport report);
    const ValidationReport& report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

// Small text helpers shared by the corpus consumers.
std::string to_lower_ascii(std::string_view text);
bool iequals(std::string_view a, std::string_view b);
std::string join(std::span<const std::string> items, char separator);

}  // namespace citeforest

#endif  // CITEFOREST_CORPUS_HPP
