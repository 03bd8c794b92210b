#ifndef CITEFOREST_QUERY_HPP
#define CITEFOREST_QUERY_HPP

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "citeforest/simplify.hpp"

namespace citeforest {

/// Case-insensitive exact DOI match.
std::optional<PaperRecord> find_by_doi(std::span<const PaperRecord> corpus, std::string_view doi);

enum class SearchField { doi, title, author };
std::optional<SearchField> parse_search_field(std::string_view text);

/// Case-insensitive substring search on one field (author matches any author).
/// Results are ordered by (year, id). Throws Error on an empty needle.
std::vector<PaperRecord> search(std::span<const PaperRecord> corpus, SearchField field, std::string_view needle);

/// `start` followed by its main reference, that one's main reference, and so
/// on down to a root.
std::vector<NodeId> main_path(const SimplifiedForest& forest, NodeId start);

/// Every node whose main path passes through `root`, including `root`; ascending.
std::vector<NodeId> descendants(const SimplifiedForest& forest, NodeId root);

}  // namespace citeforest

#endif  // CITEFOREST_QUERY_HPP
