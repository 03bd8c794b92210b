#ifndef CITEFOREST_JSON_IO_HPP
#define CITEFOREST_JSON_IO_HPP

// JSON encodings shared by the view export, the curation log and the HTTP service.

#include <json.hpp>

#include "citeforest/curation.hpp"
#include "citeforest/visual.hpp"

namespace citeforest::json_io {

using Json = nlohmann::ordered_json;

/// Paper metadata as shown in the info panel. Authors are joined with ';'
/// and keywords with ','.
Json paper_json(const PaperRecord& rec);

/// Full record encoding used by the event log (lists kept as arrays).
Json record_json(const PaperRecord& rec);
PaperRecord record_from_json(const Json& j);

Json suggestion_json(const ReferenceSuggestion& s);
ReferenceSuggestion suggestion_from_json(const Json& j);

Json case_json(const CurationCase& c);

Json view_document(const GraphView& view, const LevelAssignment& levels);

}  // namespace citeforest::json_io

#endif  // CITEFOREST_JSON_IO_HPP
