#ifndef CITEFOREST_STORE_HPP
#define CITEFOREST_STORE_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "citeforest/curation.hpp"
#include "citeforest/graph.hpp"

namespace citeforest {

enum class EventKind { submitted, reviewed, resolved };
std::string_view to_string(EventKind k);

/// One line of the curation log. Only the fields of the event's kind are used:
/// submitted carries the suggestions (and the paper record when it was new to
/// the corpus), reviewed carries reviewer/chosen, resolved carries final_ref.
struct CurationEvent {
    std::uint64_t sequence = 0;
    EventKind kind = EventKind::submitted;
    NodeId paper_id = 0;
    std::string timestamp;

    std::optional<PaperRecord> paper;
    std::vector<ReferenceSuggestion> suggestions;
    std::string reviewer;
    NodeId chosen = 0;
    std::optional<NodeId> final_ref;

    friend bool operator==(const CurationEvent&, const CurationEvent&) = default;
};

std::string serialize_event(const CurationEvent& e);
/// Throws StoreError on malformed input.
CurationEvent parse_event(std::string_view line);

/// Corpus plus curation cases, advanced one event at a time.
class CurationState {
public:
    CurationState() = default;
    explicit CurationState(std::vector<PaperRecord> records) : records_(std::move(records)) {}
    CurationState(std::vector<PaperRecord> records, std::map<NodeId, CurationCase> cases,
                  std::uint64_t last_sequence)
        : records_(std::move(records)), cases_(std::move(cases)), last_sequence_(last_sequence) {}

    /// Checks sequence and lifecycle order, then applies the event with the
    /// curation operations. Throws StoreError or CurationError; the state is
    /// unchanged on failure.
    void apply(const CurationEvent& e);

    const std::vector<PaperRecord>& records() const noexcept { return records_; }
    const std::map<NodeId, CurationCase>& cases() const noexcept { return cases_; }
    std::uint64_t last_sequence() const noexcept { return last_sequence_; }

    friend bool operator==(const CurationState&, const CurationState&) = default;

private:
    std::vector<PaperRecord> records_;
    std::map<NodeId, CurationCase> cases_;
    std::uint64_t last_sequence_ = 0;
};

/// Lifecycle gate shared by the log writer and replay: submitted first, then
/// any number of reviews, then resolved; sequence numbers strictly increase.
class LifecycleTracker {
public:
    /// Throws StoreError when `e` would break ordering.
    void check(const CurationEvent& e) const;
    void advance(const CurationEvent& e);

private:
    std::uint64_t last_sequence_ = 0;
    std::map<NodeId, EventKind> stage_;
};

struct LogContents {
    std::vector<CurationEvent> events;
    std::vector<std::string> warnings;
};

/// Reads a log file. A missing file is an empty log. A torn final line (no
/// trailing newline, not parseable) is dropped with a warning; any other bad
/// line is a StoreError naming file and line.
LogContents read_log(const std::filesystem::path& path);

/// Append-only writer. Each append is flushed and fsync'ed before returning.
class EventLog {
public:
    explicit EventLog(std::filesystem::path path);
    ~EventLog();
    EventLog(const EventLog&) = delete;
    EventLog& operator=(const EventLog&) = delete;

    /// Throws StoreError on sequence regression or lifecycle violations.
    void append(const CurationEvent& e);

    std::uint64_t last_sequence() const noexcept { return last_sequence_; }
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
    int fd_ = -1;
    LifecycleTracker tracker_;
    std::uint64_t last_sequence_ = 0;
};

void append_event(EventLog& log, const CurationEvent& e);

struct LoadedState {
    std::vector<PaperRecord> records;
    CitationGraph graph;
    std::map<NodeId, CurationCase> cases;
    std::uint64_t last_sequence = 0;
    std::vector<std::string> warnings;
};

/// Corpus file plus event replay. Parse and validation failures are reported
/// as StoreError with the file name and line.
LoadedState load_state(const std::filesystem::path& corpus_file, const std::filesystem::path& log_file);

std::string read_file(const std::filesystem::path& path);

/// Current UTC time as ISO-8601 (seconds precision, 'Z' suffix).
std::string utc_timestamp_now();

}  // namespace citeforest

#endif  // CITEFOREST_STORE_HPP
