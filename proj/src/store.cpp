#include "citeforest/store.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>

#include "citeforest/json_io.hpp"

namespace citeforest {

using json_io::Json;

std::string_view to_string(EventKind k) {
    switch (k) {
        case EventKind::submitted: return "submitted";
        case EventKind::reviewed: return "reviewed";
        case EventKind::resolved: return "resolved";
    }
    return "?";
}

namespace {

std::optional<EventKind> parse_kind(std::string_view s) {
    for (auto k : {EventKind::submitted, EventKind::reviewed, EventKind::resolved}) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

std::string sys_error(const std::string& what, const std::filesystem::path& path) {
    return what + " " + path.string() + ": " + std::strerror(errno);
}

}  // namespace

std::string serialize_event(const CurationEvent& e) {
    Json payload = Json::object();
    switch (e.kind) {
        case EventKind::submitted: {
            if (e.paper) payload["paper"] = json_io::record_json(*e.paper);
            Json s = Json::array();
            for (const auto& sug : e.suggestions) s.push_back(json_io::suggestion_json(sug));
            payload["suggestions"] = std::move(s);
            break;
        }
        case EventKind::reviewed:
            payload["reviewer"] = e.reviewer;
            payload["chosen"] = e.chosen;
            break;
        case EventKind::resolved:
            payload["final_ref"] = e.final_ref ? Json(*e.final_ref) : Json(nullptr);
            break;
    }
    Json j{{"seq", e.sequence},
           {"kind", std::string(to_string(e.kind))},
           {"paper_id", e.paper_id},
           {"timestamp", e.timestamp},
           {"payload", std::move(payload)}};
    return j.dump();
}

CurationEvent parse_event(std::string_view line) {
    try {
        const auto j = Json::parse(line);
        CurationEvent e;
        e.sequence = j.at("seq").get<std::uint64_t>();
        const auto kind = parse_kind(j.at("kind").get<std::string>());
        if (!kind) throw StoreError("unknown event kind");
        e.kind = *kind;
        e.paper_id = j.at("paper_id").get<NodeId>();
        e.timestamp = j.at("timestamp").get<std::string>();
        const auto& p = j.at("payload");
        switch (e.kind) {
            case EventKind::submitted:
                if (p.contains("paper")) e.paper = json_io::record_from_json(p.at("paper"));
                for (const auto& s : p.at("suggestions")) e.suggestions.push_back(json_io::suggestion_from_json(s));
                break;
            case EventKind::reviewed:
                e.reviewer = p.at("reviewer").get<std::string>();
                e.chosen = p.at("chosen").get<NodeId>();
                break;
            case EventKind::resolved:
                if (!p.at("final_ref").is_null()) e.final_ref = p.at("final_ref").get<NodeId>();
                break;
        }
        return e;
    } catch (const StoreError&) {
        throw;
    } catch (const std::exception& ex) {
        throw StoreError(std::string("malformed event: ") + ex.what());
    }
}

void LifecycleTracker::check(const CurationEvent& e) const {
    if (e.sequence <= last_sequence_) {
        throw StoreError("sequence " + std::to_string(e.sequence) + " does not follow " +
                         std::to_string(last_sequence_));
    }
    auto it = stage_.find(e.paper_id);
    const auto paper = " for paper " + std::to_string(e.paper_id);
    switch (e.kind) {
        case EventKind::submitted:
            if (it != stage_.end()) throw StoreError("duplicate submission" + paper);
            break;
        case EventKind::reviewed:
        case EventKind::resolved:
            if (it == stage_.end()) throw StoreError(std::string(to_string(e.kind)) + " before submitted" + paper);
            if (it->second == EventKind::resolved) {
                throw StoreError(std::string(to_string(e.kind)) + " after resolved" + paper);
            }
            break;
    }
}

void LifecycleTracker::advance(const CurationEvent& e) {
    check(e);
    last_sequence_ = e.sequence;
    stage_[e.paper_id] = e.kind;
}

void CurationState::apply(const CurationEvent& e) {
    if (e.sequence <= last_sequence_) {
        throw StoreError("sequence " + std::to_string(e.sequence) + " does not follow " +
                         std::to_string(last_sequence_));
    }
    auto existing = cases_.find(e.paper_id);
    switch (e.kind) {
        case EventKind::submitted: {
            if (existing != cases_.end()) {
                throw StoreError("duplicate submission for paper " + std::to_string(e.paper_id));
            }
            std::vector<PaperRecord> records = records_;
            if (e.paper) {
                if (e.paper->id != e.paper_id) throw StoreError("event paper id does not match its record");
                records.push_back(*e.paper);
                auto report = validate_corpus(records);
                if (!report.loadable()) throw ValidationError(std::move(report));
            }
            auto paper = std::ranges::find(records, e.paper_id, &PaperRecord::id);
            if (paper == records.end()) throw StoreError("submitted paper " + std::to_string(e.paper_id) + " is unknown");
            auto c = submit_suggestions(*paper, records, e.suggestions);
            records_ = std::move(records);
            cases_.emplace(e.paper_id, std::move(c));
            break;
        }
        case EventKind::reviewed:
        case EventKind::resolved: {
            if (existing == cases_.end()) {
                throw StoreError(std::string(to_string(e.kind)) + " before submitted for paper " +
                                 std::to_string(e.paper_id));
            }
            if (e.kind == EventKind::reviewed) {
                existing->second = record_review(existing->second, e.reviewer, e.chosen, e.timestamp);
            } else {
                auto resolved = resolve_case(existing->second);
                if (e.final_ref && resolved.final_ref != e.final_ref) {
                    throw StoreError("logged final_ref " + std::to_string(*e.final_ref) +
                                     " disagrees with recomputed " + std::to_string(*resolved.final_ref));
                }
                existing->second = std::move(resolved);
            }
            break;
        }
    }
    last_sequence_ = e.sequence;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StoreError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

struct NumberedEvents {
    LogContents contents;
    std::vector<std::size_t> lines;
};

NumberedEvents read_numbered(const std::filesystem::path& path) {
    NumberedEvents out;
    if (!std::filesystem::exists(path)) return out;
    const auto text = read_file(path);
    std::size_t pos = 0, line_no = 0;
    while (pos < text.size()) {
        ++line_no;
        auto nl = text.find('\n', pos);
        const bool terminated = nl != std::string::npos;
        if (!terminated) nl = text.size();
        std::string_view line(text.data() + pos, nl - pos);
        pos = nl + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
        try {
            out.contents.events.push_back(parse_event(line));
            out.lines.push_back(line_no);
        } catch (const StoreError& ex) {
            if (!terminated) {
                out.contents.warnings.push_back(path.string() + ":" + std::to_string(line_no) +
                                                ": discarded torn trailing record");
                break;
            }
            throw StoreError(path.string() + ":" + std::to_string(line_no) + ": " + ex.what());
        }
    }
    return out;
}

}  // namespace

LogContents read_log(const std::filesystem::path& path) { return read_numbered(path).contents; }

EventLog::EventLog(std::filesystem::path path) : path_(std::move(path)) {
    auto existing = read_numbered(path_);
    for (std::size_t i = 0; i < existing.contents.events.size(); ++i) {
        try {
            tracker_.advance(existing.contents.events[i]);
        } catch (const StoreError& ex) {
            throw StoreError(path_.string() + ":" + std::to_string(existing.lines[i]) + ": " + ex.what());
        }
        last_sequence_ = existing.contents.events[i].sequence;
    }

    fd_ = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (fd_ < 0) throw StoreError(sys_error("cannot open log", path_));

    // Cut a torn tail back to the last complete line so appends start clean.
    // An unterminated but complete final record is kept and terminated.
    struct stat st {};
    if (::fstat(fd_, &st) == 0 && st.st_size > 0) {
        const auto text = read_file(path_);
        if (text.back() != '\n' && existing.contents.warnings.empty()) {
            if (::write(fd_, "\n", 1) != 1) throw StoreError(sys_error("cannot terminate log", path_));
        } else if (text.back() != '\n') {
            const auto keep = text.find_last_of('\n');
            const off_t size = keep == std::string::npos ? 0 : static_cast<off_t>(keep + 1);
            if (::ftruncate(fd_, size) != 0) throw StoreError(sys_error("cannot truncate torn log", path_));
        }
    }
}

EventLog::~EventLog() {
    if (fd_ >= 0) ::close(fd_);
}

void EventLog::append(const CurationEvent& e) {
    tracker_.check(e);
    const auto line = serialize_event(e) + "\n";
    std::size_t written = 0;
    while (written < line.size()) {
        const auto n = ::write(fd_, line.data() + written, line.size() - written);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw StoreError(sys_error("write failed on", path_));
        }
        written += static_cast<std::size_t>(n);
    }
    if (::fsync(fd_) != 0) throw StoreError(sys_error("fsync failed on", path_));
    tracker_.advance(e);
    last_sequence_ = e.sequence;
}

void append_event(EventLog& log, const CurationEvent& e) { log.append(e); }

LoadedState load_state(const std::filesystem::path& corpus_file, const std::filesystem::path& log_file) {
    std::vector<PaperRecord> records;
    try {
        records = parse_csv(read_file(corpus_file));
    } catch (const ParseError& ex) {
        throw StoreError(corpus_file.string() + ":" + std::to_string(ex.line()) + ": " + ex.detail());
    }
    {
        auto report = validate_corpus(records);
        if (!report.loadable()) {
            throw StoreError(corpus_file.string() + ": " + ValidationError(std::move(report)).what());
        }
    }

    auto log = read_numbered(log_file);
    CurationState state(std::move(records));
    for (std::size_t i = 0; i < log.contents.events.size(); ++i) {
        try {
            state.apply(log.contents.events[i]);
        } catch (const Error& ex) {
            throw StoreError(log_file.string() + ":" + std::to_string(log.lines[i]) + ": " + ex.what());
        }
    }

    LoadedState out;
    out.records = state.records();
    try {
        out.graph = build_full_graph(out.records);
    } catch (const Error& ex) {
        throw StoreError(corpus_file.string() + ": " + ex.what());
    }
    out.cases = state.cases();
    out.last_sequence = state.last_sequence();
    out.warnings = std::move(log.contents.warnings);
    return out;
}

std::string utc_timestamp_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    ::gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace citeforest
