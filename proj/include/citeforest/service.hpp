#ifndef CITEFOREST_SERVICE_HPP
#define CITEFOREST_SERVICE_HPP

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "citeforest/pipeline.hpp"
#include "citeforest/store.hpp"

namespace httplib {
class Server;
}

namespace citeforest {

struct ServiceConfig {
    std::filesystem::path corpus_file;
    /// Curation log. Without one the service is read-only (mutations get 503).
    std::filesystem::path log_file;
    std::string base_path;
    std::string cors_origin = "*";
    SimplifyConfig simplify;  // forest behind main-path and /stats
    LevelConfig levels;
    std::function<std::string()> clock = utc_timestamp_now;
};

struct Response {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

using QueryParams = std::map<std::string, std::string>;

/// Immutable state served to readers.
struct Snapshot {
    std::vector<PaperRecord> records;
    CitationGraph graph;
    std::map<NodeId, CurationCase> cases;
    std::uint64_t last_sequence = 0;
    SimplifiedForest forest;
    LevelAssignment levels;
};

/// The HTTP surface, independent of the transport.
///
/// Reads work on the snapshot current when they start. Mutations are
/// serialized: each one is validated, durably logged, and only then published
/// as a new snapshot.
class Service {
public:
    /// Loads corpus and log through load_state.
    explicit Service(ServiceConfig config);
    Service(ServiceConfig config, LoadedState state);
    ~Service();

    std::shared_ptr<const Snapshot> snapshot() const;

    Response get_graph(const QueryParams& params) const;
    Response get_paper(std::string_view doi) const;
    Response get_paper_by_id(std::string_view id) const;
    Response get_main_path(std::string_view doi) const;
    Response search(const QueryParams& params) const;
    Response stats() const;

    Response submit(std::string_view body);
    Response review(std::string_view doi, std::string_view body, std::string_view reviewer_header = {});
    Response resolve(std::string_view doi);

    /// Registers every route (under base_path) plus CORS handling.
    void mount(httplib::Server& server);

private:
    std::shared_ptr<const Snapshot> make_snapshot(std::vector<PaperRecord> records, CitationGraph graph,
                                                  std::map<NodeId, CurationCase> cases,
                                                  std::uint64_t last_sequence) const;
    void publish(std::shared_ptr<const Snapshot> next);
    Response mutate(CurationEvent event, int success_status);

    ServiceConfig config_;
    mutable std::mutex snapshot_mu_;
    std::shared_ptr<const Snapshot> current_;
    std::mutex writer_mu_;
    std::unique_ptr<EventLog> log_;
};

}  // namespace citeforest

#endif  // CITEFOREST_SERVICE_HPP
