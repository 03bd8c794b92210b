#include "citeforest/query.hpp"

#include <algorithm>

namespace citeforest {

std::optional<PaperRecord> find_by_doi(std::span<const PaperRecord> corpus, std::string_view doi) {
    for (const auto& rec : corpus) {
        if (iequals(rec.doi, doi)) return rec;
    }
    return std::nullopt;
}

std::optional<SearchField> parse_search_field(std::string_view text) {
    if (text == "doi") return SearchField::doi;
    if (text == "title") return SearchField::title;
    if (text == "author") return SearchField::author;
    return std::nullopt;
}

std::vector<PaperRecord> search(std::span<const PaperRecord> corpus, SearchField field, std::string_view needle) {
    if (needle.empty()) throw Error("search needle must not be empty");
    const auto lowered = to_lower_ascii(needle);
    auto hit = [&](std::string_view hay) { return to_lower_ascii(hay).find(lowered) != std::string::npos; };

    std::vector<PaperRecord> out;
    for (const auto& rec : corpus) {
        bool match = false;
        switch (field) {
            case SearchField::doi: match = hit(rec.doi); break;
            case SearchField::title: match = hit(rec.title); break;
            case SearchField::author: match = std::ranges::any_of(rec.authors, hit); break;
        }
        if (match) out.push_back(rec);
    }
    std::ranges::sort(out, {}, [](const PaperRecord& r) { return std::pair(r.year, r.id); });
    return out;
}

std::vector<NodeId> main_path(const SimplifiedForest& forest, NodeId start) {
    if (!forest.contains(start)) throw UnknownNodeError(start);
    std::vector<NodeId> path{start};
    while (auto next = forest.main_ref(path.back())) {
        // A forest never revisits a node; the bound guards corrupted input.
        if (path.size() > forest.nodes().size()) throw CycleError(path);
        path.push_back(*next);
    }
    return path;
}

std::vector<NodeId> descendants(const SimplifiedForest& forest, NodeId root) {
    if (!forest.contains(root)) throw UnknownNodeError(root);
    std::vector<NodeId> out;
    std::vector<NodeId> todo{root};
    while (!todo.empty()) {
        const NodeId n = todo.back();
        todo.pop_back();
        out.push_back(n);
        for (NodeId c : forest.children(n)) todo.push_back(c);
    }
    std::ranges::sort(out);
    return out;
}

}  // namespace citeforest
