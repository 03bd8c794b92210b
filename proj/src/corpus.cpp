#include "citeforest/corpus.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <unordered_map>
#include <unordered_set>

namespace citeforest {

CycleError::CycleError(std::vector<NodeId> cycle)
    : Error([&] {
          std::string msg = "citation cycle:";
          for (NodeId id : cycle) msg += " " + std::to_string(id);
          return msg;
      }()),
      cycle_(std::move(cycle)) {}

ValidationError::ValidationError(ValidationReport report)
    : Error([&] {
          std::string msg = "corpus has " + std::to_string(report.errors.size()) + " validation error(s)";
          if (!report.errors.empty()) {
              const auto& first = report.errors.front();
              msg += "; first: record " + std::to_string(first.record_id) + " " + first.code + ": " +
                     first.message;
          }
          return msg;
      }()),
      report_(std::move(report)) {}

std::string to_lower_ascii(std::string_view text) {
    std::string out(text);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && to_lower_ascii(a) == to_lower_ascii(b);
}

std::string join(std::span<const std::string> items, char separator) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += separator;
        out += items[i];
    }
    return out;
}

namespace {

constexpr std::array<std::string_view, 9> kColumns = {
    "id", "title", "DOI", "authors", "year", "abstract", "keywords", "url", "ref"};

std::string_view trim(std::string_view s) {
    constexpr std::string_view ws = " \t\r\n\f\v";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

struct Row {
    std::size_t line = 0;
    std::vector<std::string> cells;
};

// RFC 4180 tokenizer. Quoted fields may span lines; `line` is where the row starts.
std::vector<Row> tokenize(std::string_view text, char delim) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

    std::vector<Row> rows;
    Row row;
    std::string cell;
    bool in_quotes = false;
    bool row_has_content = false;
    std::size_t line = 1;
    row.line = line;

    auto end_row = [&] {
        row.cells.push_back(std::move(cell));
        cell.clear();
        if (row_has_content || row.cells.size() > 1) rows.push_back(std::move(row));
        row = Row{};
        row_has_content = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                cell += c;
            }
            continue;
        }
        if (c == '"') {
            in_quotes = true;
            row_has_content = true;
        } else if (c == delim) {
            row.cells.push_back(std::move(cell));
            cell.clear();
        } else if (c == '\n') {
            end_row();
            ++line;
            row.line = line;
        } else if (c == '\r') {
            // swallowed; \r\n and bare \n both end a row
        } else {
            if (c != ' ' && c != '\t') row_has_content = true;
            cell += c;
        }
    }
    if (in_quotes) throw ParseError(row.line, "unterminated quoted field");
    end_row();
    return rows;
}

template <typename Int>
Int parse_int(std::string_view cell, std::size_t line, std::string_view what) {
    Int value{};
    const auto* first = cell.data();
    const auto* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (cell.empty() || ec != std::errc{} || ptr != last) {
        throw ParseError(line, "non-integer " + std::string(what) + " '" + std::string(cell) + "'");
    }
    return value;
}

std::vector<std::string> split_list(std::string_view cell, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= cell.size()) {
        auto pos = cell.find(sep, start);
        if (pos == std::string_view::npos) pos = cell.size();
        auto item = trim(cell.substr(start, pos - start));
        if (!item.empty()) out.emplace_back(item);
        start = pos + 1;
    }
    return out;
}

bool needs_quotes(std::string_view s, char delim) {
    if (s.empty()) return false;
    if (s.find_first_of(std::string{delim, '"', '\n', '\r'}) != std::string_view::npos) return true;
    return trim(s).size() != s.size();
}

void write_cell(std::string& out, std::string_view s, char delim) {
    if (!needs_quotes(s, delim)) {
        out += s;
        return;
    }
    out += '"';
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

}  // namespace

std::vector<PaperRecord> parse_csv(std::string_view raw_text, char delimiter) {
    auto rows = tokenize(raw_text, delimiter);
    if (rows.empty()) throw ParseError(1, "missing header row");

    const auto& header = rows.front();
    bool header_ok = header.cells.size() == kColumns.size();
    for (std::size_t i = 0; header_ok && i < kColumns.size(); ++i) {
        header_ok = trim(header.cells[i]) == kColumns[i];
    }
    if (!header_ok) throw ParseError(header.line, "header must be exactly: " + std::string(kCorpusHeader));

    std::vector<PaperRecord> records;
    records.reserve(rows.size() - 1);
    std::unordered_set<NodeId> seen;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.cells.size() != kColumns.size()) {
            throw ParseError(row.line, "expected " + std::to_string(kColumns.size()) + " columns, got " +
                                           std::to_string(row.cells.size()));
        }
        auto cell = [&](std::size_t i) { return trim(row.cells[i]); };

        PaperRecord rec;
        rec.id = parse_int<NodeId>(cell(0), row.line, "id");
        if (rec.id <= 0) throw ParseError(row.line, "id must be positive, got " + std::to_string(rec.id));
        if (!seen.insert(rec.id).second) throw ParseError(row.line, "duplicate id " + std::to_string(rec.id));
        rec.title = cell(1);
        rec.doi = cell(2);
        rec.authors = split_list(cell(3), kAuthorSeparator);
        rec.year = parse_int<int>(cell(4), row.line, "year");
        rec.abstract = cell(5);
        rec.keywords = split_list(cell(6), kKeywordSeparator);
        rec.url = cell(7);
        for (const auto& ref : split_list(cell(8), kRefSeparator)) {
            rec.refs.push_back(parse_int<NodeId>(ref, row.line, "ref"));
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::string serialize_csv(std::span<const PaperRecord> records, char delimiter) {
    std::string out;
    for (std::size_t i = 0; i < kColumns.size(); ++i) {
        if (i) out += delimiter;
        out += kColumns[i];
    }
    out += '\n';
    for (const auto& rec : records) {
        std::string refs;
        for (std::size_t i = 0; i < rec.refs.size(); ++i) {
            if (i) refs += kRefSeparator;
            refs += std::to_string(rec.refs[i]);
        }
        const std::array<std::string, 9> cells = {std::to_string(rec.id),
                                                  rec.title,
                                                  rec.doi,
                                                  join(rec.authors, kAuthorSeparator),
                                                  std::to_string(rec.year),
                                                  rec.abstract,
                                                  join(rec.keywords, kKeywordSeparator),
                                                  rec.url,
                                                  refs};
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += delimiter;
            write_cell(out, cells[i], delimiter);
        }
        out += '\n';
    }
    return out;
}

ValidationReport validate_corpus(std::span<const PaperRecord> records) {
    ValidationReport report;
    auto error = [&](NodeId id, std::string_view code, std::string msg, std::optional<NodeId> related = {}) {
        report.errors.push_back({id, std::string(code), std::move(msg), related});
    };
    auto warn = [&](NodeId id, std::string_view code, std::string msg, std::optional<NodeId> related = {}) {
        report.warnings.push_back({id, std::string(code), std::move(msg), related});
    };

    std::unordered_map<NodeId, const PaperRecord*> by_id;
    std::unordered_map<std::string, NodeId> by_doi;
    for (const auto& rec : records) {
        if (!by_id.emplace(rec.id, &rec).second) {
            error(rec.id, codes::kDuplicateId, "id appears more than once");
        }
        if (rec.doi.empty()) {
            error(rec.id, codes::kMissingDoi, "empty DOI");
        } else if (auto [it, fresh] = by_doi.emplace(to_lower_ascii(rec.doi), rec.id); !fresh) {
            error(rec.id, codes::kDuplicateDoi, "DOI " + rec.doi + " already used by record " + std::to_string(it->second),
                  it->second);
        }
        if (rec.title.empty()) error(rec.id, codes::kMissingTitle, "empty title");
        if (rec.authors.empty()) error(rec.id, codes::kNoAuthors, "no authors");
    }

    for (const auto& rec : records) {
        std::unordered_set<NodeId> seen_refs;
        for (NodeId ref : rec.refs) {
            if (!seen_refs.insert(ref).second) {
                error(rec.id, codes::kDuplicateRef, "reference " + std::to_string(ref) + " listed twice", ref);
                continue;
            }
            if (ref == rec.id) {
                error(rec.id, codes::kSelfRef, "record cites itself", ref);
                continue;
            }
            auto it = by_id.find(ref);
            if (it == by_id.end()) {
                warn(rec.id, codes::kDangling, "cites " + std::to_string(ref) + " which is not in the corpus", ref);
                continue;
            }
            const int cited_year = it->second->year;
            if (cited_year > rec.year) {
                error(rec.id, codes::kTimeOrder,
                      "published " + std::to_string(rec.year) + " but cites " + std::to_string(ref) +
                          " published " + std::to_string(cited_year),
                      ref);
            } else if (cited_year == rec.year) {
                warn(rec.id, codes::kSameYear, "cites " + std::to_string(ref) + " from the same year", ref);
            }
        }
    }
    return report;
}

}  // namespace citeforest
