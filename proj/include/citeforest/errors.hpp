#ifndef CITEFOREST_ERRORS_HPP
#define CITEFOREST_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace citeforest {

using NodeId = std::int64_t;

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed corpus text. `line` is the physical line the offending record starts on.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line), detail_(message) {}
    std::size_t line() const noexcept { return line_; }
    /// The message without the line prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::string detail_;
};

class UnknownNodeError : public Error {
public:
    explicit UnknownNodeError(NodeId id)
        : Error("unknown node id " + std::to_string(id)), id_(id) {}
    NodeId id() const noexcept { return id_; }

private:
    NodeId id_;
};

class CycleError : public Error {
public:
    explicit CycleError(std::vector<NodeId> cycle);
    const std::vector<NodeId>& cycle() const noexcept { return cycle_; }

private:
    std::vector<NodeId> cycle_;
};

/// A selector returned something that is not an in-corpus reference of `node`.
class SelectorError : public Error {
public:
    SelectorError(NodeId node, const std::string& message)
        : Error("node " + std::to_string(node) + ": " + message), node_(node) {}
    NodeId node() const noexcept { return node_; }

private:
    NodeId node_;
};

class LayeringError : public Error {
public:
    using Error::Error;
};

class StoreError : public Error {
public:
    using Error::Error;
};

}  // namespace citeforest

#endif  // CITEFOREST_ERRORS_HPP
