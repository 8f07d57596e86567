#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace jw {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The instance has no constraints (or is otherwise unusable by an operation).
class DegenerateInstance : public Error {
public:
    using Error::Error;
};

/// A named budget or subset-count limit was exceeded. Oracles and DP engines
/// raise this instead of returning partial answers.
class LimitExceeded : public Error {
public:
    LimitExceeded(std::string limit, std::size_t requested, std::size_t allowed)
        : Error(limit + " exceeded: requested " + std::to_string(requested) + ", limit " +
                std::to_string(allowed)),
          limit_(std::move(limit)) {}

    const std::string& limit() const noexcept { return limit_; }

private:
    std::string limit_;
};

/// A node relation grew beyond the configured width cap during evaluation.
class WidthExceeded : public Error {
public:
    WidthExceeded(std::size_t node, std::size_t tuples)
        : Error("width exceeded at node " + std::to_string(node) + " (" + std::to_string(tuples) +
                " tuples)"),
          node_(node) {}

    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

class InvalidDecomposition : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace jw
