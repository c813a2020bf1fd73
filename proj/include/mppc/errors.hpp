#pragma once

#include <stdexcept>
#include <string>

namespace mppc {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input document (bad JSON, missing field, wrong type).
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

// Structurally well-formed input that breaks a model invariant.
struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error(what) {}
};

// Explicit matrix that is not a metric (asymmetry, triangle violation).
struct MetricError : Error {
    explicit MetricError(const std::string& what) : Error(what) {}
};

// Directions cache that leaves a pair unreachable.
struct IncompleteCacheError : Error {
    explicit IncompleteCacheError(const std::string& what) : Error(what) {}
};

// Input exceeds a guarded exact-solver size.
struct SizeLimitError : Error {
    explicit SizeLimitError(const std::string& what) : Error(what) {}
};

// Out-of-range algorithm parameter.
struct ParameterError : Error {
    explicit ParameterError(const std::string& what) : Error(what) {}
};

} // namespace mppc
