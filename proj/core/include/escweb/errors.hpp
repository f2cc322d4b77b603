#pragma once

#include <stdexcept>
#include <string>

namespace escweb {

// Error taxonomy shared by all modules. Everything derives from std::runtime_error
// so callers can catch broadly; the distinct types matter for tests and exit codes.

struct OverflowError : std::runtime_error {
    explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidRadius : std::runtime_error {
    explicit InvalidRadius(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

struct RangeError : std::runtime_error {
    explicit RangeError(const std::string& what) : std::runtime_error(what) {}
};

struct SelectionFailure : std::runtime_error {
    explicit SelectionFailure(const std::string& what) : std::runtime_error(what) {}
};

struct SubdivisionCapExceeded : std::runtime_error {
    explicit SubdivisionCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct BorderComponentError : std::runtime_error {
    explicit BorderComponentError(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedMapError : std::runtime_error {
    explicit UnsupportedMapError(const std::string& what) : std::runtime_error(what) {}
};

}
