#pragma once

#include <stdexcept>
#include <string>

namespace rrw {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error("parse error: " + msg) {}
};

struct UnsupportedError : std::runtime_error {
    explicit UnsupportedError(const std::string& msg) : std::runtime_error("unsupported: " + msg) {}
};

struct CycleError : std::runtime_error {
    explicit CycleError(const std::string& msg) : std::runtime_error("cycle: " + msg) {}
};

struct ConeTooLarge : std::runtime_error {
    explicit ConeTooLarge(const std::string& msg) : std::runtime_error("cone too large: " + msg) {}
};

struct UnsupportedArity : std::runtime_error {
    explicit UnsupportedArity(const std::string& msg) : std::runtime_error("unsupported arity: " + msg) {}
};

struct InterfaceMismatch : std::runtime_error {
    explicit InterfaceMismatch(const std::string& msg) : std::runtime_error("interface mismatch: " + msg) {}
};

struct EmptyTable : std::runtime_error {
    explicit EmptyTable(const std::string& msg) : std::runtime_error("empty table: " + msg) {}
};

struct DegenerateDataset : std::runtime_error {
    explicit DegenerateDataset(const std::string& msg) : std::runtime_error("degenerate dataset: " + msg) {}
};

}  // namespace rrw
