#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dualminer {

/// Malformed input text (XML, CSV rows, tree text). Carries a 1-based position when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& what, std::size_t line, std::size_t column) {
        if (line == 0) return what;
        return what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
    }

    std::size_t line_;
    std::size_t column_;
};

/// Well-formed input that violates the expected document structure.
class SchemaError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad reader configuration, e.g. a CSV column that does not exist.
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A search ran out of its state budget.
class ResourceError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A trace cannot be evaluated by a split predicate.
class PredicateError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dualminer
