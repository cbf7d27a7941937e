#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace daereach {

/// Failure classes raised by the pipeline. The CLI maps each one to an exit code.
enum class ErrorKind {
    invalid_argument,
    parse,
    dimension_mismatch,
    singular_matrix,
    nonsingular_e,
    index_too_high,
    irregular_pencil,
    inconsistent_init,
    empty_predicate,
    unbounded_predicate,
    numerical_failure,
};

/// Machine-readable name, e.g. "index-too-high".
std::string_view error_class_name(ErrorKind kind);

class DaeError : public std::runtime_error {
public:
    DaeError(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public DaeError {
public:
    ParseError(std::string source, std::string field, int line, const std::string& message);

    const std::string& source() const noexcept { return source_; }
    const std::string& field() const noexcept { return field_; }
    /// 1-based line of a syntax error, 0 when the failure is structural.
    int line() const noexcept { return line_; }

private:
    std::string source_;
    std::string field_;
    int line_;
};

}  // namespace daereach
