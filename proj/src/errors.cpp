#include "daereach/errors.hpp"

namespace daereach {

std::string_view error_class_name(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::parse: return "parse";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::singular_matrix: return "singular-matrix";
    case ErrorKind::nonsingular_e: return "nonsingular-e";
    case ErrorKind::index_too_high: return "index-too-high";
    case ErrorKind::irregular_pencil: return "irregular";
    case ErrorKind::inconsistent_init: return "inconsistent-init";
    case ErrorKind::empty_predicate: return "empty-predicate";
    case ErrorKind::unbounded_predicate: return "unbounded-predicate";
    case ErrorKind::numerical_failure: return "numerical-failure";
    }
    return "unknown";
}

namespace {

std::string describe(const std::string& source, const std::string& field, int line,
                     const std::string& message)
{
    std::string out = source;
    if (line > 0) out += ":" + std::to_string(line);
    if (!field.empty()) out += ": field '" + field + "'";
    out += ": " + message;
    return out;
}

}  // namespace

ParseError::ParseError(std::string source, std::string field, int line, const std::string& message)
    : DaeError(ErrorKind::parse, describe(source, field, line, message)),
      source_(std::move(source)),
      field_(std::move(field)),
      line_(line)
{
}

}  // namespace daereach
