#pragma once

#include <stdexcept>
#include <string>

namespace indexcode {

enum class ErrorKind {
    unsupported_order,
    divide_by_zero,
    dimension_mismatch,
    budget_exceeded,
    parse,
    invalid_instance,
    invalid_param,
    unknown_builtin,
    not_normalized,
    not_a_clique,
    empty_graph,
    isolated_vertex,
    too_many_colors,
    improper_coloring,
    degenerate_instance,
    io,
    internal,
};

inline const char* to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::unsupported_order: return "UnsupportedOrder";
    case ErrorKind::divide_by_zero: return "DivideByZero";
    case ErrorKind::dimension_mismatch: return "DimensionMismatch";
    case ErrorKind::budget_exceeded: return "BudgetExceeded";
    case ErrorKind::parse: return "ParseError";
    case ErrorKind::invalid_instance: return "InvalidInstance";
    case ErrorKind::invalid_param: return "InvalidParam";
    case ErrorKind::unknown_builtin: return "UnknownBuiltin";
    case ErrorKind::not_normalized: return "NotNormalized";
    case ErrorKind::not_a_clique: return "NotAClique";
    case ErrorKind::empty_graph: return "EmptyGraph";
    case ErrorKind::isolated_vertex: return "IsolatedVertex";
    case ErrorKind::too_many_colors: return "TooManyColors";
    case ErrorKind::improper_coloring: return "ImproperColoring";
    case ErrorKind::degenerate_instance: return "DegenerateInstance";
    case ErrorKind::io: return "IoError";
    case ErrorKind::internal: return "InternalError";
    }
    return "Error";
}

// Single exception type for the whole library; the kind drives both test
// assertions and the CLI exit-code mapping.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message)
{
    throw Error(kind, message);
}

} // namespace indexcode
