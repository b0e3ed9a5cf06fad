#pragma once

#include <stdexcept>
#include <string>

namespace lefvar {

enum class Errc {
    division_by_zero,
    not_invertible,
    dimension_mismatch,
    singular,
    inconsistent,
    not_lefschetz,
    not_primitive,
    not_pure_type,
    not_harmonic,
    not_closed,
    mode_overflow,
    singular_block,
    inconsistent_input,
    bad_basis,
    zero_input,
    syntax_error,
    index_out_of_range,
    bad_descriptor,
    invariant_violation,
};

inline const char* errc_name(Errc c)
{
    switch (c) {
        case Errc::division_by_zero: return "DivisionByZero";
        case Errc::not_invertible: return "NotInvertible";
        case Errc::dimension_mismatch: return "DimensionMismatch";
        case Errc::singular: return "Singular";
        case Errc::inconsistent: return "Inconsistent";
        case Errc::not_lefschetz: return "NotLefschetz";
        case Errc::not_primitive: return "NotPrimitive";
        case Errc::not_pure_type: return "NotPureType";
        case Errc::not_harmonic: return "NotHarmonic";
        case Errc::not_closed: return "NotClosed";
        case Errc::mode_overflow: return "ModeOverflow";
        case Errc::singular_block: return "SingularBlock";
        case Errc::inconsistent_input: return "InconsistentInput";
        case Errc::bad_basis: return "BadBasis";
        case Errc::zero_input: return "ZeroInput";
        case Errc::syntax_error: return "SyntaxError";
        case Errc::index_out_of_range: return "IndexOutOfRange";
        case Errc::bad_descriptor: return "BadDescriptor";
        case Errc::invariant_violation: return "InvariantViolation";
    }
    return "UnknownError";
}

/// Library-wide error type. `line`/`column` are 1-based and only meaningful
/// for syntax_error.
class Error : public std::runtime_error {
public:
    Error(Errc code, std::string message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code)
    {
    }

    Error(Errc code, std::string message, int line, int column)
        : std::runtime_error(std::string(errc_name(code)) + " at " + std::to_string(line) + ":"
                             + std::to_string(column) + ": " + message),
          code_(code), line_(line), column_(column)
    {
    }

    Errc code() const noexcept { return code_; }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    Errc code_;
    int line_ = 0;
    int column_ = 0;
};

[[noreturn]] inline void fail(Errc code, const std::string& message)
{
    throw Error(code, message);
}

inline void require(bool ok, Errc code, const std::string& message)
{
    if (!ok)
        throw Error(code, message);
}

} // namespace lefvar
