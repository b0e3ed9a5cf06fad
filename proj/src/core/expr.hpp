#pragma once

#include <string>
#include <vector>

#include "core/torus.hpp"

namespace lefvar {

/// Parsed form expression. Grammar:
///   expr  := term (('+'|'-') term)*
///   term  := unary ('*' unary)*          -- '*' needs a degree-0 operand
///   unary := '-' unary | wpow
///   wpow  := atom ('^' atom)*            -- wedge
///   atom  := RATIONAL | 'i' | 'w' | 'dz'K | 'dzb'K | 'e' '[' ints ']' | '(' expr ')'
struct FormExpr {
    enum class Kind { number, imag_unit, omega_ref, dz, dzb, character, add, sub, neg, mul, wedge };

    Kind kind = Kind::number;
    Rational number = 0;
    int index = 0;              // dz / dzb
    std::vector<int> mode;      // character
    std::vector<FormExpr> children;

    bool operator==(const FormExpr& o) const;
};

/// Parses against dimension N (dz/dzb indices must lie in 1..N, characters
/// must have 2N entries). Syntax errors carry 1-based line/column.
FormExpr parse_form(const std::string& src, int N);

/// Grammar-compatible rendering; parse_form(print_expr(e)) == e.
std::string print_expr(const FormExpr& e);

/// Evaluates an expression over the model's omega and mode set.
FourierForm<Scalar> elaborate(const FormExpr& e, const Form<Scalar>& omega,
                              const ModeSet& modes);

/// Demands a purely constant (mode-0) value.
Form<Scalar> as_constant(const FourierForm<Scalar>& x);

/// Canonical grammar-compatible rendering of values; parsing the output
/// recovers the value exactly.
std::string print_form(const Form<Scalar>& f);
std::string print_fourier(const FourierForm<Scalar>& x);

} // namespace lefvar
