#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "qspan/rational.hpp"

namespace qspan {

/// Closed expression grammar for symbol values: rational literals,
/// sqrt of a positive rational, the constants pi and e, the four binary
/// operators and unary negation. Immutable; copies share structure.
///
/// Text form: `<expr> := <rational> | "sqrt(" <rational> ")" | "pi" | "e"
///            | <expr> <op> <expr> | "-" <expr>`
/// with rationals written `p/q` or as integer literals. Parenthesised
/// grouping is accepted on input.
class ValueExpr {
public:
    enum class Kind { Literal, Sqrt, Pi, E, Neg, Add, Sub, Mul, Div };

    static ValueExpr literal(Rational r);
    static ValueExpr sqrt_of(Rational r); // requires r > 0
    static ValueExpr pi();
    static ValueExpr e();

    static ValueExpr parse(std::string_view text); // throws ParseError

    Kind kind() const;
    /// Literal value or sqrt argument; only valid for those kinds.
    const Rational& rational_arg() const;
    ValueExpr lhs() const; // Add/Sub/Mul/Div
    ValueExpr rhs() const;
    ValueExpr operand() const; // Neg

    /// The exact rational value if the expression is a plain literal.
    std::optional<Rational> as_literal() const;

    ValueExpr operator-() const;
    friend ValueExpr operator+(const ValueExpr& a, const ValueExpr& b);
    friend ValueExpr operator-(const ValueExpr& a, const ValueExpr& b);
    friend ValueExpr operator*(const ValueExpr& a, const ValueExpr& b);
    friend ValueExpr operator/(const ValueExpr& a, const ValueExpr& b);

    /// Round-trips through parse().
    std::string to_string() const;

    bool operator==(const ValueExpr& o) const; // structural equality

private:
    struct Node;
    explicit ValueExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

} // namespace qspan
