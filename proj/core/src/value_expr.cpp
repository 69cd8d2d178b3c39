#include "qspan/value_expr.hpp"

#include <cctype>
#include <utility>

namespace qspan {

struct ValueExpr::Node {
    Kind kind;
    Rational value; // Literal / Sqrt
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const ValueExpr::Node>;

NodePtr make_node(ValueExpr::Kind k, Rational v, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<ValueExpr::Node>();
    n->kind = k;
    n->value = std::move(v);
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

} // namespace

ValueExpr ValueExpr::literal(Rational r) {
    return ValueExpr(make_node(Kind::Literal, std::move(r)));
}

ValueExpr ValueExpr::sqrt_of(Rational r) {
    if (r.sign() <= 0) throw ParseError("sqrt argument must be a positive rational");
    return ValueExpr(make_node(Kind::Sqrt, std::move(r)));
}

ValueExpr ValueExpr::pi() { return ValueExpr(make_node(Kind::Pi, Rational())); }
ValueExpr ValueExpr::e() { return ValueExpr(make_node(Kind::E, Rational())); }

ValueExpr::Kind ValueExpr::kind() const { return node_->kind; }

const Rational& ValueExpr::rational_arg() const { return node_->value; }

ValueExpr ValueExpr::lhs() const { return ValueExpr(node_->a); }

ValueExpr ValueExpr::rhs() const { return ValueExpr(node_->b); }

ValueExpr ValueExpr::operand() const { return ValueExpr(node_->a); }

std::optional<Rational> ValueExpr::as_literal() const {
    if (node_->kind == Kind::Literal) return node_->value;
    return std::nullopt;
}

ValueExpr ValueExpr::operator-() const {
    // Fold negation of literals so canonical forms stay canonical.
    if (node_->kind == Kind::Literal) return literal(-node_->value);
    return ValueExpr(make_node(Kind::Neg, Rational(), node_));
}

ValueExpr operator+(const ValueExpr& a, const ValueExpr& b) {
    if (a.as_literal() && b.as_literal()) return ValueExpr::literal(*a.as_literal() + *b.as_literal());
    return ValueExpr(make_node(ValueExpr::Kind::Add, Rational(), a.node_, b.node_));
}

ValueExpr operator-(const ValueExpr& a, const ValueExpr& b) {
    if (a.as_literal() && b.as_literal()) return ValueExpr::literal(*a.as_literal() - *b.as_literal());
    return ValueExpr(make_node(ValueExpr::Kind::Sub, Rational(), a.node_, b.node_));
}

ValueExpr operator*(const ValueExpr& a, const ValueExpr& b) {
    if (a.as_literal() && b.as_literal()) return ValueExpr::literal(*a.as_literal() * *b.as_literal());
    return ValueExpr(make_node(ValueExpr::Kind::Mul, Rational(), a.node_, b.node_));
}

ValueExpr operator/(const ValueExpr& a, const ValueExpr& b) {
    if (a.as_literal() && b.as_literal()) {
        if (b.as_literal()->is_zero()) throw ParseError("division by zero literal");
        return ValueExpr::literal(*a.as_literal() / *b.as_literal());
    }
    return ValueExpr(make_node(ValueExpr::Kind::Div, Rational(), a.node_, b.node_));
}

bool ValueExpr::operator==(const ValueExpr& o) const {
    if (node_ == o.node_) return true;
    if (node_->kind != o.node_->kind) return false;
    switch (node_->kind) {
    case Kind::Literal:
    case Kind::Sqrt:
        return node_->value == o.node_->value;
    case Kind::Pi:
    case Kind::E:
        return true;
    case Kind::Neg:
        return operand() == o.operand();
    default:
        return lhs() == o.lhs() && rhs() == o.rhs();
    }
}

// ---------------------------------------------------------------------------
// Parsing: recursive descent with the usual precedence. A '/' directly
// between two integer tokens is read as a rational literal, so "1/2"
// is the scalar one-half rather than a division node.

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ValueExpr run() {
        auto e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) {
        throw ParseError("value expression: " + what + " at offset " + std::to_string(pos_) +
                         " in '" + std::string(text_) + "'");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    ValueExpr expr() {
        auto e = term();
        for (;;) {
            if (eat('+')) e = e + term();
            else if (eat('-')) e = e - term();
            else return e;
        }
    }

    ValueExpr term() {
        auto e = unary();
        for (;;) {
            if (eat('*')) e = e * unary();
            else if (eat('/')) e = e / unary();
            else return e;
        }
    }

    ValueExpr unary() {
        if (eat('-')) return -unary();
        return primary();
    }

    ValueExpr primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return rational_literal();
        if (std::isalpha(static_cast<unsigned char>(c))) return named();
        if (eat('(')) {
            auto e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        fail("expected a rational, sqrt(...), pi, e, or '('");
    }

    mpz_class integer_token() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected an integer");
        return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
    }

    ValueExpr rational_literal() {
        mpz_class num = integer_token();
        // "p/q" with q an immediate integer is a single rational token.
        if (pos_ < text_.size() && text_[pos_] == '/' && pos_ + 1 < text_.size() &&
            std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            ++pos_;
            mpz_class den = integer_token();
            if (sgn(den) == 0) fail("zero denominator");
            return ValueExpr::literal(Rational(std::move(num), std::move(den)));
        }
        return ValueExpr::literal(Rational(std::move(num)));
    }

    Rational signed_rational() {
        bool neg = eat('-');
        mpz_class num = integer_token();
        mpz_class den(1);
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            den = integer_token();
            if (sgn(den) == 0) fail("zero denominator");
        }
        Rational r(std::move(num), std::move(den));
        return neg ? -r : r;
    }

    ValueExpr named() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string_view word = text_.substr(start, pos_ - start);
        if (word == "pi") return ValueExpr::pi();
        if (word == "e") return ValueExpr::e();
        if (word == "sqrt") {
            if (!eat('(')) fail("expected '(' after sqrt");
            Rational arg = signed_rational();
            if (!eat(')')) fail("expected ')'");
            if (arg.sign() <= 0) fail("sqrt argument must be positive");
            return ValueExpr::sqrt_of(std::move(arg));
        }
        fail("unknown name '" + std::string(word) + "'");
    }
};

} // namespace

ValueExpr ValueExpr::parse(std::string_view text) {
    return Parser(text).run();
}

std::string ValueExpr::to_string() const {
    switch (node_->kind) {
    case Kind::Literal:
        return node_->value.to_string();
    case Kind::Sqrt:
        return "sqrt(" + node_->value.to_string() + ")";
    case Kind::Pi:
        return "pi";
    case Kind::E:
        return "e";
    case Kind::Neg:
        return "-(" + operand().to_string() + ")";
    case Kind::Add:
        return "(" + lhs().to_string() + " + " + rhs().to_string() + ")";
    case Kind::Sub:
        return "(" + lhs().to_string() + " - " + rhs().to_string() + ")";
    case Kind::Mul:
        return "(" + lhs().to_string() + " * " + rhs().to_string() + ")";
    case Kind::Div:
        return "(" + lhs().to_string() + " / " + rhs().to_string() + ")";
    }
    return {};
}

} // namespace qspan
