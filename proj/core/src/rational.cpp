#include "qspan/rational.hpp"

#include <cctype>
#include <ostream>

namespace qspan {

namespace {

bool is_integer_token(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

} // namespace

Rational::Rational(long n, long d) {
    if (d == 0) throw ParseError("rational with zero denominator");
    value_ = mpq_class(n, d);
    value_.canonicalize();
}

Rational::Rational(mpz_class n, mpz_class d) {
    if (sgn(d) == 0) throw ParseError("rational with zero denominator");
    value_ = mpq_class(std::move(n), std::move(d));
    value_.canonicalize();
}

std::optional<Rational> Rational::try_parse(std::string_view text) {
    // Trim surrounding whitespace; the grammar itself is strict.
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) return std::nullopt;

    const auto slash = text.find('/');
    std::string_view num_part = text.substr(0, slash);
    if (!is_integer_token(num_part)) return std::nullopt;
    mpz_class num(std::string(num_part), 10);

    if (slash == std::string_view::npos) return Rational(std::move(num), 1);

    std::string_view den_part = text.substr(slash + 1);
    if (!is_integer_token(den_part) || den_part.front() == '-' || den_part.front() == '+') return std::nullopt;
    mpz_class den(std::string(den_part), 10);
    if (sgn(den) == 0) return std::nullopt;
    return Rational(std::move(num), std::move(den));
}

Rational Rational::parse(std::string_view text) {
    auto r = try_parse(text);
    if (!r) throw ParseError("invalid rational literal: '" + std::string(text) + "'");
    return *r;
}

Rational Rational::pow2(long k) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k < 0 ? -k : k));
    if (k >= 0) return Rational(std::move(p));
    return Rational(1, std::move(p));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    value_ /= o.value_;
    return *this;
}

Rational Rational::operator-() const {
    Rational r;
    r.value_ = -value_;
    return r;
}

Rational Rational::abs() const {
    Rational r;
    r.value_ = ::abs(value_);
    return r;
}

mpz_class Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return q;
}

std::string Rational::to_string() const {
    return value_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
}

long floor_log2(const Rational& r) {
    if (r.sign() <= 0) throw std::domain_error("floor_log2 requires a positive argument");
    const long nb = static_cast<long>(mpz_sizeinbase(r.num().get_mpz_t(), 2));
    const long db = static_cast<long>(mpz_sizeinbase(r.den().get_mpz_t(), 2));
    // num has nb bits: 2^(nb-1) <= num < 2^nb, same for den, so the true
    // log2 lies in [nb-db-1, nb-db]. Settle it with one exact comparison.
    long k = nb - db;
    if (Rational::pow2(k) > r) --k;
    return k;
}

} // namespace qspan
