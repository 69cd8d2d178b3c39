#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qspan/rational.hpp"
#include "qspan/value_expr.hpp"

namespace qspan {

/// A named generator of the ambient real line together with its value.
/// Symbols are formally independent over the rationals by fiat; the
/// library never tries to certify independence of their real values.
struct Symbol {
    std::string name;
    ValueExpr value;
};

class Space;
using SpacePtr = std::shared_ptr<const Space>;

/// Immutable symbol universe. Every space contains the distinguished
/// symbol `one` whose value is the literal 1.
class Space {
public:
    /// Validates name uniqueness and the presence of `one` (value 1).
    static SpacePtr make(std::vector<Symbol> symbols);

    std::size_t size() const { return symbols_.size(); }
    const Symbol& symbol(std::size_t i) const;
    std::size_t one_index() const { return one_index_; }
    std::optional<std::size_t> index_of(std::string_view name) const;

private:
    Space() = default;
    std::vector<Symbol> symbols_;
    std::size_t one_index_ = 0;
};

/// A finite rational combination of a space's symbols. Sparse, sorted
/// by symbol index, never stores zero coefficients; the empty sum is
/// the zero vector. Value semantics throughout.
class FormalVector {
public:
    using Term = std::pair<std::uint32_t, Rational>;

    explicit FormalVector(SpacePtr space) : space_(std::move(space)) {}

    /// Builds from arbitrary (symbol, coefficient) pairs: merges
    /// duplicates, sorts, and drops zeros.
    static FormalVector from_terms(SpacePtr space, std::vector<Term> terms);

    static FormalVector linear_combination(std::span<const FormalVector> vectors,
                                           std::span<const Rational> coefficients);

    const SpacePtr& space() const { return space_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    Rational coefficient(std::size_t symbol_index) const;
    /// Smallest symbol index with nonzero coefficient; vector must be nonzero.
    std::uint32_t leading_symbol() const;

    FormalVector& operator+=(const FormalVector& o);
    FormalVector& operator-=(const FormalVector& o);
    FormalVector& operator*=(const Rational& s);

    friend FormalVector operator+(FormalVector a, const FormalVector& b) { a += b; return a; }
    friend FormalVector operator-(FormalVector a, const FormalVector& b) { a -= b; return a; }
    friend FormalVector operator*(const Rational& s, FormalVector v) { v *= s; return v; }
    friend FormalVector operator*(FormalVector v, const Rational& s) { v *= s; return v; }
    FormalVector operator-() const;

    bool operator==(const FormalVector& o) const;

    /// "2*one - 1/3*sqrt2"; the zero vector prints as "0".
    std::string to_string() const;

private:
    SpacePtr space_;
    std::vector<Term> terms_;
};

FormalVector unit_vector(const SpacePtr& space, std::size_t symbol_index);
FormalVector unit_vector(const SpacePtr& space, std::string_view name);

/// Throws SpaceMismatchError unless both vectors share a space.
void require_same_space(const FormalVector& a, const FormalVector& b);

std::ostream& operator<<(std::ostream& os, const FormalVector& v);

} // namespace qspan
