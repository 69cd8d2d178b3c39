#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qspan/space.hpp"

namespace qspan {

/// An ordered list of vectors standing in for a well-order: greedy
/// extraction walks it front to back and never revisits a decision.
using Enumeration = std::vector<FormalVector>;

/// Incremental exact row echelon over the rationals. Rows are pivot
/// normalized, reduced against all earlier pivots on insertion, and
/// remember their expression in terms of the inserted vectors, so
/// span membership queries also produce coordinates. Pivots take the
/// first nonzero column, columns ordered by symbol index.
class SpanBuilder {
public:
    explicit SpanBuilder(SpacePtr space) : space_(std::move(space)) {}

    /// Returns false (and changes nothing) when v already lies in the
    /// current span; the zero vector is always dependent.
    bool insert(const FormalVector& v);

    /// Coordinates of v over the successfully inserted vectors, in
    /// insertion order, or nullopt when v is outside the span.
    std::optional<std::vector<Rational>> solve(const FormalVector& v) const;

    bool in_span(const FormalVector& v) const;
    std::size_t rank() const { return rows_.size(); }
    const SpacePtr& space() const { return space_; }

private:
    struct Row {
        std::vector<FormalVector::Term> vec;   // pivot coefficient is 1
        std::vector<std::pair<std::uint32_t, Rational>> combo; // over inserted indices
        std::uint32_t pivot = 0;
    };

    // Reduces v against the rows; returns the residual and the echelon-row
    // multipliers it absorbed.
    struct Reduction {
        std::map<std::uint32_t, Rational> residual;
        std::map<std::uint32_t, Rational> row_multipliers;
    };
    Reduction reduce(const FormalVector& v) const;

    SpacePtr space_;
    std::vector<Row> rows_;
    std::unordered_map<std::uint32_t, std::uint32_t> pivot_rows_;
};

/// An ordered linearly independent list with a cached echelon form.
class BasisList {
public:
    explicit BasisList(SpacePtr space) : span_(space) {}

    /// Throws NotIndependentError if the vectors are dependent (the
    /// zero vector counts as dependent).
    static BasisList from_vectors(SpacePtr space, std::vector<FormalVector> vectors);

    std::size_t size() const { return vectors_.size(); }
    bool empty() const { return vectors_.empty(); }
    const FormalVector& at(std::size_t i) const;
    const std::vector<FormalVector>& vectors() const { return vectors_; }
    const SpacePtr& space() const { return span_.space(); }

    /// Exact coefficients with sum(c_i * basis_i) = v, or nullopt.
    std::optional<std::vector<Rational>> span_solve(const FormalVector& v) const;

    /// The unique coordinates of v; throws NotInSpanError outside the span.
    std::vector<Rational> coordinates(const FormalVector& v) const;

    bool in_span(const FormalVector& v) const { return span_.in_span(v); }

    /// Reconstruction sum(c_i * basis_i) for given coordinates.
    FormalVector combine(std::span<const Rational> coords) const;

private:
    std::vector<FormalVector> vectors_;
    SpanBuilder span_;
};

/// Walks the enumeration in order and keeps each vector not already in
/// the span of the kept ones; the zero vector is skipped.
BasisList greedy_extract(const SpacePtr& space, const Enumeration& e);

} // namespace qspan
