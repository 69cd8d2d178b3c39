#include "qspan/basis.hpp"

#include <utility>

#include "qspan/errors.hpp"

namespace qspan {

SpanBuilder::Reduction SpanBuilder::reduce(const FormalVector& v) const {
    Reduction red;
    for (const auto& term : v.terms()) red.residual.insert(red.residual.end(), term);
    while (!red.residual.empty()) {
        const auto front = red.residual.begin();
        const auto pivot_it = pivot_rows_.find(front->first);
        if (pivot_it == pivot_rows_.end()) break;
        const Row& row = rows_[pivot_it->second];
        const Rational factor = front->second; // row pivot coefficient is 1
        red.residual.erase(front);
        for (auto it = row.vec.begin() + 1; it != row.vec.end(); ++it) {
            auto [slot, inserted] = red.residual.try_emplace(it->first, Rational());
            slot->second -= factor * it->second;
            if (slot->second.is_zero()) red.residual.erase(slot);
        }
        red.row_multipliers[pivot_it->second] += factor;
    }
    return red;
}

bool SpanBuilder::insert(const FormalVector& v) {
    if (v.space() != space_) throw SpaceMismatchError("vector from a different space");
    Reduction red = reduce(v);
    if (red.residual.empty()) return false;

    Row row;
    const Rational lead = red.residual.begin()->second;
    row.pivot = red.residual.begin()->first;
    row.vec.reserve(red.residual.size());
    for (const auto& [sym, c] : red.residual) row.vec.emplace_back(sym, c / lead);

    // residual = v - sum(mult_r * row_r); solve for v over the originals.
    std::map<std::uint32_t, Rational> combo;
    const auto self = static_cast<std::uint32_t>(rows_.size());
    combo[self] = Rational(1) / lead;
    for (const auto& [r, mult] : red.row_multipliers) {
        for (const auto& [orig, c] : rows_[r].combo) {
            auto [slot, inserted] = combo.try_emplace(orig, Rational());
            slot->second -= (mult / lead) * c;
            if (slot->second.is_zero()) combo.erase(slot);
        }
    }
    row.combo.assign(combo.begin(), combo.end());

    pivot_rows_.emplace(row.pivot, static_cast<std::uint32_t>(rows_.size()));
    rows_.push_back(std::move(row));
    return true;
}

std::optional<std::vector<Rational>> SpanBuilder::solve(const FormalVector& v) const {
    if (v.space() != space_) throw SpaceMismatchError("vector from a different space");
    Reduction red = reduce(v);
    if (!red.residual.empty()) return std::nullopt;
    std::vector<Rational> coords(rows_.size(), Rational());
    for (const auto& [r, mult] : red.row_multipliers) {
        for (const auto& [orig, c] : rows_[r].combo) coords[orig] += mult * c;
    }
    return coords;
}

bool SpanBuilder::in_span(const FormalVector& v) const {
    if (v.space() != space_) throw SpaceMismatchError("vector from a different space");
    return reduce(v).residual.empty();
}

BasisList BasisList::from_vectors(SpacePtr space, std::vector<FormalVector> vectors) {
    BasisList basis(std::move(space));
    for (auto& v : vectors) {
        if (!basis.span_.insert(v))
            throw NotIndependentError("dependent vector in basis: " + v.to_string());
        basis.vectors_.push_back(std::move(v));
    }
    return basis;
}

const FormalVector& BasisList::at(std::size_t i) const {
    if (i >= vectors_.size()) throw IndexOutOfRangeError("basis index out of range");
    return vectors_[i];
}

std::optional<std::vector<Rational>> BasisList::span_solve(const FormalVector& v) const {
    return span_.solve(v);
}

std::vector<Rational> BasisList::coordinates(const FormalVector& v) const {
    auto coords = span_.solve(v);
    if (!coords) throw NotInSpanError("vector outside the basis span: " + v.to_string());
    return *std::move(coords);
}

FormalVector BasisList::combine(std::span<const Rational> coords) const {
    if (coords.size() != vectors_.size())
        throw std::invalid_argument("coordinate count does not match basis size");
    if (vectors_.empty()) return FormalVector(space());
    return FormalVector::linear_combination(vectors_, coords);
}

BasisList greedy_extract(const SpacePtr& space, const Enumeration& e) {
    SpanBuilder span(space);
    std::vector<FormalVector> vectors;
    for (const auto& v : e) {
        if (span.insert(v)) vectors.push_back(v);
    }
    return BasisList::from_vectors(space, std::move(vectors));
}

} // namespace qspan
