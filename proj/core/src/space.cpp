#include "qspan/space.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_set>

#include "qspan/errors.hpp"

namespace qspan {

SpacePtr Space::make(std::vector<Symbol> symbols) {
    auto space = std::shared_ptr<Space>(new Space());
    std::unordered_set<std::string_view> seen;
    std::optional<std::size_t> one;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        const auto& name = symbols[i].name;
        if (name.empty()) throw ParseError("symbol with empty name");
        if (!seen.insert(name).second) throw ParseError("duplicate symbol name '" + name + "'");
        if (name == "one") {
            auto lit = symbols[i].value.as_literal();
            if (!lit || *lit != Rational(1))
                throw ParseError("symbol 'one' must have the literal value 1");
            one = i;
        }
    }
    if (!one) throw ParseError("every space must declare the symbol 'one' with value 1");
    space->symbols_ = std::move(symbols);
    space->one_index_ = *one;
    return space;
}

const Symbol& Space::symbol(std::size_t i) const {
    if (i >= symbols_.size()) throw IndexOutOfRangeError("symbol index out of range");
    return symbols_[i];
}

std::optional<std::size_t> Space::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i].name == name) return i;
    }
    return std::nullopt;
}

FormalVector FormalVector::from_terms(SpacePtr space, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    FormalVector v(std::move(space));
    for (auto& [sym, coeff] : terms) {
        if (sym >= v.space_->size()) throw IndexOutOfRangeError("symbol index out of range");
        if (!v.terms_.empty() && v.terms_.back().first == sym) {
            v.terms_.back().second += coeff;
            if (v.terms_.back().second.is_zero()) v.terms_.pop_back();
        } else if (!coeff.is_zero()) {
            v.terms_.emplace_back(sym, std::move(coeff));
        }
    }
    // A merge may have produced a zero that unblocked the branch above.
    std::erase_if(v.terms_, [](const Term& t) { return t.second.is_zero(); });
    return v;
}

FormalVector FormalVector::linear_combination(std::span<const FormalVector> vectors,
                                              std::span<const Rational> coefficients) {
    if (vectors.size() != coefficients.size())
        throw std::invalid_argument("linear_combination: size mismatch");
    if (vectors.empty())
        throw std::invalid_argument("linear_combination: empty input has no space");
    std::vector<Term> terms;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        require_same_space(vectors[0], vectors[i]);
        if (coefficients[i].is_zero()) continue;
        for (const auto& [sym, c] : vectors[i].terms()) terms.emplace_back(sym, coefficients[i] * c);
    }
    return from_terms(vectors[0].space(), std::move(terms));
}

Rational FormalVector::coefficient(std::size_t symbol_index) const {
    const auto it = std::lower_bound(
        terms_.begin(), terms_.end(), symbol_index,
        [](const Term& t, std::size_t s) { return t.first < s; });
    if (it != terms_.end() && it->first == symbol_index) return it->second;
    return Rational();
}

std::uint32_t FormalVector::leading_symbol() const {
    if (terms_.empty()) throw std::logic_error("leading_symbol of the zero vector");
    return terms_.front().first;
}

FormalVector& FormalVector::operator+=(const FormalVector& o) {
    require_same_space(*this, o);
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
        if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
            merged.push_back(*a++);
        } else if (a == terms_.end() || b->first < a->first) {
            merged.push_back(*b++);
        } else {
            Rational sum = a->second + b->second;
            if (!sum.is_zero()) merged.emplace_back(a->first, std::move(sum));
            ++a;
            ++b;
        }
    }
    terms_ = std::move(merged);
    return *this;
}

FormalVector& FormalVector::operator-=(const FormalVector& o) {
    return *this += -o;
}

FormalVector& FormalVector::operator*=(const Rational& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [sym, c] : terms_) c *= s;
    return *this;
}

FormalVector FormalVector::operator-() const {
    FormalVector v(space_);
    v.terms_.reserve(terms_.size());
    for (const auto& [sym, c] : terms_) v.terms_.emplace_back(sym, -c);
    return v;
}

bool FormalVector::operator==(const FormalVector& o) const {
    return space_ == o.space_ && terms_ == o.terms_;
}

std::string FormalVector::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [sym, c] : terms_) {
        const bool neg = c.sign() < 0;
        const Rational mag = c.abs();
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (mag != Rational(1)) {
            out += mag.to_string();
            out += "*";
        }
        out += space_->symbol(sym).name;
        first = false;
    }
    return out;
}

FormalVector unit_vector(const SpacePtr& space, std::size_t symbol_index) {
    return FormalVector::from_terms(space, {{static_cast<std::uint32_t>(symbol_index), Rational(1)}});
}

FormalVector unit_vector(const SpacePtr& space, std::string_view name) {
    auto idx = space->index_of(name);
    if (!idx) throw IndexOutOfRangeError("unknown symbol '" + std::string(name) + "'");
    return unit_vector(space, *idx);
}

void require_same_space(const FormalVector& a, const FormalVector& b) {
    if (a.space() != b.space())
        throw SpaceMismatchError("vectors belong to different symbol universes");
}

std::ostream& operator<<(std::ostream& os, const FormalVector& v) {
    return os << v.to_string();
}

} // namespace qspan
