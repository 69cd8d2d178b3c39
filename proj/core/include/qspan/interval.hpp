#pragma once

#include <string>

#include "qspan/rational.hpp"
#include "qspan/space.hpp"
#include "qspan/value_expr.hpp"

namespace qspan {

/// A certified enclosure of a real value. Endpoints are dyadic
/// rationals (integer times a power of two) produced by directed
/// rounding, so membership checks stay exact.
struct IntervalValue {
    Rational lo;
    Rational hi;
    int precision_bits = 0;

    Rational width() const { return hi - lo; }
    bool contains(const Rational& r) const { return lo <= r && r <= hi; }
    std::string to_string() const;
};

struct EvalOptions {
    /// Refinement doubles the working precision up to this cap before
    /// giving up with EvalDepthExceeded.
    int max_working_bits = 4096;
};

/// Encloses the real value of an expression in an interval of width
/// at most 2^-precision_bits.
IntervalValue eval_interval(const ValueExpr& expr, int precision_bits,
                            const EvalOptions& options = {});

/// Encloses sum(coefficient_i * value(symbol_i)) over the vector's terms.
/// The zero vector yields the exact enclosure [0, 0].
IntervalValue eval_interval(const FormalVector& x, int precision_bits,
                            const EvalOptions& options = {});

enum class AbsOrdering { Less, Greater, Undecidable };

std::string to_string(AbsOrdering o);

/// Evidence that |x| and |y| were separated (or could not be): the
/// final enclosures of the absolute values and the working precision
/// at which the comparison settled.
struct AbsCompareEvidence {
    AbsOrdering result = AbsOrdering::Undecidable;
    IntervalValue abs_x;
    IntervalValue abs_y;
    int bits_used = 0;
};

/// Compares |value(x)| against |value(y)| by interval refinement.
/// Less/Greater are returned only once the enclosures are disjoint;
/// Undecidable means they still overlap at max_bits. Equal magnitudes
/// therefore never separate.
AbsCompareEvidence compare_abs_evidence(const FormalVector& x, const FormalVector& y,
                                        int max_bits, const EvalOptions& options = {});
AbsOrdering compare_abs(const FormalVector& x, const FormalVector& y, int max_bits,
                        const EvalOptions& options = {});

/// The least q = 1/2^m, m >= 0, with |q*h| certified below |bound|/2.
/// Throws NonzeroRequired when h or bound is the zero vector and
/// UndecidableError when either operand cannot be certified nonzero.
Rational halving_scale(const FormalVector& h, const FormalVector& bound,
                       int max_bits = 4096, const EvalOptions& options = {});

} // namespace qspan
