#include "qspan/interval.hpp"

#include <mpfr.h>

#include <algorithm>
#include <utility>

#include "qspan/errors.hpp"

namespace qspan {

namespace {

// Raised while evaluating at a working precision that turned out to be
// insufficient (division by an interval still straddling zero).
struct NeedsRefinement {};

class Mpf {
public:
    explicit Mpf(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    Mpf(const Mpf& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Mpf& operator=(const Mpf&) = delete;
    Mpf(Mpf&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    ~Mpf() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

struct Ival {
    Mpf lo;
    Mpf hi;
    explicit Ival(mpfr_prec_t prec) : lo(prec), hi(prec) {}
};

Rational to_rational(mpfr_srcptr v) {
    if (mpfr_zero_p(v)) return Rational();
    mpz_class m;
    const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v);
    return Rational(std::move(m)) * Rational::pow2(static_cast<long>(e));
}

Ival eval_node(const ValueExpr& e, mpfr_prec_t w);

Ival eval_literal(const Rational& r, mpfr_prec_t w) {
    Ival iv(w);
    mpfr_set_q(iv.lo.get(), r.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(iv.hi.get(), r.raw().get_mpq_t(), MPFR_RNDU);
    return iv;
}

Ival eval_add(const Ival& a, const Ival& b, mpfr_prec_t w) {
    Ival iv(w);
    mpfr_add(iv.lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
    mpfr_add(iv.hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
    return iv;
}

Ival eval_sub(const Ival& a, const Ival& b, mpfr_prec_t w) {
    Ival iv(w);
    mpfr_sub(iv.lo.get(), a.lo.get(), b.hi.get(), MPFR_RNDD);
    mpfr_sub(iv.hi.get(), a.hi.get(), b.lo.get(), MPFR_RNDU);
    return iv;
}

Ival eval_neg(const Ival& a, mpfr_prec_t w) {
    Ival iv(w);
    mpfr_neg(iv.lo.get(), a.hi.get(), MPFR_RNDD);
    mpfr_neg(iv.hi.get(), a.lo.get(), MPFR_RNDU);
    return iv;
}

Ival eval_mul(const Ival& a, const Ival& b, mpfr_prec_t w) {
    // Directed min/max over the four endpoint products.
    Ival iv(w);
    Mpf t(w);
    bool first = true;
    auto consider = [&](mpfr_srcptr x, mpfr_srcptr y) {
        mpfr_mul(t.get(), x, y, MPFR_RNDD);
        if (first || mpfr_cmp(t.get(), iv.lo.get()) < 0) mpfr_set(iv.lo.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), x, y, MPFR_RNDU);
        if (first || mpfr_cmp(t.get(), iv.hi.get()) > 0) mpfr_set(iv.hi.get(), t.get(), MPFR_RNDU);
        first = false;
    };
    consider(a.lo.get(), b.lo.get());
    consider(a.lo.get(), b.hi.get());
    consider(a.hi.get(), b.lo.get());
    consider(a.hi.get(), b.hi.get());
    return iv;
}

Ival eval_div(const Ival& a, const Ival& b, mpfr_prec_t w) {
    // The denominator enclosure must exclude zero.
    if (mpfr_sgn(b.lo.get()) <= 0 && mpfr_sgn(b.hi.get()) >= 0) throw NeedsRefinement{};
    Ival iv(w);
    Mpf t(w);
    bool first = true;
    auto consider = [&](mpfr_srcptr x, mpfr_srcptr y) {
        mpfr_div(t.get(), x, y, MPFR_RNDD);
        if (first || mpfr_cmp(t.get(), iv.lo.get()) < 0) mpfr_set(iv.lo.get(), t.get(), MPFR_RNDD);
        mpfr_div(t.get(), x, y, MPFR_RNDU);
        if (first || mpfr_cmp(t.get(), iv.hi.get()) > 0) mpfr_set(iv.hi.get(), t.get(), MPFR_RNDU);
        first = false;
    };
    consider(a.lo.get(), b.lo.get());
    consider(a.lo.get(), b.hi.get());
    consider(a.hi.get(), b.lo.get());
    consider(a.hi.get(), b.hi.get());
    return iv;
}

Ival eval_node(const ValueExpr& e, mpfr_prec_t w) {
    using Kind = ValueExpr::Kind;
    switch (e.kind()) {
    case Kind::Literal:
        return eval_literal(e.rational_arg(), w);
    case Kind::Sqrt: {
        Ival arg = eval_literal(e.rational_arg(), w);
        Ival iv(w);
        mpfr_sqrt(iv.lo.get(), arg.lo.get(), MPFR_RNDD);
        mpfr_sqrt(iv.hi.get(), arg.hi.get(), MPFR_RNDU);
        return iv;
    }
    case Kind::Pi: {
        Ival iv(w);
        mpfr_const_pi(iv.lo.get(), MPFR_RNDD);
        mpfr_const_pi(iv.hi.get(), MPFR_RNDU);
        return iv;
    }
    case Kind::E: {
        Ival iv(w);
        Mpf unit(w);
        mpfr_set_ui(unit.get(), 1, MPFR_RNDN);
        mpfr_exp(iv.lo.get(), unit.get(), MPFR_RNDD);
        mpfr_exp(iv.hi.get(), unit.get(), MPFR_RNDU);
        return iv;
    }
    case Kind::Neg:
        return eval_neg(eval_node(e.operand(), w), w);
    case Kind::Add:
        return eval_add(eval_node(e.lhs(), w), eval_node(e.rhs(), w), w);
    case Kind::Sub:
        return eval_sub(eval_node(e.lhs(), w), eval_node(e.rhs(), w), w);
    case Kind::Mul:
        return eval_mul(eval_node(e.lhs(), w), eval_node(e.rhs(), w), w);
    case Kind::Div:
        return eval_div(eval_node(e.lhs(), w), eval_node(e.rhs(), w), w);
    }
    throw std::logic_error("unreachable expression kind");
}

Ival eval_vector(const FormalVector& x, mpfr_prec_t w) {
    Ival acc(w);
    mpfr_set_zero(acc.lo.get(), 0);
    mpfr_set_zero(acc.hi.get(), 0);
    for (const auto& [sym, coeff] : x.terms()) {
        Ival val = eval_node(x.space()->symbol(sym).value, w);
        // coeff * [lo, hi] with the sign deciding which endpoint lands where.
        Ival scaled(w);
        if (coeff.sign() >= 0) {
            mpfr_mul_q(scaled.lo.get(), val.lo.get(), coeff.raw().get_mpq_t(), MPFR_RNDD);
            mpfr_mul_q(scaled.hi.get(), val.hi.get(), coeff.raw().get_mpq_t(), MPFR_RNDU);
        } else {
            mpfr_mul_q(scaled.lo.get(), val.hi.get(), coeff.raw().get_mpq_t(), MPFR_RNDD);
            mpfr_mul_q(scaled.hi.get(), val.lo.get(), coeff.raw().get_mpq_t(), MPFR_RNDU);
        }
        acc = eval_add(acc, scaled, w);
    }
    return acc;
}

IntervalValue freeze(const Ival& iv, int precision_bits) {
    IntervalValue out;
    out.lo = to_rational(iv.lo.get());
    out.hi = to_rational(iv.hi.get());
    out.precision_bits = precision_bits;
    return out;
}

// Enclosure of the absolute value.
IntervalValue abs_interval(const IntervalValue& iv) {
    IntervalValue out;
    out.precision_bits = iv.precision_bits;
    if (iv.lo.sign() >= 0) {
        out.lo = iv.lo;
        out.hi = iv.hi;
    } else if (iv.hi.sign() <= 0) {
        out.lo = -iv.hi;
        out.hi = -iv.lo;
    } else {
        out.lo = Rational();
        out.hi = std::max(-iv.lo, iv.hi);
    }
    return out;
}

template <typename EvalFn>
IntervalValue refine_to_width(EvalFn&& eval, int precision_bits, const EvalOptions& options,
                              const std::string& what) {
    if (precision_bits < 1) throw std::invalid_argument("precision_bits must be >= 1");
    const Rational target = Rational::pow2(-static_cast<long>(precision_bits));
    mpfr_prec_t w = std::max<mpfr_prec_t>(64, precision_bits + 32);
    for (;;) {
        if (w > options.max_working_bits)
            throw EvalDepthExceededError("interval refinement for " + what + " exceeded " +
                                         std::to_string(options.max_working_bits) + " working bits");
        try {
            Ival iv = eval(w);
            IntervalValue out = freeze(iv, precision_bits);
            if (out.width() <= target) return out;
        } catch (const NeedsRefinement&) {
            // fall through and retry wider
        }
        w *= 2;
    }
}

} // namespace

std::string IntervalValue::to_string() const {
    return "[" + lo.to_string() + ", " + hi.to_string() + "]@" + std::to_string(precision_bits);
}

std::string to_string(AbsOrdering o) {
    switch (o) {
    case AbsOrdering::Less: return "less";
    case AbsOrdering::Greater: return "greater";
    case AbsOrdering::Undecidable: return "undecidable";
    }
    return {};
}

IntervalValue eval_interval(const ValueExpr& expr, int precision_bits, const EvalOptions& options) {
    return refine_to_width([&](mpfr_prec_t w) { return eval_node(expr, w); }, precision_bits,
                           options, "'" + expr.to_string() + "'");
}

IntervalValue eval_interval(const FormalVector& x, int precision_bits, const EvalOptions& options) {
    return refine_to_width([&](mpfr_prec_t w) { return eval_vector(x, w); }, precision_bits,
                           options, "'" + x.to_string() + "'");
}

AbsCompareEvidence compare_abs_evidence(const FormalVector& x, const FormalVector& y,
                                        int max_bits, const EvalOptions& options) {
    if (max_bits < 1) throw std::invalid_argument("max_bits must be >= 1");
    require_same_space(x, y);
    AbsCompareEvidence ev;
    int w = std::min(32, max_bits);
    for (;;) {
        bool evaluated = false;
        try {
            IntervalValue ax = abs_interval(freeze(eval_vector(x, w), w));
            IntervalValue ay = abs_interval(freeze(eval_vector(y, w), w));
            evaluated = true;
            ev.abs_x = ax;
            ev.abs_y = ay;
            ev.bits_used = w;
            if (ax.hi < ay.lo) {
                ev.result = AbsOrdering::Less;
                return ev;
            }
            if (ay.hi < ax.lo) {
                ev.result = AbsOrdering::Greater;
                return ev;
            }
        } catch (const NeedsRefinement&) {
            // retry wider
        }
        if (w >= max_bits) {
            if (!evaluated)
                throw EvalDepthExceededError("operands of |.| comparison not evaluable within " +
                                             std::to_string(max_bits) + " bits");
            ev.result = AbsOrdering::Undecidable;
            return ev;
        }
        w = std::min(w * 2, max_bits);
    }
}

AbsOrdering compare_abs(const FormalVector& x, const FormalVector& y, int max_bits,
                        const EvalOptions& options) {
    return compare_abs_evidence(x, y, max_bits, options).result;
}

Rational halving_scale(const FormalVector& h, const FormalVector& bound, int max_bits,
                       const EvalOptions& options) {
    require_same_space(h, bound);
    if (h.is_zero() || bound.is_zero())
        throw NonzeroRequiredError("halving_scale requires nonzero vectors");

    const FormalVector zero(h.space());
    auto h_ev = compare_abs_evidence(h, zero, max_bits, options);
    if (h_ev.result != AbsOrdering::Greater)
        throw UndecidableError("cannot certify |" + h.to_string() + "| > 0 within " +
                               std::to_string(max_bits) + " bits");
    auto b_ev = compare_abs_evidence(bound, zero, max_bits, options);
    if (b_ev.result != AbsOrdering::Greater)
        throw UndecidableError("cannot certify |" + bound.to_string() + "| > 0 within " +
                               std::to_string(max_bits) + " bits");

    // Every m with (1/2^m)*|h|_lo >= |bound/2|_hi is certainly not below the
    // bound; skip them in one step instead of scanning.
    const Rational h_lo = h_ev.abs_x.lo;                   // 0 < h_lo <= |h|
    const Rational half_hi = b_ev.abs_x.hi / Rational(2);  // |bound|/2 <= half_hi
    long start = 0;
    const Rational ratio = h_lo / half_hi;
    if (ratio > Rational(1)) start = floor_log2(ratio) + 1;

    const FormalVector half_bound = Rational(1, 2) * bound;
    for (long m = start;; ++m) {
        const Rational q = Rational::pow2(-m);
        const AbsOrdering cmp = compare_abs(q * h, half_bound, max_bits, options);
        if (cmp == AbsOrdering::Less) return q;
        if (m - start > options.max_working_bits)
            throw EvalDepthExceededError("halving search failed to terminate");
    }
}

} // namespace qspan
