#pragma once

// Exact big-integer/rational combinatorics plus reals at a configurable
// binary precision. Integers and rationals are GMP (always exact); reals are
// MPFR, so every elementary operation is correctly rounded at the requested
// precision. Everything downstream builds on this header.

#include <cstdio>  // before mpfr.h so the mpfr_*printf interfaces are declared

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "limitlab/errors.hpp"

namespace limitlab {

using BigInt = mpz_class;
using BigRational = mpq_class;

// num/den of a canonical rational. den > 0, gcd(|num|, den) = 1.
inline BigInt num(const BigRational& q) { return q.get_num(); }
inline BigInt den(const BigRational& q) { return q.get_den(); }

// Canonicalizing constructor; mpq_class(a, b) alone does not reduce.
inline BigRational make_rational(const BigInt& numerator, const BigInt& denominator) {
    if (denominator == 0) throw domain_violation("rational with zero denominator");
    BigRational q(numerator, denominator);
    q.canonicalize();
    return q;
}

inline BigInt int_pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline BigRational rational_pow(const BigRational& base, long e) {
    if (e == 0) return BigRational(1);
    if (base == 0 && e < 0) throw domain_violation("0 raised to a negative power");
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    BigRational r = make_rational(int_pow(num(base), a), int_pow(den(base), a));
    if (e < 0) r = 1 / r;
    return r;
}

struct PrecisionContext {
    mpfr_prec_t bits = 256;
    mpfr_prec_t rounding_guard = 32;

    PrecisionContext() = default;
    PrecisionContext(mpfr_prec_t bits_, mpfr_prec_t guard = 32)
        : bits(bits_), rounding_guard(guard) {
        if (bits < 64) throw domain_violation("precision below 64 bits");
        if (rounding_guard < 0) throw domain_violation("negative rounding guard");
    }

    mpfr_prec_t working() const { return bits + rounding_guard; }
    PrecisionContext widened() const { return PrecisionContext(working(), rounding_guard); }
};

// Floating value bound to an explicit precision. Immutable in spirit: all
// arithmetic returns new values, at the wider precision of the operands.
class Real {
  public:
    explicit Real(const PrecisionContext& ctx) {
        mpfr_init2(v_, ctx.bits);
        mpfr_set_zero(v_, 1);
    }
    Real(long value, const PrecisionContext& ctx) {
        mpfr_init2(v_, ctx.bits);
        mpfr_set_si(v_, value, MPFR_RNDN);
    }
    Real(int value, const PrecisionContext& ctx) : Real(static_cast<long>(value), ctx) {}
    Real(const BigInt& value, const PrecisionContext& ctx) {
        mpfr_init2(v_, ctx.bits);
        mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
    }
    Real(const BigRational& value, const PrecisionContext& ctx) {
        mpfr_init2(v_, ctx.bits);
        mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
    }
    // Decimal string constructor, used mostly for frozen test values.
    Real(const char* decimal, const PrecisionContext& ctx) {
        mpfr_init2(v_, ctx.bits);
        if (mpfr_set_str(v_, decimal, 10, MPFR_RNDN) != 0)
            throw domain_violation(std::string("unparsable real literal: ") + decimal);
    }

    static Real infinity(const PrecisionContext& ctx) {
        Real r(ctx);
        mpfr_set_inf(r.v_, 1);
        return r;
    }

    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    Real rounded(mpfr_prec_t prec) const {
        Real r(*this);
        mpfr_prec_round(r.v_, prec, MPFR_RNDN);
        return r;
    }

    bool is_inf() const { return mpfr_inf_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sgn() const { return mpfr_sgn(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // Scientific notation with the requested number of significant digits.
    std::string str(int digits = 40) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Re", digits - 1, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

    friend Real operator-(const Real& a) {
        Real r = with_prec(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

#define LIMITLAB_REAL_BINOP(op, fn)                                  \
    friend Real operator op(const Real& a, const Real& b) {          \
        Real r = with_prec(std::max(a.prec(), b.prec()));            \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                             \
        return r;                                                    \
    }                                                                \
    friend Real operator op(const Real& a, long b) {                 \
        Real r = with_prec(a.prec());                                \
        fn##_si(r.v_, a.v_, b, MPFR_RNDN);                           \
        return r;                                                    \
    }

    LIMITLAB_REAL_BINOP(+, mpfr_add)
    LIMITLAB_REAL_BINOP(-, mpfr_sub)
    LIMITLAB_REAL_BINOP(*, mpfr_mul)
    LIMITLAB_REAL_BINOP(/, mpfr_div)
#undef LIMITLAB_REAL_BINOP

    friend Real operator-(long a, const Real& b) {
        Real r = with_prec(b.prec());
        mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator+(long a, const Real& b) { return b + a; }
    friend Real operator*(long a, const Real& b) { return b * a; }
    friend Real operator/(long a, const Real& b) {
        Real r = with_prec(b.prec());
        mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }

  private:
    static Real with_prec(mpfr_prec_t prec) { return Real(raw_tag{}, prec); }
    struct raw_tag {};
    Real(raw_tag, mpfr_prec_t prec) { mpfr_init2(v_, prec); }

    mpfr_t v_;

    friend Real unary_op(int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t), const Real& a) {
        Real r = with_prec(a.prec());
        fn(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real binary_fn(int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t),
                          const Real& a, const Real& b) {
        Real r = with_prec(std::max(a.prec(), b.prec()));
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend struct real_detail_access;
};

inline Real exp(const Real& a) { return unary_op(mpfr_exp, a); }
inline Real log(const Real& a) { return unary_op(mpfr_log, a); }
inline Real log1p(const Real& a) { return unary_op(mpfr_log1p, a); }
inline Real expm1(const Real& a) { return unary_op(mpfr_expm1, a); }
inline Real sqrt(const Real& a) { return unary_op(mpfr_sqrt, a); }
inline Real abs(const Real& a) { return unary_op(mpfr_abs, a); }
inline Real pow(const Real& a, const Real& b) { return binary_fn(mpfr_pow, a, b); }

inline Real pow(const Real& a, long e) {
    Real r = a;  // placeholder for precision
    mpfr_pow_si(r.raw(), a.raw(), e, MPFR_RNDN);
    return r;
}

inline Real max(const Real& a, const Real& b) { return a >= b ? a : b; }
inline Real min(const Real& a, const Real& b) { return a <= b ? a : b; }

// 2^e at the precision of the context (handy for tolerances).
inline Real pow2(long e, const PrecisionContext& ctx) {
    Real r(1, ctx);
    mpfr_mul_2si(r.raw(), r.raw(), e, MPFR_RNDN);
    return r;
}

// floor(x) as a machine integer; x must fit a long.
inline long floor_to_long(const Real& x) {
    if (x.is_nan() || x.is_inf()) throw domain_violation("floor of non-finite value");
    Real f = x;
    mpfr_floor(f.raw(), x.raw());
    if (!mpfr_fits_slong_p(f.raw(), MPFR_RNDN))
        throw domain_violation("floor does not fit a machine integer");
    return mpfr_get_si(f.raw(), MPFR_RNDN);
}

// Signed log-magnitude representation: sign * exp(log_magnitude).
// Keeps quantities like n^n e^{-n}/n! representable far beyond any fixed
// exponent range; conversion back refuses to saturate.
class LogReal {
  public:
    static LogReal from_real(const Real& x) {
        if (x.is_nan()) throw domain_violation("LogReal of NaN");
        if (x.is_zero()) return LogReal(0, Real(PrecisionContext(x.prec() >= 64 ? x.prec() : 64, 0)));
        return LogReal(x.sgn() > 0 ? 1 : -1, log(abs(x)));
    }

    static LogReal from_rational(const BigRational& q, const PrecisionContext& ctx) {
        if (q == 0) return zero(ctx);
        PrecisionContext w = ctx.widened();
        BigRational aq = abs(q);
        Real ln = log(Real(aq, w));
        return LogReal(sgn(q) > 0 ? 1 : -1, ln.rounded(ctx.bits));
    }

    static LogReal from_log(int sign, Real log_magnitude) {
        if (sign < -1 || sign > 1) throw domain_violation("LogReal sign outside {-1,0,1}");
        return LogReal(sign, std::move(log_magnitude));
    }

    static LogReal zero(const PrecisionContext& ctx) { return LogReal(0, Real(ctx)); }

    int sign() const { return sign_; }
    const Real& log_magnitude() const { return logmag_; }

    friend LogReal operator*(const LogReal& a, const LogReal& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return LogReal(0, a.logmag_);
        return LogReal(a.sign_ * b.sign_, a.logmag_ + b.logmag_);
    }
    friend LogReal operator/(const LogReal& a, const LogReal& b) {
        if (b.sign_ == 0) throw domain_violation("LogReal division by zero");
        if (a.sign_ == 0) return LogReal(0, a.logmag_);
        return LogReal(a.sign_ * b.sign_, a.logmag_ - b.logmag_);
    }

    friend LogReal operator-(const LogReal& a) { return LogReal(-a.sign_, a.logmag_); }

    // log-sum-exp with sign; accuracy within 2^(8-bits) of the working
    // precision for representable magnitudes.
    friend LogReal operator+(const LogReal& a, const LogReal& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        const LogReal& big = (a.logmag_ >= b.logmag_) ? a : b;
        const LogReal& small = (a.logmag_ >= b.logmag_) ? b : a;
        Real d = small.logmag_ - big.logmag_;  // <= 0
        if (a.sign_ == b.sign_)
            return LogReal(big.sign_, big.logmag_ + log1p(exp(d)));
        if (a.logmag_ == b.logmag_) return LogReal(0, a.logmag_);
        Real lm = big.logmag_ + log1p(-exp(d));
        if (lm.is_inf() && lm.sgn() < 0) return LogReal(0, lm);  // cancelled to zero
        return LogReal(big.sign_, lm);
    }
    friend LogReal operator-(const LogReal& a, const LogReal& b) { return a + (-b); }

    LogReal pow_int(long k) const {
        if (sign_ == 0) {
            if (k <= 0) throw domain_violation("0 raised to a nonpositive power");
            return *this;
        }
        int s = (sign_ < 0 && (k % 2 != 0)) ? -1 : 1;
        return LogReal(s, logmag_ * k);
    }

    // Exact (correctly rounded) when the magnitude fits; throws instead of
    // silently returning 0 or infinity when it does not.
    Real to_real(const PrecisionContext& ctx) const {
        if (sign_ == 0) return Real(ctx);
        mpfr_clear_flags();
        Real m = exp(logmag_.rounded(ctx.working()));
        if (mpfr_overflow_p() || m.is_inf())
            throw out_of_range_conversion("LogReal magnitude overflows Real");
        if (mpfr_underflow_p() || m.is_zero())
            throw out_of_range_conversion("LogReal magnitude underflows Real");
        Real r = m.rounded(ctx.bits);
        return sign_ > 0 ? r : -r;
    }

  private:
    LogReal(int sign, Real logmag) : sign_(sign), logmag_(std::move(logmag)) {}

    int sign_;
    Real logmag_;
};

inline BigInt factorial(long n) {
    if (n < 0) throw domain_violation("factorial of a negative integer");
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

// C(n, j). Out-of-range j yields 0 rather than an error.
inline BigInt binomial(long n, long j) {
    if (n < 0) throw domain_violation("binomial with negative n");
    if (j < 0 || j > n) return BigInt(0);
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(j));
    return r;
}

// (n+1)(n+2)...(n+m); empty product for m = 0.
inline BigInt rising_product(long n, long m) {
    if (n < 1) throw domain_violation("rising_product requires n >= 1");
    if (m < 0) throw domain_violation("rising_product requires m >= 0");
    BigInt r(1);
    for (long i = 1; i <= m; ++i) mpz_mul_ui(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(n + i));
    return r;
}

namespace detail {
constexpr long kLogFactorialExactLimit = 1000000;
}

// ln(n!); from the exact integer up to 10^6, by summing ln k above that.
inline Real log_factorial(long n, const PrecisionContext& ctx) {
    if (n < 0) throw domain_violation("log_factorial of a negative integer");
    PrecisionContext w = ctx.widened();
    if (n <= detail::kLogFactorialExactLimit) {
        Real t(factorial(n), w);
        return log(t).rounded(ctx.bits);
    }
    Real acc = log(Real(factorial(detail::kLogFactorialExactLimit), w));
    for (long k = detail::kLogFactorialExactLimit + 1; k <= n; ++k) acc = acc + log(Real(k, w));
    return acc.rounded(ctx.bits);
}

struct Constants {
    Real e;
    Real pi;
    Real sqrt2pi;
    Real inv_sqrt2pi;
};

inline Constants constants(const PrecisionContext& ctx) {
    PrecisionContext w = ctx.widened();
    Real pi_w(w);
    mpfr_const_pi(pi_w.raw(), MPFR_RNDN);
    Real e_w = exp(Real(1, w));
    Real sqrt2pi_w = sqrt(pi_w * 2);
    return Constants{
        e_w.rounded(ctx.bits),
        pi_w.rounded(ctx.bits),
        sqrt2pi_w.rounded(ctx.bits),
        (1 / sqrt2pi_w).rounded(ctx.bits),
    };
}

// Best rational approximation with denominator below 2^max_den_bits,
// via continued-fraction convergents. The exact value is returned when its
// own denominator already fits.
inline BigRational rationalize(const Real& x, long max_den_bits = 64) {
    if (x.is_nan() || x.is_inf()) throw domain_violation("rationalize of non-finite value");
    BigRational exact;
    mpfr_get_q(exact.get_mpq_t(), x.raw());
    if (max_den_bits < 0) throw domain_violation("negative denominator bound");
    BigInt bound = int_pow(BigInt(2), static_cast<unsigned long>(max_den_bits));
    if (den(exact) <= bound) return exact;

    // convergents h_k/k_k with the usual (h_{-1},h_{-2}) = (1,0) seeding
    BigInt h_prev(0), k_prev(1), h(1), k(0);
    BigInt a, n = num(exact), d = den(exact);
    while (d != 0) {
        BigInt r;
        mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        BigInt h_next = a * h + h_prev;
        BigInt k_next = a * k + k_prev;
        if (k_next > bound) break;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        n = d;
        d = r;
    }
    return make_rational(h, k);
}

}  // namespace limitlab
