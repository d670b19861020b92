#pragma once

// Irwin-Hall distribution (sum of n independent uniforms on (0,1)): exact
// piecewise-polynomial density and cdf, exact truncated moments, and the
// scaled sequences they feed. Every alternating sum here is evaluated in
// exact integer arithmetic: the b_n sum is of order e^{-n} relative to its
// largest term, so any fixed-precision path loses all digits near n ~ 40.

#include "limitlab/exact_arith.hpp"

namespace limitlab {

struct IrwinHallDist {
    long n;                          // number of summed uniforms; support [0, n]
    BigRational xi{1, 2};            // mean per uniform
    BigRational sigma_sq{1, 12};     // variance per uniform

    explicit IrwinHallDist(long n_) : n(n_) {
        if (n < 1) throw domain_violation("IrwinHallDist requires n >= 1");
    }
};

namespace detail {

inline BigInt floor_rational(const BigRational& y) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), num(y).get_mpz_t(), den(y).get_mpz_t());
    return q;
}

}  // namespace detail

// f_n(y) = (1/(n-1)!) sum_{j<=floor(y)} (-1)^j C(n,j) (y-j)^{n-1}, exactly.
// Zero outside [0, n].
inline BigRational density(const IrwinHallDist& dist, const BigRational& y) {
    long n = dist.n;
    if (y < 0 || y > n) return BigRational(0);
    long top = detail::floor_rational(y).get_si();
    if (top > n) top = n;
    BigRational acc(0);
    for (long j = 0; j <= top; ++j) {
        BigRational term = binomial(n, j) * rational_pow(y - j, n - 1);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc / BigRational(factorial(n - 1));
}

// F_n(y) = (1/n!) sum_{j<=floor(y)} (-1)^j C(n,j) (y-j)^n, clamped outside [0,n].
inline BigRational cdf(const IrwinHallDist& dist, const BigRational& y) {
    long n = dist.n;
    if (y < 0) return BigRational(0);
    if (y > n) return BigRational(1);
    long top = detail::floor_rational(y).get_si();
    if (top > n) top = n;
    BigRational acc(0);
    for (long j = 0; j <= top; ++j) {
        BigRational term = binomial(n, j) * rational_pow(y - j, n);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc / BigRational(factorial(n));
}

namespace detail {
// Exact alternating integer sums shared by s_n and b_n.
// T(n) = sum_{j=0}^{n/2} (-1)^j C(n,j) (n-2j)^{n+1}; requires n even.
inline BigInt irwin_hall_alternating_T(long n) {
    if (n < 2 || n % 2 != 0) throw domain_violation("even n >= 2 required");
    BigInt acc(0);
    BigInt coeff(1);  // C(n, j), updated multiplicatively
    for (long j = 0; j <= n / 2; ++j) {
        BigInt term = coeff * int_pow(BigInt(n - 2 * j), static_cast<unsigned long>(n + 1));
        acc += (j % 2 == 0) ? term : -term;
        coeff = coeff * (n - j) / (j + 1);
    }
    return acc;
}

constexpr long kExactArithmeticLimit = 512;  // CLI refuses beyond this; tests stay well under
}  // namespace detail

// s_n = int_0^{n/2} F_n = (1/(n+1)!) sum_j (-1)^j C(n,j) (n/2-j)^{n+1}, n even.
inline BigRational truncated_moment_sn(long n) {
    if (n < 2 || n % 2 != 0) throw domain_violation("truncated_moment_sn requires even n >= 2");
    // (n/2-j)^{n+1} = (n-2j)^{n+1} / 2^{n+1} with integer numerators
    BigInt t = detail::irwin_hall_alternating_T(n);
    return make_rational(t, factorial(n + 1) * int_pow(BigInt(2), static_cast<unsigned long>(n + 1)));
}

// I_n = int_0^{n/2} y f_n(y) dy = n/4 - s_n, n even.
inline BigRational truncated_moment_In(long n) {
    if (n < 2 || n % 2 != 0) throw domain_violation("truncated_moment_In requires even n >= 2");
    return make_rational(BigInt(n), BigInt(4)) - truncated_moment_sn(n);
}

// Independent oracle: int_0^upper y f_n(y) dy by exact antidifferentiation of
// the (n-1)-degree polynomial pieces over each knot interval [k, k+1].
inline BigRational first_moment_piecewise_exact(long n, const BigRational& upper) {
    if (n < 2) throw domain_violation("piecewise moment requires n >= 2");
    if (upper < 0 || upper > n) throw domain_violation("upper limit outside [0, n]");
    BigRational total(0);
    BigRational nfact1(factorial(n - 1));
    for (long k = 0; BigRational(k) < upper; ++k) {
        BigRational hi = std::min(BigRational(k + 1), upper);
        for (long j = 0; j <= k; ++j) {
            // int y (y-j)^{n-1} dy = (y-j)^{n+1}/(n+1) + j (y-j)^n / n
            BigRational a = BigRational(k) - j;
            BigRational b = hi - j;
            BigRational piece = (rational_pow(b, n + 1) - rational_pow(a, n + 1)) / BigRational(n + 1) +
                                j * (rational_pow(b, n) - rational_pow(a, n)) / BigRational(n);
            BigRational term = BigRational(binomial(n, j)) * piece / nfact1;
            total += (j % 2 == 0) ? term : -term;
        }
    }
    return total;
}

inline BigRational quadrature_oracle_In_exact(long n) {
    return first_moment_piecewise_exact(n, make_rational(BigInt(n), BigInt(2)));
}

inline Real quadrature_oracle_In(long n, const PrecisionContext& ctx) {
    return Real(quadrature_oracle_In_exact(n), ctx);
}

// s_n / sqrt(n) -> sigma / sqrt(2 pi) = 1/sqrt(24 pi).
inline Real scaled_sn(long n, const PrecisionContext& ctx) {
    PrecisionContext w = ctx.widened();
    Real v = Real(truncated_moment_sn(n), w) / sqrt(Real(n, w));
    return v.rounded(ctx.bits);
}

struct BnTerm {
    Real bn;                       // (1/2) e^n/(n+1) * S  -> sigma = 1/sqrt(12)
    Real final_display;            // (1/n) e^n * S        -> 1/sqrt(3)
    BigRational alternating_sum;   // S = sum_j (-1)^j C(n,j) (1/2)^n (1-2j/n)^{n+1}, exact
};

inline BnTerm bn_term(long n, const PrecisionContext& ctx) {
    if (n < 2 || n % 2 != 0) throw domain_violation("bn_term requires even n >= 2");
    PrecisionContext w = ctx.widened();
    BigInt t = detail::irwin_hall_alternating_T(n);
    BigRational S = make_rational(
        t, int_pow(BigInt(2), static_cast<unsigned long>(n)) * int_pow(BigInt(n), static_cast<unsigned long>(n + 1)));
    Real en = exp(Real(n, w));
    Real s_real(S, w);
    Real bn = (en * s_real / (n + 1)) / 2;
    Real variant = en * s_real / n;
    return BnTerm{bn.rounded(ctx.bits), variant.rounded(ctx.bits), S};
}

}  // namespace limitlab
