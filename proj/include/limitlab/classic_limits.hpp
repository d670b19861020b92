#pragma once

// The classical constants-in-the-limit sequences: the factorial ratio
// r_n = n!/(n^{n+1/2} e^{-n}), de Moivre's middle-binomial constant c_n,
// the Wallis partial product, the trapezoid-rule residual of log n!, and the
// scaled density of the uniform-sample median.

#include <optional>

#include "limitlab/exact_arith.hpp"

namespace limitlab {

struct ClassicSequencePoint {
    long n;
    std::optional<BigRational> exact;  // present when the quantity is rational
    Real value;
    Real target;
};

// r_n = n!/(n^{n+1/2} e^{-n}) -> sqrt(2 pi). Evaluated as
// exp(log n! - (n+1/2) log n + n); the direct quotient overflows doubles
// already near n = 170.
inline Real stirling_ratio(long n, const PrecisionContext& ctx) {
    if (n < 1) throw domain_violation("stirling_ratio requires n >= 1");
    PrecisionContext w = ctx.widened();
    Real ln_n = log(Real(n, w));
    Real half(BigRational(1, 2), w);
    Real lr = log_factorial(n, w) - (Real(n, w) + half) * ln_n + Real(n, w);
    return exp(lr).rounded(ctx.bits);
}

// Exact P(Y_2n = n) = C(2n,n) 2^(-2n) for a symmetric binomial.
inline BigRational middle_binomial_prob(long n) {
    if (n < 1) throw domain_violation("middle_binomial_prob requires n >= 1");
    return make_rational(binomial(2 * n, n), int_pow(BigInt(2), static_cast<unsigned long>(2 * n)));
}

// c_n = (1/2) sqrt(2n+1) C(2n,n) 2^(-2n) -> 1/sqrt(2 pi). The rational factor
// is exact so the Wallis identity below can be checked without rounding.
inline Real demoivre_cn(long n, const PrecisionContext& ctx) {
    if (n < 0) throw domain_violation("demoivre_cn requires n >= 0");
    PrecisionContext w = ctx.widened();
    BigRational rational_part =
        n == 0 ? BigRational(1)
               : make_rational(binomial(2 * n, n), int_pow(BigInt(2), static_cast<unsigned long>(2 * n)));
    Real v = Real(rational_part, w) * sqrt(Real(2 * n + 1, w)) / 2;
    return v.rounded(ctx.bits);
}

// w_n = prod_{j<=n} (2j)^2 / ((2j-1)(2j+1)), exactly; w_0 = 1.
inline BigRational wallis_partial(long n) {
    if (n < 0) throw domain_violation("wallis_partial requires n >= 0");
    BigRational w(1);
    for (long j = 1; j <= n; ++j) {
        BigInt sq = BigInt(2 * j) * BigInt(2 * j);
        w *= make_rational(sq, sq - 1);
    }
    return w;
}

// t_n = log n! - (1/2) log n - (n log n - n + 1). The limit is
// log sqrt(2 pi) - 1, not 0; the additive constant cancels whenever two
// applications of the trapezoid rule are subtracted.
inline Real trapezoid_residual(long n, const PrecisionContext& ctx) {
    if (n < 1) throw domain_violation("trapezoid_residual requires n >= 1");
    PrecisionContext w = ctx.widened();
    Real nn(n, w);
    Real ln_n = log(nn);
    Real v = log_factorial(n, w) - ln_n / 2 - (nn * ln_n - nn + 1);
    return v.rounded(ctx.bits);
}

// Density of Z_n = 2 sqrt(n) (M_n - 1/2) for the median M_n of n = 2m+1
// uniforms: (1/2) sqrt(n) C(2m,m) 2^(-2m) (1 - z^2/n)^m on |z| <= sqrt(n).
inline Real median_density_scaled(long m, const Real& z, const PrecisionContext& ctx) {
    if (m < 0) throw domain_violation("median_density_scaled requires m >= 0");
    long n = 2 * m + 1;
    PrecisionContext w = ctx.widened();
    Real zz = z.rounded(w.bits);
    if (zz * zz > Real(n, w)) throw domain_violation("median_density_scaled requires |z| <= sqrt(n)");
    BigRational rational_part =
        m == 0 ? BigRational(1)
               : make_rational(binomial(2 * m, m), int_pow(BigInt(2), static_cast<unsigned long>(2 * m)));
    Real base = 1 - zz * zz / Real(n, w);
    if (base.sgn() < 0) base = Real(w);  // |z| = sqrt(n) up to rounding
    Real v = Real(rational_part, w) * sqrt(Real(n, w)) * pow(base, m) / 2;
    return v.rounded(ctx.bits);
}

}  // namespace limitlab
