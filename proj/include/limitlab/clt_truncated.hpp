#pragma once

// Truncated means L_n(c) of standardized Poisson, Gamma and symmetric
// binomial sums, their telescoped closed forms, the finite-c ratio limits,
// the mean-absolute-deviation sequences, and symmetric random-walk return
// quantities. Closed forms run in log space; the brute-force twins accumulate
// exact rationals and certify their tails before truncating.

#include <cmath>
#include <optional>

#include "limitlab/exact_arith.hpp"

namespace limitlab {

enum class DistributionKind { poisson, gamma, binomial_half };

struct TruncatedMeanResult {
    long n;
    Real c;  // +infinity for the untruncated case
    Real closed_form;
    std::optional<Real> brute_force;
    Real target;
};

// L(c) = phi(0) - phi(c) = (2 pi)^{-1/2} (1 - e^{-c^2/2}); L(inf) = 1/sqrt(2 pi).
inline Real normal_L(const Real& c, const PrecisionContext& ctx) {
    if (c.is_nan() || c.sgn() < 0) throw domain_violation("normal_L requires c >= 0 or infinity");
    PrecisionContext w = ctx.widened();
    Constants k = constants(w);
    if (c.is_inf()) return k.inv_sqrt2pi.rounded(ctx.bits);
    Real cc = c.rounded(w.bits);
    Real v = k.inv_sqrt2pi * (-expm1(-cc * cc / 2));
    return v.rounded(ctx.bits);
}

namespace detail {

// floor(c * sqrt(n)) evaluated with guard bits.
inline long floor_c_sqrt_n(const Real& c, long n, const PrecisionContext& ctx) {
    PrecisionContext w = ctx.widened();
    return floor_to_long(c.rounded(w.bits) * sqrt(Real(n, w)));
}

// sqrt(n) e^{-n} n^n / n! in log space: the closed-form kernel shared by the
// Poisson and Gamma untruncated means.
inline Real poisson_kernel(long n, const PrecisionContext& w) {
    Real nn(n, w);
    return exp(log(nn) / 2 - nn + nn * log(nn) - log_factorial(n, w));
}

}  // namespace detail

// Closed form of L_n(c) for Y_n ~ Pois(n).
//   c = inf: sqrt(n) e^{-n} n^n/n!.
//   finite:  the same kernel times {1 - n^m / ((n+1)...(n+m))}, m = floor(c sqrt(n)),
// with the exact-rational bracket evaluated before any rounding.
inline Real poisson_Ln(long n, const Real& c, const PrecisionContext& ctx) {
    if (n < 1) throw domain_violation("poisson_Ln requires n >= 1");
    if (c.sgn() <= 0) throw domain_violation("poisson_Ln requires c > 0");
    PrecisionContext w = ctx.widened();
    Real kernel = detail::poisson_kernel(n, w);
    if (c.is_inf()) return kernel.rounded(ctx.bits);
    long m = detail::floor_c_sqrt_n(c, n, ctx);
    if (m <= 0) return Real(ctx);
    BigRational ratio = make_rational(int_pow(BigInt(n), static_cast<unsigned long>(m)),
                                      rising_product(n, m));
    Real v = kernel * (1 - Real(ratio, w));
    return v.rounded(ctx.bits);
}

// Direct-summation oracle for poisson_Ln: sum_{n<=j<=n+m} ((j-n)/sqrt(n)) p_n(j)
// with p_n(j) = e^{-n} n^j / j!. The sum over (j-n) n^j/j! is accumulated as
// an exact rational; only the final e^{-n}/sqrt(n) scaling rounds. For c = inf
// the series is truncated once the next term is below 2^{-bits/2} of the
// running sum AND the geometric tail bound certifies the remainder below the
// same threshold (term-size alone under-truncates for large n).
inline Real poisson_Ln_bruteforce(long n, const Real& c, const PrecisionContext& ctx) {
    if (n < 1) throw domain_violation("poisson_Ln_bruteforce requires n >= 1");
    if (c.sgn() <= 0) throw domain_violation("poisson_Ln_bruteforce requires c > 0");
    PrecisionContext w = ctx.widened();
    BigRational sum(0);
    BigInt npow = int_pow(BigInt(n), static_cast<unsigned long>(n));
    BigInt jfact = factorial(n);
    if (!c.is_inf()) {
        long m = detail::floor_c_sqrt_n(c, n, ctx);
        for (long j = n + 1; j <= n + m; ++j) {
            npow *= n;
            jfact *= j;
            sum += make_rational(BigInt(j - n) * npow, jfact);
        }
    } else {
        Real eps = pow2(-(ctx.bits / 2), w);
        long j = n;
        long hard_cap = n + 400 + 200 * (static_cast<long>(std::sqrt(static_cast<double>(n))) + 1);
        while (true) {
            ++j;
            if (j > hard_cap) throw lab_error("poisson tail failed to certify");
            npow *= n;
            jfact *= j;
            BigRational term = make_rational(BigInt(j - n) * npow, jfact);
            sum += term;
            // t_{j+1}/t_j <= rho for all later terms once rho < 1
            Real rho = Real(make_rational(BigInt(n) * (j + 1 - n), BigInt(j + 1) * (j - n)), w);
            if (rho < Real(1, w)) {
                Real t(term, w);
                Real s(sum, w);
                Real tail_bound = t * rho / (1 - rho);
                if (t <= eps * s && tail_bound <= eps * s) break;
            }
        }
    }
    Real v = Real(sum, w) * exp(Real(-n, w)) / sqrt(Real(n, w));
    return v.rounded(ctx.bits);
}

inline BigRational poisson_product_ratio_exact(long n, const Real& c, const PrecisionContext& ctx) {
    if (n < 1) throw domain_violation("poisson_product_ratio requires n >= 1");
    if (c.sgn() <= 0 || c.is_inf()) throw domain_violation("poisson_product_ratio requires finite c > 0");
    long m = detail::floor_c_sqrt_n(c, n, ctx);
    if (m <= 0) return BigRational(1);
    return make_rational(int_pow(BigInt(n), static_cast<unsigned long>(m)), rising_product(n, m));
}

// n^m / ((n+1)...(n+m)), m = floor(c sqrt(n)) -> e^{-c^2/2}.
inline Real poisson_product_ratio(long n, const Real& c, const PrecisionContext& ctx) {
    return Real(poisson_product_ratio_exact(n, c, ctx), ctx);
}

// E|Y_n - n| = 2 e^{-n} n^{n+1} / n! for Y_n ~ Pois(n), in log space.
inline Real poisson_mad(long n, const PrecisionContext& ctx) {
    if (n < 1) throw domain_violation("poisson_mad requires n >= 1");
    PrecisionContext w = ctx.widened();
    Real nn(n, w);
    Real v = exp(log(Real(2, w)) - nn + (nn + 1) * log(nn) - log_factorial(n, w));
    return v.rounded(ctx.bits);
}

// Brute-force twin: sum |j-n| p_n(j) over all j, lower part exactly, upper
// part with the same certified tail bound as poisson_Ln_bruteforce.
inline Real poisson_mad_bruteforce(long n, const PrecisionContext& ctx) {
    if (n < 1) throw domain_violation("poisson_mad_bruteforce requires n >= 1");
    PrecisionContext w = ctx.widened();
    BigRational sum(0);
    BigInt npow(1);
    BigInt jfact(1);
    for (long j = 0; j < n; ++j) {  // j = n contributes zero
        sum += make_rational(BigInt(n - j) * npow, jfact);
        npow *= n;
        jfact *= (j + 1);
    }
    // at loop exit npow = n^n, jfact = n!
    Real eps = pow2(-(ctx.bits / 2), w);
    long j = n;
    long hard_cap = n + 400 + 200 * (static_cast<long>(std::sqrt(static_cast<double>(n))) + 1);
    while (true) {
        ++j;
        if (j > hard_cap) throw lab_error("poisson tail failed to certify");
        npow *= n;
        jfact *= j;
        BigRational term = make_rational(BigInt(j - n) * npow, jfact);
        sum += term;
        Real rho = Real(make_rational(BigInt(n) * (j + 1 - n), BigInt(j + 1) * (j - n)), w);
        if (rho < Real(1, w)) {
            Real t(term, w);
            Real s(sum, w);
            if (t <= eps * s && t * rho / (1 - rho) <= eps * s) break;
        }
    }
    Real v = Real(sum, w) * exp(Real(-n, w));
    return v.rounded(ctx.bits);
}

// L_n(inf) for Y_n ~ Gamma(n,1): the same kernel sqrt(n) e^{-n} n^n/n!.
// Its limit is 1/sqrt(2 pi) by L(inf) = phi(0).
inline Real gamma_Ln_inf(long n, const PrecisionContext& ctx) {
    if (n < 1) throw domain_violation("gamma_Ln_inf requires n >= 1");
    PrecisionContext w = ctx.widened();
    return detail::poisson_kernel(n, w).rounded(ctx.bits);
}

// e^{-c sqrt(n)} (1 + c/sqrt(n))^n -> e^{-c^2/2}, computed as
// exp(n log1p(c/sqrt(n)) - c sqrt(n)) to avoid cancellation.
inline Real gamma_exp_ratio(long n, const Real& c, const PrecisionContext& ctx) {
    if (n < 1) throw domain_violation("gamma_exp_ratio requires n >= 1");
    if (c.sgn() <= 0 || c.is_inf()) throw domain_violation("gamma_exp_ratio requires finite c > 0");
    PrecisionContext w = ctx.widened();
    Real cc = c.rounded(w.bits);
    Real sq = sqrt(Real(n, w));
    Real v = exp(Real(n, w) * log1p(cc / sq) - cc * sq);
    return v.rounded(ctx.bits);
}

// x g_n(x) / g_{n+1}(x) for the Gamma(n,1) densities, in log space; the
// algebraic value is exactly n.
inline Real gamma_identity_check(long n, const Real& x, const PrecisionContext& ctx) {
    if (n < 1) throw domain_violation("gamma_identity_check requires n >= 1");
    if (x.sgn() <= 0) throw domain_violation("gamma_identity_check requires x > 0");
    PrecisionContext w = ctx.widened();
    Real lx = log(x.rounded(w.bits));
    Real log_gn = (n - 1) * lx - x.rounded(w.bits) - log_factorial(n - 1, w);
    Real log_gn1 = Real(n, w) * lx - x.rounded(w.bits) - log_factorial(n, w);
    return exp(lx + log_gn - log_gn1).rounded(ctx.bits);
}

// Exact sum_{j>=n/2} (j - n/2) b_n(j) by direct enumeration; the telescoped
// value is n/4 * b_{n-1}(n/2-1).
inline BigRational binomial_Ln_sum_exact(long n) {
    if (n < 2 || n % 2 != 0) throw domain_violation("binomial sums require even n >= 2");
    BigRational sum(0);
    BigInt two_n = int_pow(BigInt(2), static_cast<unsigned long>(n));
    for (long j = n / 2; j <= n; ++j) {
        sum += make_rational(BigInt(2 * j - n) * binomial(n, j), BigInt(2) * two_n);
    }
    return sum;
}

struct BinomialTruncatedMean {
    Real printed_form;  // (1/2) sqrt(n) { b_{n-1}(n/2-1) - (1/2)^{n-1} }
    Real exact_form;    // (1/2) sqrt(n) b_{n-1}(n/2-1): the full telescoped sum
};

// L_n(inf) for the symmetric binomial, n even. The printed closed form drops
// the j = n boundary term n/4 (1/2)^{n-1}; the exact telescoped sum keeps it.
// Both converge to 1/sqrt(2 pi); the exact form is the authoritative one.
inline BinomialTruncatedMean binomial_Ln_inf(long n, const PrecisionContext& ctx) {
    if (n < 2 || n % 2 != 0) throw domain_violation("binomial_Ln_inf requires even n >= 2");
    PrecisionContext w = ctx.widened();
    BigRational b_edge = make_rational(binomial(n - 1, n / 2 - 1),
                                       int_pow(BigInt(2), static_cast<unsigned long>(n - 1)));
    BigRational half_pow = make_rational(BigInt(1), int_pow(BigInt(2), static_cast<unsigned long>(n - 1)));
    Real half_sqrt_n = sqrt(Real(n, w)) / 2;
    return BinomialTruncatedMean{
        (half_sqrt_n * Real(b_edge - half_pow, w)).rounded(ctx.bits),
        (half_sqrt_n * Real(b_edge, w)).rounded(ctx.bits),
    };
}

// C(n, floor(n/2 + c sqrt(n)/2)) / C(n, floor(n/2)) -> e^{-c^2/2}, exactly.
inline BigRational binomial_ratio(long n, const Real& c) {
    if (n < 1) throw domain_violation("binomial_ratio requires n >= 1");
    if (c.sgn() <= 0 || c.is_inf()) throw domain_violation("binomial_ratio requires finite c > 0");
    PrecisionContext w(std::max<mpfr_prec_t>(c.prec(), 128), 32);
    Real idx = Real(n, w) / 2 + c.rounded(w.bits) * sqrt(Real(n, w)) / 2;
    long j = floor_to_long(idx);
    if (j > n) throw domain_violation("binomial_ratio: c too large for this n");
    return make_rational(binomial(n, j), binomial(n, n / 2));
}

// d_n = sqrt(n) C(n-1, n/2-1) (1/2)^n, the scaled binomial mean-absolute-
// deviation at p = 1/2; d_n -> 1/sqrt(2 pi).
inline Real binomial_mad_dn(long n, const PrecisionContext& ctx) {
    if (n < 2 || n % 2 != 0) throw domain_violation("binomial_mad_dn requires even n >= 2");
    PrecisionContext w = ctx.widened();
    BigRational q = make_rational(binomial(n - 1, n / 2 - 1),
                                  int_pow(BigInt(2), static_cast<unsigned long>(n)));
    return (sqrt(Real(n, w)) * Real(q, w)).rounded(ctx.bits);
}

namespace detail {

// Exact D_n(p) = sum_j |j/n - p| C(n,j) p^j (1-p)^{n-j}.
inline BigRational binomial_mad_risk(long n, const BigRational& p) {
    BigRational q = 1 - p;
    std::vector<BigRational> ppow(static_cast<size_t>(n) + 1, BigRational(1));
    std::vector<BigRational> qpow(static_cast<size_t>(n) + 1, BigRational(1));
    for (long j = 1; j <= n; ++j) {
        ppow[static_cast<size_t>(j)] = ppow[static_cast<size_t>(j - 1)] * p;
        qpow[static_cast<size_t>(j)] = qpow[static_cast<size_t>(j - 1)] * q;
    }
    BigRational acc(0);
    for (long j = 0; j <= n; ++j) {
        BigRational dev = abs(make_rational(BigInt(j), BigInt(n)) - p);
        acc += dev * BigRational(binomial(n, j)) * ppow[static_cast<size_t>(j)] *
               qpow[static_cast<size_t>(n - j)];
    }
    return acc;
}

}  // namespace detail

// Grid oracle for max_p D_n(p): exact evaluation on a rational grid of
// grid_size points over [0,1], then 3 local refinement rounds at 10x density
// around the best point. Returns sqrt(n) times the grid maximum (a certified
// lower bound for sqrt(n) sup_p D_n(p)).
inline Real binomial_mad_max(long n, long grid_size, const PrecisionContext& ctx,
                             int refine_rounds = 3) {
    if (n < 2 || n % 2 != 0) throw domain_violation("binomial_mad_max requires even n >= 2");
    if (grid_size < 3) throw domain_violation("binomial_mad_max requires grid_size >= 3");
    BigRational step = make_rational(BigInt(1), BigInt(grid_size - 1));
    BigRational best_p(0);
    BigRational best = detail::binomial_mad_risk(n, best_p);
    for (long i = 1; i < grid_size; ++i) {
        BigRational p = BigRational(i) * step;
        BigRational v = detail::binomial_mad_risk(n, p);
        if (v > best) {
            best = v;
            best_p = p;
        }
    }
    for (int round = 0; round < refine_rounds; ++round) {
        step /= 10;
        BigRational lo = best_p - 10 * step;
        for (long i = 0; i <= 20; ++i) {
            BigRational p = lo + BigRational(i) * step;
            if (p < 0 || p > 1) continue;
            BigRational v = detail::binomial_mad_risk(n, p);
            if (v > best) {
                best = v;
                best_p = p;
            }
        }
    }
    PrecisionContext w = ctx.widened();
    return (sqrt(Real(n, w)) * Real(best, w)).rounded(ctx.bits);
}

// p_n = P(Y_2n = 0) = C(2n,n) (1/2)^{2n} for the symmetric random walk.
inline BigRational random_walk_return(long n) {
    if (n < 1) throw domain_violation("random_walk_return requires n >= 1");
    return make_rational(binomial(2 * n, n), int_pow(BigInt(4), static_cast<unsigned long>(n)));
}

// E N_{2n} = sum_{i=1}^n p_i, exactly.
inline BigRational random_walk_expected_visits(long n) {
    if (n < 1) throw domain_violation("random_walk_expected_visits requires n >= 1");
    BigInt central(2);  // C(2i, i) at i = 1
    BigInt numerator(2);  // running sum scaled by 4^i
    for (long i = 2; i <= n; ++i) {
        central *= BigInt(2) * (2 * i - 1);
        mpz_divexact_ui(central.get_mpz_t(), central.get_mpz_t(), static_cast<unsigned long>(i));
        numerator = numerator * 4 + central;
    }
    return make_rational(numerator, int_pow(BigInt(4), static_cast<unsigned long>(n)));
}

// Convenience bundle for reporting: closed form, optional brute force, and
// the CLT target for the given truncation.
inline TruncatedMeanResult truncated_mean(DistributionKind kind, long n, const Real& c,
                                          bool with_brute_force, const PrecisionContext& ctx) {
    Real target = normal_L(c, ctx);
    switch (kind) {
        case DistributionKind::poisson: {
            Real closed = poisson_Ln(n, c, ctx);
            std::optional<Real> brute;
            if (with_brute_force) brute = poisson_Ln_bruteforce(n, c, ctx);
            return TruncatedMeanResult{n, c, closed, brute, target};
        }
        case DistributionKind::gamma: {
            if (!c.is_inf()) throw domain_violation("gamma truncated mean implemented for c = inf only");
            return TruncatedMeanResult{n, c, gamma_Ln_inf(n, ctx), std::nullopt, target};
        }
        case DistributionKind::binomial_half: {
            if (!c.is_inf()) throw domain_violation("binomial truncated mean implemented for c = inf only");
            BinomialTruncatedMean m = binomial_Ln_inf(n, ctx);
            return TruncatedMeanResult{n, c, m.printed_form, m.exact_form, target};
        }
    }
    throw lab_error("unreachable distribution kind");
}

}  // namespace limitlab
