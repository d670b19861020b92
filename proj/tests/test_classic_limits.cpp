#include <random>

#include "limitlab/classic_limits.hpp"
#include "limitlab/laplace_bic.hpp"
#include "test_support.hpp"

using namespace limitlab;
using lltest::Q;
using lltest::require_abs;
using lltest::require_rel;

TEST_CASE("stirling ratio values") {
    PrecisionContext ctx;
    require_rel(stirling_ratio(1, ctx), "2.718281828459045235360287471352662497757");
    require_rel(stirling_ratio(2, ctx), "2.612425837060839873664149716516936304917");
    CHECK_THROWS_AS(stirling_ratio(0, ctx), domain_violation);
}

TEST_CASE("stirling ratio decreases and stays above sqrt(2 pi)") {
    PrecisionContext ctx;
    Real sqrt2pi = constants(ctx).sqrt2pi;
    Real prev = stirling_ratio(1, ctx);
    for (long n = 2; n <= 200; ++n) {
        Real cur = stirling_ratio(n, ctx);
        REQUIRE(cur < prev);
        REQUIRE(cur > sqrt2pi);
        prev = cur;
    }
}

TEST_CASE("demoivre c_n") {
    PrecisionContext ctx;
    require_rel(demoivre_cn(0, ctx), "0.5");
    require_rel(demoivre_cn(1, ctx), "0.4330127018922193233818615853764680917357");
}

TEST_CASE("middle binomial probabilities") {
    PrecisionContext ctx;
    CHECK(middle_binomial_prob(1) == Q(1, 2));
    CHECK(middle_binomial_prob(2) == Q(3, 8));
    CHECK(middle_binomial_prob(10) == Q(46189, 262144));
    // against the asymptotic value 1/sqrt(pi n) at n = 10
    Real v(middle_binomial_prob(10), ctx);
    require_abs(v, "0.1784124116152771114538966372565082590394", "3e-3");
}

TEST_CASE("wallis partial products") {
    CHECK(wallis_partial(0) == BigRational(1));
    CHECK(wallis_partial(1) == Q(4, 3));
    CHECK(wallis_partial(2) == Q(64, 45));
}

TEST_CASE("wallis partials increase strictly and stay below pi/2") {
    PrecisionContext ctx;
    Real half_pi = constants(ctx.widened()).pi / 2;
    BigRational w(1);
    BigRational prev(0);
    for (long j = 1; j <= 10000; ++j) {
        BigInt sq = BigInt(2 * j) * BigInt(2 * j);
        w *= make_rational(sq, sq - 1);
        REQUIRE(w > prev);
        REQUIRE(Real(w, ctx) < half_pi);
        prev = w;
    }
    CHECK(w == wallis_partial(10000));
}

TEST_CASE("wallis-demoivre exact identity w_n (2n+1) (C(2n,n) 2^-2n)^2 = 1") {
    PrecisionContext ctx;
    BigRational w(1);
    for (long n = 1; n <= 500; ++n) {
        BigInt sq = BigInt(2 * n) * BigInt(2 * n);
        w *= make_rational(sq, sq - 1);
        BigRational p = middle_binomial_prob(n);
        REQUIRE(w * BigRational(2 * n + 1) * p * p == 1);
    }
    // consequence in Real arithmetic: 1/sqrt(w_n) = sqrt(2n+1) C(2n,n) 2^-2n
    for (long n : {10L, 100L, 500L}) {
        Real lhs = 1 / sqrt(Real(wallis_partial(n), ctx));
        Real rhs = sqrt(Real(2 * n + 1, ctx)) * Real(middle_binomial_prob(n), ctx);
        REQUIRE(abs(lhs - rhs) <= pow2(8 - ctx.bits, ctx) * abs(rhs));
    }
}

TEST_CASE("trapezoid residual") {
    PrecisionContext ctx;
    CHECK(trapezoid_residual(1, ctx).is_zero());
    require_rel(trapezoid_residual(10, ctx), "-0.07273090336196438696320094493475380792931");
    // limit constant log(sqrt(2 pi)) - 1
    require_abs(trapezoid_residual(100000, ctx), "-0.08106146679532725821967026359438236013860",
                "1e-6");
}

TEST_CASE("median density values and domain") {
    PrecisionContext ctx;
    require_rel(median_density_scaled(0, Real(0, ctx), ctx), "0.5");
    require_rel(median_density_scaled(1, Real(0, ctx), ctx),
                "0.4330127018922193233818615853764680917357");
    CHECK_THROWS_AS(median_density_scaled(1, Real(2, ctx), ctx), domain_violation);
    CHECK(median_density_scaled(0, Real(1, ctx), ctx).is_zero() == false);
}

TEST_CASE("median density integrates to one") {
    PrecisionContext ctx;
    PrecisionContext w = ctx.widened();
    QuadratureConfig cfg = QuadratureConfig::defaults(ctx);
    for (long m : {1L, 5L, 20L}) {
        long n = 2 * m + 1;
        LaplaceProblem problem{
            [m, n](const Real& z) {
                PrecisionContext cw(z.prec(), 0);
                if (z * z >= Real(n, cw)) return -Real::infinity(cw);
                return log(median_density_scaled(m, z, cw));
            },
            nullptr,
            nullptr,
            -sqrt(Real(n, w)),
            sqrt(Real(n, w)),
            Real(0, w)};
        Real integral = integrate_exp(problem, cfg, ctx);
        REQUIRE(abs(integral - Real(1, ctx)) < Real("1e-20", ctx));
    }
}

TEST_CASE("(1 - z^2/n)^m at z=1 approaches exp(-1/2) with shrinking error") {
    PrecisionContext ctx;
    Real target("0.6065306597126334236037995349911804534419", ctx);
    Real prev_err(ctx);
    bool first = true;
    for (long m : {10L, 100L, 1000L}) {
        Real v = pow(1 - Real(1, ctx) / Real(2 * m + 1, ctx), m);
        Real err = abs(v - target);
        if (!first) REQUIRE(err < prev_err);
        prev_err = err;
        first = false;
    }
}

TEST_CASE("ClassicSequencePoint exact-vs-value invariant") {
    PrecisionContext ctx;
    for (long n : {1L, 7L, 50L}) {
        BigRational w = wallis_partial(n);
        ClassicSequencePoint pt{n, w, Real(w, ctx), constants(ctx).pi / 2};
        REQUIRE(abs(pt.value - Real(*pt.exact, ctx)) <= pow2(4 - ctx.bits, ctx) * abs(pt.value));
    }
}
