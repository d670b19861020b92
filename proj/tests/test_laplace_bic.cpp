#include "limitlab/laplace_bic.hpp"
#include "test_support.hpp"

using namespace limitlab;
using lltest::Q;
using lltest::require_abs;
using lltest::require_rel;

namespace {

LaplaceProblem gamma_problem(long n, const PrecisionContext& w, bool with_derivs = true) {
    LaplaceProblem p{
        [n](const Real& x) { return n * log(x) - x; },
        nullptr,
        nullptr,
        Real(0, w),
        Real::infinity(w),
        // a deliberately off-center start; Newton still has to travel
        Real(n, w) * 2 + 3,
    };
    if (with_derivs) {
        p.first_deriv = [n](const Real& x) { return n / x - 1; };
        p.second_deriv = [n](const Real& x) { return -(n / (x * x)); };
    }
    return p;
}

LaplaceProblem gaussian_problem(const PrecisionContext& w) {
    return LaplaceProblem{
        [](const Real& x) { return -(x * x) / 2; },
        [](const Real& x) { return -x; },
        [](const Real& x) { return Real(-1, PrecisionContext(std::max<mpfr_prec_t>(x.prec(), 64), 0)); },
        -Real::infinity(w),
        Real::infinity(w),
        Real(Q(7, 10), w),
    };
}

}  // namespace

TEST_CASE("find_mode on the gamma integrand") {
    PrecisionContext ctx;
    for (long n : {1L, 10L, 100L}) {
        ModeResult mode = find_mode(gamma_problem(n, ctx.widened()), ctx);
        REQUIRE(abs(mode.x0 - Real(n, ctx)) <= pow2(-(ctx.bits / 2), ctx) * Real(n, ctx));
        // g_max = n log n - n and c = 1/n
        PrecisionContext w = ctx.widened();
        Real gmax_expected = Real(n, w) * log(Real(n, w)) - Real(n, w);
        REQUIRE(abs(mode.g_max - gmax_expected) <= Real("1e-60", ctx) * (1 + abs(gmax_expected)));
        REQUIRE(abs(mode.curvature - 1 / Real(n, w)) <= Real("1e-60", ctx));
    }
}

TEST_CASE("find_mode on quadratics") {
    PrecisionContext ctx;
    PrecisionContext w = ctx.widened();
    ModeResult g = find_mode(gaussian_problem(w), ctx);
    CHECK(abs(g.x0) < Real("1e-35", ctx));
    require_rel(g.curvature, "1");
    LaplaceProblem shifted{
        [](const Real& x) { return -(x - 3) * (x - 3) * 2; },
        nullptr,
        nullptr,
        -Real::infinity(w),
        Real::infinity(w),
        Real(0, w),
    };
    ModeResult s = find_mode(shifted, ctx);
    require_rel(s.x0, "3", "1e-30");
    require_rel(s.curvature, "4", "1e-30");
}

TEST_CASE("finite-difference fallback tracks analytic derivatives") {
    PrecisionContext ctx;
    ModeResult with = find_mode(gamma_problem(10, ctx.widened(), true), ctx);
    ModeResult without = find_mode(gamma_problem(10, ctx.widened(), false), ctx);
    REQUIRE(abs(with.x0 - without.x0) <= pow2(-(ctx.bits / 4), ctx) * abs(with.x0));
}

TEST_CASE("find_mode error cases") {
    PrecisionContext ctx;
    PrecisionContext w = ctx.widened();
    // maximum at the boundary of the allowed region: gradient never vanishes
    LaplaceProblem monotone{
        [](const Real& x) { return x; },
        [](const Real& x) { return Real(1, PrecisionContext(std::max<mpfr_prec_t>(x.prec(), 64), 0)); },
        [](const Real& x) { return Real(0, PrecisionContext(std::max<mpfr_prec_t>(x.prec(), 64), 0)); },
        Real(0, w),
        Real(1, w),
        Real(Q(1, 2), w),
    };
    CHECK_THROWS_AS(find_mode(monotone, ctx), no_convergence);
    // a clean minimum instead of a maximum
    LaplaceProblem valley{
        [](const Real& x) { return (x - 1) * (x - 1); },
        [](const Real& x) { return 2 * (x - 1); },
        [](const Real& x) { return Real(2, PrecisionContext(std::max<mpfr_prec_t>(x.prec(), 64), 0)); },
        -Real::infinity(w),
        Real::infinity(w),
        Real(1, w),
    };
    CHECK_THROWS_AS(find_mode(valley, ctx), negative_curvature);
}

TEST_CASE("laplace approximation closed forms") {
    PrecisionContext ctx;
    // exact for a pure Gaussian
    require_rel(laplace_approx(gaussian_problem(ctx.widened()), ctx),
                "2.506628274631000502415765284811045253007");
    // gamma case n = 10: 10^10 e^-10 sqrt(20 pi)
    require_rel(laplace_approx(gamma_problem(10, ctx.widened()), ctx),
                "3598695.618741035921623175932829242053026");
    Real ratio = Real(factorial(10), ctx) / laplace_approx(gamma_problem(10, ctx.widened()), ctx);
    require_rel(ratio, "1.008365359132400245905553271364425980551");
}

TEST_CASE("gamma ratio sits inside the Robbins envelope") {
    PrecisionContext ctx;
    PrecisionContext w = ctx.widened();
    for (long n : {5L, 10L, 50L, 100L, 500L}) {
        Real ratio = Real(factorial(n), w) / laplace_approx(gamma_problem(n, w), w);
        Real lo = exp(1 / Real(12 * n + 1, w));
        Real hi = exp(1 / Real(12 * n, w));
        REQUIRE(lo < ratio);
        REQUIRE(ratio < hi);
    }
}

TEST_CASE("adaptive Simpson integrates the Gaussian at default tolerance") {
    PrecisionContext ctx;
    QuadratureConfig cfg = QuadratureConfig::defaults(ctx);
    Real v = integrate_exp(gaussian_problem(ctx.widened()), cfg, ctx);
    // achieved accuracy at the 2^-64 default tolerance, measured by pilot;
    // the tail cut at Lambda = 60 contributes ~1e-27
    require_abs(v, "2.506628274631000502415765284811045253007", "5e-21");
}

TEST_CASE("adaptive Simpson reproduces 10! at default tolerance") {
    PrecisionContext ctx;
    QuadratureConfig cfg = QuadratureConfig::defaults(ctx);
    Real v = integrate_exp(gamma_problem(10, ctx.widened()), cfg, ctx);
    Real exact(factorial(10), ctx);
    REQUIRE(abs(v - exact) <= Real("1e-20", ctx) * exact);
}

TEST_CASE("quadrature respects a loose requested tolerance") {
    PrecisionContext ctx;
    QuadratureConfig cfg = QuadratureConfig::defaults(ctx);
    cfg.rel_tolerance = Real("1e-12", ctx);
    Real v = integrate_exp(gamma_problem(25, ctx.widened()), cfg, ctx);
    Real exact(factorial(25), ctx);
    REQUIRE(abs(v - exact) <= Real("1e-12", ctx) * exact);
}

TEST_CASE("quadrature error cases") {
    PrecisionContext ctx;
    QuadratureConfig cfg = QuadratureConfig::defaults(ctx);
    cfg.max_depth = 3;
    CHECK_THROWS_AS(integrate_exp(gamma_problem(10, ctx.widened()), cfg, ctx), max_depth_exceeded);
    QuadratureConfig bad = QuadratureConfig::defaults(ctx);
    bad.tail_cut = Real(10, ctx);
    CHECK_THROWS_AS(integrate_exp(gamma_problem(10, ctx.widened()), bad, ctx), domain_violation);
}

TEST_CASE("bic closed forms") {
    PrecisionContext ctx;
    BicResult single = bic_case(BicCase::poisson_single(10), ctx);
    require_rel(single.exact_side, "1");
    require_rel(single.ratio, "1.008365359132400245905553271364425980551");

    BicResult binom = bic_case(BicCase::binomial(2, 1), ctx);
    require_rel(binom.exact_side, "0.1666666666666666666666666666666666666667");
    require_rel(binom.bic_side, "0.2215567313631895034122709354176431478497");
    require_rel(binom.ratio, "0.7522527780636750492641059354143634477921");

    // the sample-form ratios depend only on the observed total
    BicResult sample = bic_case(BicCase::poisson_sample(7, 10), ctx);
    require_rel(sample.ratio, "1.008365359132400245905553271364425980551");
    BicResult expo = bic_case(BicCase::exponential(10, Real(Q(13, 10), ctx)), ctx);
    require_rel(expo.ratio, "1.008365359132400245905553271364425980551");

    CHECK_THROWS_AS(bic_case(BicCase::binomial(4, 0), ctx), domain_violation);
    CHECK_THROWS_AS(bic_case(BicCase::binomial(4, 4), ctx), domain_violation);
    CHECK_THROWS_AS(bic_case(BicCase::poisson_single(0), ctx), domain_violation);
    CHECK_THROWS_AS(bic_case(BicCase::exponential(3, Real(0, ctx)), ctx), domain_violation);
}

TEST_CASE("bic ratios tighten as the information doubles") {
    PrecisionContext ctx;
    Real one(1, ctx);
    auto err = [&](const BicResult& r) { return abs(r.ratio - one); };
    REQUIRE(err(bic_case(BicCase::poisson_single(256), ctx)) <
            err(bic_case(BicCase::poisson_single(32), ctx)));
    REQUIRE(err(bic_case(BicCase::poisson_sample(256, 256), ctx)) <
            err(bic_case(BicCase::poisson_sample(32, 32), ctx)));
    REQUIRE(err(bic_case(BicCase::exponential(256, Real(256, ctx)), ctx)) <
            err(bic_case(BicCase::exponential(32, Real(32, ctx)), ctx)));
    REQUIRE(err(bic_case(BicCase::binomial(256, 128), ctx)) <
            err(bic_case(BicCase::binomial(32, 16), ctx)));
}

TEST_CASE("bic integral checks reproduce the exact sides") {
    PrecisionContext ctx;
    QuadratureConfig cfg = QuadratureConfig::defaults(ctx);
    cfg.rel_tolerance = Real("1e-12", ctx);  // loose: this test covers the contract, not accuracy
    Real tol("1e-12", ctx);

    Real expo = bic_integral_check(BicCase::exponential(3, Real(2, ctx)), cfg, ctx);
    require_abs(expo, "0.375", "1e-12");

    Real binom = bic_integral_check(BicCase::binomial(2, 1), cfg, ctx);
    REQUIRE(abs(binom - Real(Q(1, 6), ctx)) <= tol);

    Real single = bic_integral_check(BicCase::poisson_single(4), cfg, ctx);
    REQUIRE(abs(single - Real(1, ctx)) <= tol);

    Real sample = bic_integral_check(BicCase::poisson_sample(3, 5), cfg, ctx);
    REQUIRE(abs(sample - Real(Q(120, 729), ctx)) <= tol);
}
