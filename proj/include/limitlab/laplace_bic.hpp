#pragma once

// Laplace approximation of integrals of e^g for unimodal g, a reference
// adaptive-Simpson quadrature over a tail-cut window, and the four BIC
// marginal-likelihood case studies whose left-hand sides are exact
// integer/rational quantities.

#include <functional>
#include <optional>
#include <utility>

#include "limitlab/exact_arith.hpp"

namespace limitlab {

struct LaplaceProblem {
    std::function<Real(const Real&)> log_integrand;           // g
    std::function<Real(const Real&)> first_deriv;             // optional
    std::function<Real(const Real&)> second_deriv;            // optional
    Real domain_lo;                                           // may be -inf
    Real domain_hi;                                           // may be +inf
    Real initial_guess;
};

struct QuadratureConfig {
    Real rel_tolerance;
    int max_depth = 60;
    Real tail_cut;  // integrate where g >= g_max - tail_cut

    // Default tolerance 2^(-bits/4). Adaptive Simpson needs O(tol^(-1/4))
    // panels, so 2^(-bits/2) is out of reach at 256 bits; the Richardson
    // term on accepted panels lands the achieved error 1-3 orders below
    // the requested tolerance.
    static QuadratureConfig defaults(const PrecisionContext& ctx) {
        return QuadratureConfig{pow2(-(ctx.bits / 4), ctx), 60, Real(60, ctx)};
    }
};

struct ModeResult {
    Real x0;
    Real g_max;
    Real curvature;  // c = -g''(x0) > 0
};

namespace detail {

struct ProblemEval {
    const LaplaceProblem& p;
    PrecisionContext w;
    Real h;  // central-difference step when derivatives are absent

    ProblemEval(const LaplaceProblem& problem, const PrecisionContext& ctx)
        : p(problem), w(ctx.widened()), h(pow2(-(ctx.bits / 3), ctx.widened())) {}

    Real g(const Real& x) const { return p.log_integrand(x); }
    Real gp(const Real& x) const {
        if (p.first_deriv) return p.first_deriv(x);
        return (g(x + h) - g(x - h)) / (2 * h);
    }
    Real gpp(const Real& x) const {
        if (p.second_deriv) return p.second_deriv(x);
        return (g(x + h) - 2 * g(x) + g(x - h)) / (h * h);
    }
    bool inside(const Real& x) const { return p.domain_lo < x && x < p.domain_hi; }
};

}  // namespace detail

// Damped Newton iteration on g' from the initial guess. Convergence when
// |g'(x)| <= 2^(-bits/2) max(1, |x|); curvature must come out positive.
inline ModeResult find_mode(const LaplaceProblem& problem, const PrecisionContext& ctx) {
    detail::ProblemEval ev(problem, ctx);
    PrecisionContext w = ev.w;
    Real x = problem.initial_guess.rounded(w.bits);
    if (!ev.inside(x)) throw domain_violation("initial guess outside the domain");
    Real tol = pow2(-(ctx.bits / 2), w);
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
        Real g1 = ev.gp(x);
        if (abs(g1) <= tol * max(Real(1, w), abs(x))) {
            converged = true;
            break;
        }
        Real g2 = ev.gpp(x);
        Real step = g2.is_zero() ? abs(x) + 1 : -g1 / g2;
        Real gx = ev.g(x);
        Real xn = x + step;
        int halvings = 0;
        while ((!ev.inside(xn) || ev.g(xn) < gx) && halvings < 120) {
            step = step / 2;
            xn = x + step;
            ++halvings;
        }
        if (halvings >= 120) break;  // no representable step improves g
        x = xn;
    }
    if (!converged) {
        Real g1 = ev.gp(x);
        if (!(abs(g1) <= tol * max(Real(1, w), abs(x))))
            throw no_convergence("mode search did not meet the gradient tolerance");
    }
    Real c = -ev.gpp(x);
    if (c.sgn() <= 0) throw negative_curvature("-g'' at the mode is not positive");
    return ModeResult{x.rounded(ctx.bits), ev.g(x).rounded(ctx.bits), c.rounded(ctx.bits)};
}

// e^{g_max} sqrt(2 pi / c), assembled through LogReal so huge g_max values
// survive the trip back to Real.
inline Real laplace_approx(const LaplaceProblem& problem, const PrecisionContext& ctx) {
    PrecisionContext w = ctx.widened();
    ModeResult mode = find_mode(problem, ctx);
    Constants k = constants(w);
    Real logval = mode.g_max.rounded(w.bits) +
                  (log(2 * k.pi) - log(mode.curvature.rounded(w.bits))) / 2;
    return LogReal::from_log(1, logval).to_real(ctx);
}

namespace detail {

// Outward bracket + bisection for the abscissa where g crosses level, on the
// side of x0 given by `direction`. Any point past the crossing works; the
// bracket endpoint is returned after a fixed bisection budget.
inline Real tail_cut_edge(const ProblemEval& ev, const Real& x0, const Real& level,
                          const Real& domain_edge, int direction) {
    PrecisionContext w = ev.w;
    Real outer(w);
    if (!domain_edge.is_inf()) {
        if (ev.g(domain_edge) >= level) return domain_edge;
        outer = domain_edge;
    } else {
        Real t = max(Real(1, w), abs(x0));
        outer = x0 + direction * t;
        int guard = 0;
        while (ev.g(outer) >= level) {
            t = t * 2;
            outer = x0 + direction * t;
            if (++guard > 4000) throw no_convergence("tail cut bracket expansion failed");
        }
    }
    Real inner = x0;
    for (int i = 0; i < 160; ++i) {
        Real mid = (inner + outer) / 2;
        if (!ev.inside(mid)) break;
        if (ev.g(mid) >= level)
            inner = mid;
        else
            outer = mid;
    }
    return outer;
}

struct SimpsonState {
    const ProblemEval& ev;
    int max_depth;
};

inline Real simpson_recurse(const SimpsonState& st, const Real& a, const Real& b, const Real& fa,
                            const Real& fm, const Real& fb, const Real& whole, const Real& eps,
                            int depth) {
    Real m = (a + b) / 2;
    Real lm = (a + m) / 2;
    Real rm = (m + b) / 2;
    Real flm = exp(st.ev.g(lm));
    Real frm = exp(st.ev.g(rm));
    Real left = (m - a) / 6 * (fa + 4 * flm + fm);
    Real right = (b - m) / 6 * (fm + 4 * frm + fb);
    Real delta = left + right - whole;
    if (abs(delta) <= 15 * eps) return left + right + delta / 15;
    if (depth >= st.max_depth) throw max_depth_exceeded("adaptive Simpson recursion limit");
    Real eps_half = eps / 2;
    return simpson_recurse(st, a, m, fa, flm, fm, left, eps_half, depth + 1) +
           simpson_recurse(st, m, b, fm, frm, fb, right, eps_half, depth + 1);
}

}  // namespace detail

// Adaptive Simpson for int e^g over [L, R], where L, R solve g = g_max - Lambda
// (clamped to the domain). For unimodal g the discarded tail mass is below
// e^{-Lambda} relative to the covered mass, and panels are accepted once the
// local error estimate drops under the tolerance share.
inline Real integrate_exp(const LaplaceProblem& problem, const QuadratureConfig& config,
                          const PrecisionContext& ctx) {
    if (!(config.tail_cut >= Real(30, ctx))) throw domain_violation("tail_cut below 30");
    if (config.rel_tolerance.sgn() <= 0) throw domain_violation("rel_tolerance must be positive");
    detail::ProblemEval ev(problem, ctx);
    PrecisionContext w = ev.w;
    ModeResult mode = find_mode(problem, ctx);
    Real x0 = mode.x0.rounded(w.bits);
    Real level = mode.g_max.rounded(w.bits) - config.tail_cut.rounded(w.bits);
    Real left = detail::tail_cut_edge(ev, x0, level, problem.domain_lo, -1);
    Real right = detail::tail_cut_edge(ev, x0, level, problem.domain_hi, +1);

    // Laplace value as the tolerance scale for the absolute panel budget.
    Constants k = constants(w);
    Real scale = exp(mode.g_max.rounded(w.bits)) *
                 sqrt(2 * k.pi / mode.curvature.rounded(w.bits));
    Real eps_root = config.rel_tolerance.rounded(w.bits) * scale;

    Real fa = exp(ev.g(left));
    Real fm = exp(ev.g((left + right) / 2));
    Real fb = exp(ev.g(right));
    Real whole = (right - left) / 6 * (fa + 4 * fm + fb);
    detail::SimpsonState st{ev, config.max_depth};
    Real v = detail::simpson_recurse(st, left, right, fa, fm, fb, whole, eps_root, 0);
    return v.rounded(ctx.bits);
}

// ---------------------------------------------------------------------------
// BIC case studies. exactSide comes from exact integer/rational arithmetic,
// bicSide from the closed-form right-hand display in log space; the ratio of
// the two tends to 1 as the information grows.

struct BicCase {
    enum class Kind { poisson_single, poisson_sample, exponential, binomial };

    Kind kind;
    long n = 0;       // sample size (poisson_sample, exponential, binomial)
    long x = 0;       // observed count (poisson_single, binomial)
    long z_count = 0; // observed total (poisson_sample)
    std::optional<Real> z_rate;  // observed total, real-valued (exponential)

    static BicCase poisson_single(long x) {
        if (x < 1) throw domain_violation("poisson_single requires x >= 1");
        return BicCase{Kind::poisson_single, 0, x, 0, std::nullopt};
    }
    static BicCase poisson_sample(long n, long z) {
        if (n < 1 || z < 1) throw domain_violation("poisson_sample requires n >= 1, z >= 1");
        return BicCase{Kind::poisson_sample, n, 0, z, std::nullopt};
    }
    static BicCase exponential(long n, Real z) {
        if (n < 1 || z.sgn() <= 0) throw domain_violation("exponential requires n >= 1, z > 0");
        return BicCase{Kind::exponential, n, 0, 0, std::move(z)};
    }
    static BicCase binomial(long n, long x) {
        if (x < 1 || x > n - 1) throw domain_violation("binomial requires 1 <= x <= n-1");
        return BicCase{Kind::binomial, n, x, 0, std::nullopt};
    }
};

struct BicResult {
    Real exact_side;
    Real bic_side;
    Real ratio;  // exact_side / bic_side -> 1
};

inline BicResult bic_case(const BicCase& cs, const PrecisionContext& ctx) {
    PrecisionContext w = ctx.widened();
    Constants k = constants(w);
    Real half_log_2pi = log(2 * k.pi) / 2;
    Real exact(w);
    Real log_bic(w);
    switch (cs.kind) {
        case BicCase::Kind::poisson_single: {
            // 1 =~ {e^{-x} x^x / x!} sqrt(2 pi x)
            exact = Real(1, w);
            Real xx(cs.x, w);
            log_bic = -xx + xx * log(xx) - log_factorial(cs.x, w) + half_log_2pi + log(xx) / 2;
            break;
        }
        case BicCase::Kind::poisson_sample: {
            // z!/n^{z+1} =~ e^{-z} (z/n)^z sqrt(2 pi) z^{1/2} / n
            exact = Real(make_rational(factorial(cs.z_count),
                                       int_pow(BigInt(cs.n), static_cast<unsigned long>(cs.z_count + 1))),
                         w);
            Real zz(cs.z_count, w);
            Real nn(cs.n, w);
            log_bic = -zz + zz * (log(zz) - log(nn)) + half_log_2pi + log(zz) / 2 - log(nn);
            break;
        }
        case BicCase::Kind::exponential: {
            // n!/z^{n+1} =~ (n/z)^n e^{-n} sqrt(2 pi) sqrt(n) / z
            Real zz = cs.z_rate->rounded(w.bits);
            Real nn(cs.n, w);
            exact = exp(log(Real(factorial(cs.n), w)) - (nn + 1) * log(zz));
            log_bic = nn * (log(nn) - log(zz)) - nn + half_log_2pi + log(nn) / 2 - log(zz);
            break;
        }
        case BicCase::Kind::binomial: {
            // x!(n-x)!/(n+1)! =~ (x/n)^x ((n-x)/n)^{n-x} {x(n-x)/n^2}^{1/2} sqrt(2 pi)/sqrt(n)
            exact = Real(make_rational(factorial(cs.x) * factorial(cs.n - cs.x), factorial(cs.n + 1)), w);
            Real xx(cs.x, w);
            Real nn(cs.n, w);
            Real mm(cs.n - cs.x, w);
            log_bic = xx * (log(xx) - log(nn)) + mm * (log(mm) - log(nn)) +
                      (log(xx) + log(mm) - 2 * log(nn)) / 2 + half_log_2pi - log(nn) / 2;
            break;
        }
    }
    Real bic = exp(log_bic);
    return BicResult{exact.rounded(ctx.bits), bic.rounded(ctx.bits), (exact / bic).rounded(ctx.bits)};
}

// Quadrature of the likelihood over the parameter; reproduces exact_side.
inline Real bic_integral_check(const BicCase& cs, const QuadratureConfig& config,
                               const PrecisionContext& ctx) {
    PrecisionContext w = ctx.widened();
    Real zero(w);
    Real inf = Real::infinity(w);
    LaplaceProblem problem{nullptr, nullptr, nullptr, zero, inf, Real(1, w)};
    switch (cs.kind) {
        case BicCase::Kind::poisson_single: {
            // int_0^inf e^{-t} t^x / x! dt = 1
            long x = cs.x;
            Real lfx = log_factorial(x, w);
            problem.log_integrand = [x, lfx](const Real& t) { return x * log(t) - t - lfx; };
            problem.first_deriv = [x](const Real& t) { return x / t - 1; };
            problem.second_deriv = [x](const Real& t) { return -(x / (t * t)); };
            problem.initial_guess = Real(x, w);
            break;
        }
        case BicCase::Kind::poisson_sample: {
            // int_0^inf e^{-n t} t^z dt = z!/n^{z+1}
            long n = cs.n, z = cs.z_count;
            problem.log_integrand = [n, z](const Real& t) { return z * log(t) - n * t; };
            problem.first_deriv = [n, z](const Real& t) { return z / t - n; };
            problem.second_deriv = [z](const Real& t) { return -(z / (t * t)); };
            problem.initial_guess = Real(make_rational(BigInt(z), BigInt(n)), w);
            break;
        }
        case BicCase::Kind::exponential: {
            // int_0^inf t^n e^{-z t} dt = n!/z^{n+1}
            long n = cs.n;
            Real z = cs.z_rate->rounded(w.bits);
            problem.log_integrand = [n, z](const Real& t) { return n * log(t) - z * t; };
            problem.first_deriv = [n, z](const Real& t) { return n / t - z; };
            problem.second_deriv = [n](const Real& t) { return -(n / (t * t)); };
            problem.initial_guess = Real(n, w) / z;
            break;
        }
        case BicCase::Kind::binomial: {
            // int_0^1 p^x (1-p)^{n-x} dp = x!(n-x)!/(n+1)!
            long n = cs.n, x = cs.x;
            problem.domain_hi = Real(1, w);
            problem.log_integrand = [n, x](const Real& p) {
                return x * log(p) + (n - x) * log1p(-p);
            };
            problem.first_deriv = [n, x](const Real& p) { return x / p - (n - x) / (1 - p); };
            problem.second_deriv = [n, x](const Real& p) {
                return -(x / (p * p)) - (n - x) / ((1 - p) * (1 - p));
            };
            problem.initial_guess = Real(make_rational(BigInt(x), BigInt(n)), w);
            break;
        }
    }
    return integrate_exp(problem, config, ctx);
}

}  // namespace limitlab
