#pragma once

// Sequence evaluation harness: run an evaluator over an n-grid, measure the
// distance to its target, estimate the log-log convergence rate, and apply
// Aitken extrapolation. Reports serialize byte-identically for fixed inputs.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "limitlab/exact_arith.hpp"

namespace limitlab {

struct SequenceSpec {
    std::string name;
    std::function<Real(long, const PrecisionContext&)> evaluator;  // deterministic in (n, ctx)
    Real target;
    std::string notes;
};

struct SequenceRow {
    long n;
    Real value;
    Real abs_error;
    Real rel_error;
};

struct RateEstimate {
    Real slope;      // least-squares slope of log(abs_error) vs log(n)
    Real r_squared;
};

struct ConvergenceReport {
    std::string spec_name;
    Real target;
    std::optional<Real> c;  // truncation parameter, when the sequence has one
    std::vector<SequenceRow> rows;  // sorted by n ascending
    std::optional<RateEstimate> rate_estimate;  // present when >= 4 rows have abs_error > 0
    std::optional<Real> aitken_limit;
    std::vector<std::string> flags;
    long precision_bits = 0;
};

inline std::vector<SequenceRow> evaluate_grid(const SequenceSpec& spec,
                                              const std::vector<long>& grid,
                                              const PrecisionContext& ctx) {
    if (grid.empty()) throw empty_grid("no grid points for " + spec.name);
    for (size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1]) throw domain_violation("grid must be strictly increasing");
    std::vector<SequenceRow> rows;
    rows.reserve(grid.size());
    for (long n : grid) {
        Real value(ctx);
        try {
            value = spec.evaluator(n, ctx);
        } catch (const lab_error& e) {
            throw lab_error(spec.name + " at n=" + std::to_string(n) + ": " + e.what());
        }
        Real abs_err = abs(value - spec.target);
        Real rel_err = spec.target.is_zero() ? abs_err : abs_err / abs(spec.target);
        rows.push_back(SequenceRow{n, value, abs_err, rel_err});
    }
    return rows;
}

inline RateEstimate estimate_rate(const std::vector<SequenceRow>& rows) {
    std::vector<const SequenceRow*> used;
    for (const auto& r : rows)
        if (r.abs_error.sgn() > 0) used.push_back(&r);
    if (used.size() < 4) throw insufficient_rows("need >= 4 rows with positive error");
    PrecisionContext w(std::max<mpfr_prec_t>(used.front()->value.prec(), 64), 32);
    Real sx(w), sy(w), sxx(w), sxy(w), syy(w);
    long m = static_cast<long>(used.size());
    for (const auto* r : used) {
        Real x = log(Real(r->n, w));
        Real y = log(r->abs_error.rounded(w.bits));
        sx = sx + x;
        sy = sy + y;
        sxx = sxx + x * x;
        sxy = sxy + x * y;
        syy = syy + y * y;
    }
    Real cxx = sxx - sx * sx / m;
    Real cxy = sxy - sx * sy / m;
    Real cyy = syy - sy * sy / m;
    Real slope = cxy / cxx;
    Real r2 = cyy.is_zero() ? Real(1, w) : (cxy * cxy) / (cxx * cyy);
    return RateEstimate{slope, r2};
}

// Last valid Aitken delta-squared transform of the sequence.
inline Real aitken(const std::vector<Real>& values) {
    if (values.size() < 3) throw degenerate_differences("need >= 3 values");
    std::optional<Real> result;
    for (size_t k = 0; k + 2 < values.size(); ++k) {
        const Real& a = values[k];
        const Real& b = values[k + 1];
        const Real& c = values[k + 2];
        Real denom = c - 2 * b + a;
        if (denom.is_zero()) continue;
        Real d = c - b;
        result = c - d * d / denom;
    }
    if (!result) throw degenerate_differences("all second differences vanish");
    return *result;
}

inline ConvergenceReport build_report(const SequenceSpec& spec, const std::vector<long>& grid,
                                      const PrecisionContext& ctx,
                                      std::vector<std::string> flags = {},
                                      std::optional<Real> c = std::nullopt) {
    std::vector<SequenceRow> rows = evaluate_grid(spec, grid, ctx);
    if (!spec.notes.empty()) flags.push_back(spec.notes);
    long positive = 0;
    for (const auto& r : rows)
        if (r.abs_error.sgn() > 0) ++positive;
    std::optional<RateEstimate> rate;
    if (positive >= 4) rate = estimate_rate(rows);
    std::optional<Real> aitken_limit;
    if (rows.size() >= 3) {
        std::vector<Real> values;
        values.reserve(rows.size());
        for (const auto& r : rows) values.push_back(r.value);
        try {
            aitken_limit = aitken(values);
        } catch (const degenerate_differences&) {
        }
    }
    return ConvergenceReport{spec.name,     spec.target,  std::move(c),     std::move(rows),
                             std::move(rate), std::move(aitken_limit), std::move(flags), ctx.bits};
}

}  // namespace limitlab
