#include "limitlab/experiments.hpp"

#include "limitlab/report_io.hpp"
#include "test_support.hpp"

using namespace limitlab;
using lltest::require_rel;

TEST_CASE("experiment catalog is exactly the documented list") {
    std::vector<std::string> expected = {
        "stirling", "demoivre", "middle-binomial", "wallis", "trapezoid", "median-density",
        "poisson-truncated", "poisson-ratio", "poisson-mad", "gamma-truncated", "gamma-ratio",
        "binomial-truncated", "binomial-ratio", "binomial-mad", "random-walk", "irwin-hall-sn",
        "irwin-hall-in", "irwin-hall-bn", "laplace-gamma", "bic-poisson-single",
        "bic-poisson-sample", "bic-exponential", "bic-binomial", "all"};
    CHECK(experiment_names() == expected);
    CHECK_THROWS_AS(experiment_info("no-such-thing"), domain_violation);
}

TEST_CASE("geometric and linear grids") {
    auto geo = detail::build_grid(1, 64, GridKind::geometric, 9, false);
    CHECK(geo == std::vector<long>{1, 2, 4, 8, 16, 32, 64});
    auto even = detail::build_grid(2, 64, GridKind::geometric, 9, true);
    CHECK(even == std::vector<long>{2, 4, 8, 16, 32, 64});
    auto lin = detail::build_grid(10, 50, GridKind::linear, 5, false);
    CHECK(lin == std::vector<long>{10, 20, 30, 40, 50});
    CHECK_THROWS_AS(detail::build_grid(10, 5, GridKind::geometric, 9, false), domain_violation);
    CHECK_THROWS_AS(detail::build_grid(0, 5, GridKind::geometric, 9, false), domain_violation);
}

TEST_CASE("stirling experiment rows match the module function") {
    RunConfig cfg;
    cfg.experiment = "stirling";
    cfg.n_min = 1;
    cfg.n_max = 64;
    ExperimentResult result = run_experiment(cfg);
    REQUIRE(result.reports.size() == 1);
    const ConvergenceReport& r = result.reports[0];
    REQUIRE(r.rows.size() == 7);
    PrecisionContext ctx;
    for (const auto& row : r.rows)
        REQUIRE(row.value == stirling_ratio(row.n, ctx));
}

TEST_CASE("discrepancy flags ride along the four corrected experiments") {
    auto flag_of = [](const std::string& name) {
        RunConfig cfg;
        cfg.experiment = name;
        cfg.n_max = 64;
        if (name == "binomial-truncated") cfg.n_min = 2;
        return run_experiment(cfg).reports;
    };
    auto has_flag = [](const std::vector<ConvergenceReport>& reports, const char* flag) {
        for (const auto& r : reports)
            for (const auto& f : r.flags)
                if (f == flag) return true;
        return false;
    };
    CHECK(has_flag(flag_of("gamma-truncated"), flags::kGammaTruncated));
    CHECK(has_flag(flag_of("trapezoid"), flags::kTrapezoid));
    CHECK(has_flag(flag_of("binomial-truncated"), flags::kBinomialTruncated));
    CHECK(has_flag(flag_of("random-walk"), flags::kRandomWalk));
}

TEST_CASE("as-printed variants are reported alongside corrected targets") {
    RunConfig cfg;
    cfg.experiment = "gamma-truncated";
    cfg.n_max = 128;
    auto reports = run_experiment(cfg).reports;
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].spec_name == "gamma-truncated");
    CHECK(reports[1].spec_name == "gamma-truncated-as-printed");
    // same values, different targets; the as-printed error stalls near sqrt(2 pi) - 1/sqrt(2 pi)
    REQUIRE(reports[0].rows.back().value == reports[1].rows.back().value);
    PrecisionContext ctx;
    REQUIRE(reports[1].rows.back().abs_error > Real(2, ctx));
    REQUIRE(reports[0].rows.back().abs_error < Real("1e-3", ctx));
}

TEST_CASE("assertions pass on default-grid runs") {
    for (const char* name : {"stirling", "wallis", "trapezoid", "random-walk", "laplace-gamma",
                             "irwin-hall-bn", "bic-binomial"}) {
        RunConfig cfg;
        cfg.experiment = name;
        cfg.run_assertions = true;
        ExperimentResult result = run_experiment(cfg);
        INFO(name);
        for (const auto& f : result.assertion_failures) INFO(f);
        CHECK(result.assertion_failures.empty());
    }
}

TEST_CASE("assertions catch an under-converged run") {
    RunConfig cfg;
    cfg.experiment = "wallis";
    cfg.n_max = 4;  // relative error ~ 1/(8n) is way above 1e-4
    cfg.run_assertions = true;
    ExperimentResult result = run_experiment(cfg);
    CHECK_FALSE(result.assertion_failures.empty());
}

TEST_CASE("truncation parameter c reaches the reports") {
    RunConfig cfg;
    cfg.experiment = "poisson-ratio";
    cfg.n_max = 256;
    cfg.c_text = "2";
    auto reports = run_experiment(cfg).reports;
    REQUIRE(reports.size() == 1);
    REQUIRE(reports[0].c.has_value());
    CHECK(*reports[0].c == Real(2, PrecisionContext()));
    // target exp(-2) for c = 2
    require_rel(reports[0].target, "0.1353352832366126918939994949724844034076");
}

TEST_CASE("poisson-truncated accepts c = inf") {
    RunConfig cfg;
    cfg.experiment = "poisson-truncated";
    cfg.n_max = 64;
    cfg.c_text = "inf";
    auto reports = run_experiment(cfg).reports;
    require_rel(reports[0].target, "0.3989422804014326779399460599343818684759");
}

TEST_CASE("config validation") {
    RunConfig cfg;
    cfg.experiment = "stirling";
    cfg.precision_bits = 32;
    CHECK_THROWS_AS(run_experiment(cfg), domain_violation);
    cfg = RunConfig{};
    cfg.experiment = "irwin-hall-bn";
    cfg.n_max = 600000;  // beyond the exact-arithmetic bound
    CHECK_THROWS_AS(run_experiment(cfg), domain_violation);
    cfg = RunConfig{};
    cfg.experiment = "median-density";
    cfg.c_text = "-1";
    CHECK_THROWS_AS(run_experiment(cfg), domain_violation);
    cfg = RunConfig{};
    cfg.experiment = "gamma-ratio";
    cfg.c_text = "inf";
    CHECK_THROWS_AS(run_experiment(cfg), domain_violation);
}

TEST_CASE("bits propagate into reports") {
    RunConfig cfg;
    cfg.experiment = "demoivre";
    cfg.n_max = 16;
    cfg.precision_bits = 128;
    auto reports = run_experiment(cfg).reports;
    CHECK(reports[0].precision_bits == 128);
}
