// limitlab command-line interface: one subcommand per experiment, emitting
// convergence reports as CSV or JSON, with optional gnuplot script emission
// and assertion checks.
//
// Exit codes: 0 success; 1 internal error; 2 invalid arguments;
//             3 assertion failure under --assert.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "limitlab/experiments.hpp"
#include "limitlab/report_io.hpp"

namespace {

constexpr const char* kPrecisionEnvVar = "LIMITLAB_PRECISION_BITS";

struct CommonOptions {
    long n_min = 0;
    long n_max = 0;
    std::string grid = "geometric";
    long points = 9;
    std::string c_text = "1";
    long bits = 256;
    std::string format = "csv";
    std::string output;
    std::string gnuplot;
    bool assert_checks = false;
};

void add_common_options(CLI::App* cmd, CommonOptions* opt) {
    cmd->add_option("--n-min", opt->n_min, "Smallest n (0 = experiment default)");
    cmd->add_option("--n-max", opt->n_max, "Largest n (0 = experiment default)");
    cmd->add_option("--grid", opt->grid, "Grid kind: geometric | linear")
        ->check(CLI::IsMember({"geometric", "linear"}));
    cmd->add_option("--points", opt->points, "Number of points for linear grids");
    cmd->add_option("--c", opt->c_text, "Truncation parameter c (positive real or 'inf')");
    cmd->add_option("--bits", opt->bits, "Real precision in bits (>= 64)")
        ->envname(kPrecisionEnvVar);
    cmd->add_option("--format", opt->format, "Output format: csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", opt->output, "Output path (default: stdout)");
    cmd->add_option("--gnuplot", opt->gnuplot,
                    "Write a gnuplot script for the CSV output to this path");
    cmd->add_flag("--assert", opt->assert_checks,
                  "Check the experiment's convergence assertions; exit 3 on failure");
}

limitlab::RunConfig to_config(const std::string& experiment, const CommonOptions& opt) {
    limitlab::RunConfig cfg;
    cfg.experiment = experiment;
    cfg.n_min = opt.n_min;
    cfg.n_max = opt.n_max;
    cfg.grid_kind = opt.grid == "linear" ? limitlab::GridKind::linear : limitlab::GridKind::geometric;
    cfg.points = opt.points;
    cfg.c_text = opt.c_text;
    cfg.precision_bits = opt.bits;
    cfg.format = opt.format == "json" ? limitlab::OutputFormat::json : limitlab::OutputFormat::csv;
    cfg.output_path = opt.output;
    cfg.gnuplot_path = opt.gnuplot;
    cfg.run_assertions = opt.assert_checks;
    return cfg;
}

void write_output(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw limitlab::lab_error("cannot open output file: " + path);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

void write_gnuplot_script(const std::string& script_path, const std::string& csv_path) {
    std::ofstream out(script_path, std::ios::binary | std::ios::trunc);
    if (!out) throw limitlab::lab_error("cannot open gnuplot script file: " + script_path);
    out << "set datafile separator ','\n"
        << "set logscale xy\n"
        << "set xlabel 'n'\n"
        << "set ylabel '|value - target|'\n"
        << "set key off\n"
        << "set grid\n"
        << "plot '" << csv_path << "' every ::1 using 2:6 with linespoints\n";
}

int run_one(const limitlab::RunConfig& cfg, std::vector<limitlab::ConvergenceReport>& sink,
            std::vector<std::string>& failures) {
    limitlab::ExperimentResult result = limitlab::run_experiment(cfg);
    for (auto& r : result.reports) sink.push_back(std::move(r));
    for (auto& f : result.assertion_failures) failures.push_back(std::move(f));
    return result.assertion_failures.empty() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical studies of classical limit formulas: factorial ratios, middle "
                 "binomials, the Wallis product, sums and medians of uniforms, and Laplace/BIC "
                 "integral approximations, each checked against its limiting constant."};
    app.require_subcommand(1);

    std::vector<std::pair<std::string, CommonOptions>> runs;
    CommonOptions all_opt;
    for (const auto& info : limitlab::experiment_catalog()) {
        auto* cmd = app.add_subcommand(info.name, info.summary);
        runs.emplace_back(info.name, CommonOptions{});
        add_common_options(cmd, &runs.back().second);
        cmd->parse_complete_callback([]() {});
    }
    auto* all_cmd = app.add_subcommand("all", "Run every experiment with its defaults");
    add_common_options(all_cmd, &all_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return 2;
    }

    try {
        std::vector<limitlab::ConvergenceReport> reports;
        std::vector<std::string> failures;
        int worst = 0;
        const CommonOptions* active = nullptr;
        if (all_cmd->parsed()) {
            for (const auto& info : limitlab::experiment_catalog()) {
                CommonOptions opt = all_opt;
                opt.n_min = 0;  // defaults per experiment
                opt.n_max = 0;
                limitlab::RunConfig cfg = to_config(info.name, opt);
                worst = std::max(worst, run_one(cfg, reports, failures));
            }
            active = &all_opt;
        } else {
            for (auto& [name, opt] : runs) {
                if (!app.get_subcommand(name)->parsed()) continue;
                limitlab::RunConfig cfg = to_config(name, opt);
                worst = std::max(worst, run_one(cfg, reports, failures));
                active = &opt;
                break;
            }
        }
        if (active == nullptr) {
            std::cerr << "no experiment selected\n";
            return 2;
        }
        std::string payload = active->format == "json" ? limitlab::to_json_string(reports)
                                                       : limitlab::to_csv(reports);
        write_output(active->output, payload);
        if (!active->gnuplot.empty()) {
            if (active->format != "csv" || active->output.empty()) {
                std::cerr << "--gnuplot requires --format csv and an --output path\n";
                return 2;
            }
            write_gnuplot_script(active->gnuplot, active->output);
        }
        for (const auto& f : failures) std::cerr << "assertion failed: " << f << "\n";
        return worst;
    } catch (const limitlab::domain_violation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
