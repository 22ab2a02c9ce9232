#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "secrely/config_io.hpp"
#include "secrely/errors.hpp"
#include "secrely/figures.hpp"
#include "secrely/sweep.hpp"

namespace {

// Exit codes: 0 ok, 1 validation failure, 2 config error, 3 numerical error,
// 4 I/O error.
constexpr int kExitValidationFail = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;
constexpr int kExitIoError = 4;

unsigned worker_count() {
    if (const char* env = std::getenv("SECRELY_WORKERS")) {
        try {
            const long v = std::stol(env);
            if (v < 1) throw secrely::ConfigError("SECRELY_WORKERS must be >= 1");
            return static_cast<unsigned>(v);
        } catch (const secrely::ConfigError&) {
            throw;
        } catch (...) {
            throw secrely::ConfigError(std::string("SECRELY_WORKERS is not an integer: ") + env);
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : std::min(hw, 8u);
}

void write_output(const std::string& out_path, const std::string& format,
                  const std::vector<secrely::SweepResultRow>& rows,
                  const secrely::SweepOptions& options) {
    const auto emit = [&](std::ostream& os) {
        if (format == "json") {
            secrely::write_rows_json(os, rows);
        } else {
            secrely::write_rows_csv(os, rows, options.with_mc, options.with_oracle);
        }
    };
    if (out_path.empty()) {
        emit(std::cout);
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw secrely::IoError("cannot open output file: " + out_path);
    emit(out);
    if (!out) throw secrely::IoError("failed writing output file: " + out_path);
}

struct CommonArgs {
    std::string config_path;
    std::string sweep_path;
    std::string format = "csv";
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "system config JSON")->required();
    cmd->add_option("--sweep", args.sweep_path, "sweep definition JSON")->required();
    cmd->add_option("--format", args.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", args.out_path, "output path (default: stdout)");
}

secrely::SweepSpec load_spec(const CommonArgs& args) {
    const secrely::SystemConfig base = secrely::load_config_json(args.config_path);
    return secrely::load_sweep_json(args.sweep_path, base);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"secrecy performance of cooperative relay networks with outdated relay selection"};
    app.require_subcommand(1);

    CommonArgs analytic_args;
    CLI::App* analytic = app.add_subcommand(
        "analytic", "closed-form metrics over a parameter sweep");
    add_common(analytic, analytic_args);

    CommonArgs simulate_args;
    std::uint64_t sim_trials = 100000;
    std::uint64_t sim_seed = 1;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "closed-form plus seeded Monte Carlo estimates");
    add_common(simulate, simulate_args);
    simulate->add_option("--trials", sim_trials, "Monte Carlo trials per grid point")
        ->capture_default_str();
    simulate->add_option("--seed", sim_seed, "RNG seed")->capture_default_str();

    CommonArgs validate_args;
    std::uint64_t val_trials = 100000;
    std::uint64_t val_seed = 1;
    double corrupt_analytic = 0.0;
    CLI::App* validate_cmd = app.add_subcommand(
        "validate", "three-way agreement report: closed form vs quadrature vs Monte Carlo");
    validate_cmd->add_option("--config", validate_args.config_path, "system config JSON")->required();
    validate_cmd->add_option("--sweep", validate_args.sweep_path, "sweep definition JSON")->required();
    validate_cmd->add_option("--out", validate_args.out_path, "report path (default: stdout)");
    validate_cmd->add_option("--trials", val_trials, "Monte Carlo trials per grid point")
        ->capture_default_str();
    validate_cmd->add_option("--seed", val_seed, "RNG seed")->capture_default_str();
    validate_cmd
        ->add_option("--corrupt-analytic", corrupt_analytic,
                     "test hook: offset added to analytic p_nonzero")
        ->group("");  // hidden from help

    std::string figures_dir = "figures";
    CLI::App* figures = app.add_subcommand(
        "figures", "emit the built-in figure CSVs and gnuplot scripts");
    figures->add_option("--out", figures_dir, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);

        const unsigned workers = worker_count();

        if (*analytic) {
            secrely::SweepOptions options;
            options.n_workers = workers;
            const secrely::SweepSpec spec = load_spec(analytic_args);
            const auto rows = secrely::run_sweep(spec, options);
            write_output(analytic_args.out_path, analytic_args.format, rows, options);
        } else if (*simulate) {
            if (sim_trials < 1) throw secrely::ConfigError("--trials must be >= 1");
            secrely::SweepOptions options;
            options.with_mc = true;
            options.n_trials = sim_trials;
            options.seed = sim_seed;
            options.n_workers = workers;
            const secrely::SweepSpec spec = load_spec(simulate_args);
            const auto rows = secrely::run_sweep(spec, options);
            write_output(simulate_args.out_path, simulate_args.format, rows, options);
        } else if (*validate_cmd) {
            if (val_trials < 1) throw secrely::ConfigError("--trials must be >= 1");
            secrely::SweepOptions options;
            options.n_trials = val_trials;
            options.seed = val_seed;
            options.n_workers = workers;
            options.corrupt_analytic = corrupt_analytic;
            const secrely::SweepSpec spec = load_spec(validate_args);
            const secrely::ValidationReport report = secrely::run_validation(spec, options);
            if (validate_args.out_path.empty()) {
                std::cout << report.table;
            } else {
                std::ofstream out(validate_args.out_path);
                if (!out) throw secrely::IoError("cannot open output file: " + validate_args.out_path);
                out << report.table;
            }
            if (!report.pass) return kExitValidationFail;
        } else if (*figures) {
            const auto written = secrely::write_figure_artifacts(figures_dir);
            for (const std::string& path : written) std::cout << path << '\n';
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfigError;
    } catch (const secrely::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const secrely::RangeError& e) {
        std::cerr << "config error in field '" << e.field() << "': " << e.what() << '\n';
        return kExitConfigError;
    } catch (const secrely::CancellationError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumericalError;
    } catch (const secrely::ConvergenceError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumericalError;
    } catch (const secrely::DomainError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumericalError;
    } catch (const secrely::NonFiniteError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumericalError;
    } catch (const secrely::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIoError;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIoError;
    }
}
