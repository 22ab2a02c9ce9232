#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "secrely/monte_carlo.hpp"
#include "secrely/quadrature.hpp"
#include "secrely/system_config.hpp"

namespace secrely {

// Which scalar parameter a sweep varies. dB axes are converted to linear at
// the point where each grid config is built.
enum class SweepAxis { AvgSnrSdDb, Rho, AvgSnrSeDb, TargetRate };

enum class LinkTarget { GammaC, GammaCe, AvgSnrSd, AvgSnrSr, AvgSnrRd, AvgSnrSe, AvgSnrSb, AvgSnrBe };
enum class LinkSource { AvgSnrSd, AvgSnrSr, AvgSnrRd, AvgSnrSe, AvgSnrSb, AvgSnrBe };

// Ties one parameter to another per grid point: target = factor * source
// (linear scale), applied after the axis value is written. GammaC / GammaCe
// targets set both constituent hop SNRs to twice the requested combined
// value, which realizes exactly that combined mean.
struct LinkageRule {
    LinkTarget target;
    LinkSource source;
    double factor = 1.0;
};

struct SweepSpec {
    SweepAxis axis = SweepAxis::AvgSnrSdDb;
    std::vector<double> grid;  // strictly increasing, non-empty
    SystemConfig base;
    std::vector<LinkageRule> linkage;
};

// Throws ConfigError on an empty or non-increasing grid.
void validate_sweep(const SweepSpec& spec);

// Builds and validates the config for one grid point: axis value applied,
// linkage rules evaluated in order.
SystemConfig config_at(const SweepSpec& spec, double axis_value);

struct SweepResultRow {
    double axis_value = 0.0;   // as given (dB for dB axes)
    double axis_linear = 0.0;  // linear mirror; equals axis_value for rho / rate axes
    SecrecyMetrics analytic;
    std::optional<MetricEstimates> mc;
    std::optional<SecrecyMetrics> oracle;
    std::vector<std::string> warnings;
};

struct SweepOptions {
    bool with_oracle = false;
    bool with_mc = false;
    std::uint64_t n_trials = 100000;
    std::uint64_t seed = 1;
    unsigned n_workers = 1;
    QuadratureSettings quadrature;
    // Test hook: offset added to every analytic p_nonzero, for exercising
    // validation failure paths. Zero in normal operation.
    double corrupt_analytic = 0.0;
};

// Evaluates every grid point; analytic (and oracle) columns in parallel over
// points, Monte Carlo per point with block-level parallelism. Rows are
// returned in grid order. Numerical failures are annotated with the
// offending axis value before rethrowing.
std::vector<SweepResultRow> run_sweep(const SweepSpec& spec, const SweepOptions& options);

// RFC-4180-style CSV: header always emitted; optional column groups present
// iff the corresponding pipeline was requested.
void write_rows_csv(std::ostream& out, const std::vector<SweepResultRow>& rows,
                    bool with_mc, bool with_oracle);
void write_rows_json(std::ostream& out, const std::vector<SweepResultRow>& rows);

struct ValidationReport {
    bool pass = true;
    std::string table;  // one line per (point, metric) plus a summary
    std::vector<SweepResultRow> rows;
};

// Runs analytic + oracle + Monte Carlo at every grid point and checks
//   |analytic - oracle|  <= 1e-7 absolute for the probabilities,
//                         <= 1e-6 relative for the ergodic capacity,
//   |analytic - MC mean| <= max(3 SE, 1e-9),
// plus the exact rate-0 complement identity where target_rate == 0.
ValidationReport run_validation(const SweepSpec& spec, const SweepOptions& options);

std::string to_string(SweepAxis axis);

}  // namespace secrely
