#include "secrely/sweep.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "secrely/closed_form.hpp"
#include "secrely/errors.hpp"

namespace secrely {

namespace {

constexpr double kOracleProbTol = 1e-7;
constexpr double kOracleErgodicRelTol = 1e-6;
constexpr double kMcAbsFloor = 1e-9;

// Tolerance for |analytic - MC|. The binomial standard error degenerates to
// zero when every trial lands on one side (expected counts below ~5), so the
// gate keeps a 5/n floor: the rule-of-three analogue of the 3-sigma band.
double mc_tolerance(const EstimateWithCI& e) {
    const double floor_small_count = 5.0 / static_cast<double>(e.n_samples);
    return std::max(3.0 * e.std_error, std::max(floor_small_count, kMcAbsFloor));
}

bool is_db_axis(SweepAxis axis) {
    return axis == SweepAxis::AvgSnrSdDb || axis == SweepAxis::AvgSnrSeDb;
}

double& source_field(SystemConfig& c, LinkSource s) {
    switch (s) {
        case LinkSource::AvgSnrSd: return c.avg_snr_sd;
        case LinkSource::AvgSnrSr: return c.avg_snr_sr;
        case LinkSource::AvgSnrRd: return c.avg_snr_rd;
        case LinkSource::AvgSnrSe: return c.avg_snr_se;
        case LinkSource::AvgSnrSb: return c.avg_snr_sb;
        case LinkSource::AvgSnrBe: return c.avg_snr_be;
    }
    throw ConfigError("unknown linkage source");
}

void apply_rule(SystemConfig& c, const LinkageRule& rule) {
    const double v = rule.factor * source_field(c, rule.source);
    switch (rule.target) {
        case LinkTarget::GammaC:
            c.avg_snr_sr = 2.0 * v;
            c.avg_snr_rd = 2.0 * v;
            return;
        case LinkTarget::GammaCe:
            c.avg_snr_sb = 2.0 * v;
            c.avg_snr_be = 2.0 * v;
            return;
        case LinkTarget::AvgSnrSd: c.avg_snr_sd = v; return;
        case LinkTarget::AvgSnrSr: c.avg_snr_sr = v; return;
        case LinkTarget::AvgSnrRd: c.avg_snr_rd = v; return;
        case LinkTarget::AvgSnrSe: c.avg_snr_se = v; return;
        case LinkTarget::AvgSnrSb: c.avg_snr_sb = v; return;
        case LinkTarget::AvgSnrBe: c.avg_snr_be = v; return;
    }
    throw ConfigError("unknown linkage target");
}

std::string format_full(double v) {
    std::ostringstream oss;
    oss << std::setprecision(17) << v;
    return oss.str();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string join_warnings(const std::vector<std::string>& warnings) {
    std::string out;
    for (size_t i = 0; i < warnings.size(); ++i) {
        if (i > 0) out += "; ";
        out += warnings[i];
    }
    return out;
}

// Index-parallel loop that preserves result order and rethrows the first
// exception after all workers finish.
template <typename Fn>
void parallel_for_index(size_t count, unsigned n_workers, Fn&& fn) {
    const unsigned n_threads = static_cast<unsigned>(
        std::min<size_t>(std::max(1u, n_workers), count));
    if (n_threads <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned w = 0; w < n_threads; ++w) {
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

void validate_sweep(const SweepSpec& spec) {
    if (spec.grid.empty()) throw ConfigError("sweep grid must not be empty");
    for (size_t i = 0; i < spec.grid.size(); ++i) {
        if (!std::isfinite(spec.grid[i])) throw ConfigError("sweep grid values must be finite");
        if (i > 0 && !(spec.grid[i] > spec.grid[i - 1])) {
            throw ConfigError("sweep grid must be strictly increasing");
        }
    }
}

SystemConfig config_at(const SweepSpec& spec, double axis_value) {
    SystemConfig c = spec.base;
    switch (spec.axis) {
        case SweepAxis::AvgSnrSdDb: c.avg_snr_sd = db_to_linear(axis_value); break;
        case SweepAxis::Rho: c.rho = axis_value; break;
        case SweepAxis::AvgSnrSeDb: c.avg_snr_se = db_to_linear(axis_value); break;
        case SweepAxis::TargetRate: c.target_rate = axis_value; break;
    }
    for (const LinkageRule& rule : spec.linkage) apply_rule(c, rule);
    return validate(c);
}

std::vector<SweepResultRow> run_sweep(const SweepSpec& spec, const SweepOptions& options) {
    validate_sweep(spec);
    std::vector<SweepResultRow> rows(spec.grid.size());

    const auto annotate = [](const char* what, double axis_value, const std::string& msg) {
        std::ostringstream oss;
        oss << what << " at grid point " << axis_value << ": " << msg;
        return oss.str();
    };

    parallel_for_index(spec.grid.size(), options.n_workers, [&](size_t i) {
        const double x = spec.grid[i];
        SweepResultRow& row = rows[i];
        row.axis_value = x;
        row.axis_linear = is_db_axis(spec.axis) ? db_to_linear(x) : x;
        const SystemConfig config = config_at(spec, x);
        try {
            const ClosedFormContext ctx = ClosedFormContext::make(config);
            row.analytic = closed_form_metrics(ctx);
            row.analytic.p_nonzero += options.corrupt_analytic;
            row.warnings = ctx.warnings;
            if (options.with_oracle) {
                row.oracle = oracle_metrics(config, options.quadrature);
            }
        } catch (const CancellationError& e) {
            throw CancellationError(annotate("cancellation", x, e.what()));
        } catch (const ConvergenceError& e) {
            throw ConvergenceError(annotate("quadrature failure", x, e.what()),
                                   e.best_value(), e.est_error());
        }
    });

    if (options.with_mc) {
        // Sequential over points; the estimator parallelizes over blocks.
        for (size_t i = 0; i < spec.grid.size(); ++i) {
            SimulationPlan plan;
            plan.config = config_at(spec, spec.grid[i]);
            plan.n_trials = options.n_trials;
            plan.seed = options.seed;
            plan.n_workers = options.n_workers;
            rows[i].mc = estimate_metrics(plan);
        }
    }
    return rows;
}

void write_rows_csv(std::ostream& out, const std::vector<SweepResultRow>& rows,
                    bool with_mc, bool with_oracle) {
    out << "axis_value,axis_linear,p_nonzero_analytic,sop_analytic,ergodic_analytic";
    if (with_mc) {
        for (const char* metric : {"p_nonzero", "sop", "ergodic"}) {
            out << ',' << metric << "_mc," << metric << "_mc_se,"
                << metric << "_mc_ci_low," << metric << "_mc_ci_high";
        }
    }
    if (with_oracle) {
        out << ",p_nonzero_oracle,sop_oracle,ergodic_oracle";
    }
    out << ",warnings\n";

    for (const SweepResultRow& row : rows) {
        out << format_full(row.axis_value) << ',' << format_full(row.axis_linear) << ','
            << format_full(row.analytic.p_nonzero) << ',' << format_full(row.analytic.sop) << ','
            << format_full(row.analytic.ergodic_capacity);
        if (with_mc) {
            const MetricEstimates& mc = row.mc.value();
            for (const EstimateWithCI* e : {&mc.p_nonzero, &mc.sop, &mc.ergodic}) {
                out << ',' << format_full(e->mean) << ',' << format_full(e->std_error) << ','
                    << format_full(e->ci95_low) << ',' << format_full(e->ci95_high);
            }
        }
        if (with_oracle) {
            const SecrecyMetrics& o = row.oracle.value();
            out << ',' << format_full(o.p_nonzero) << ',' << format_full(o.sop) << ','
                << format_full(o.ergodic_capacity);
        }
        out << ',' << csv_escape(join_warnings(row.warnings)) << '\n';
    }
}

void write_rows_json(std::ostream& out, const std::vector<SweepResultRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const SweepResultRow& row : rows) {
        nlohmann::json j;
        j["axis_value"] = row.axis_value;
        j["axis_linear"] = row.axis_linear;
        j["analytic"] = {{"p_nonzero", row.analytic.p_nonzero},
                         {"sop", row.analytic.sop},
                         {"ergodic_capacity", row.analytic.ergodic_capacity}};
        if (row.mc) {
            const auto dump = [](const EstimateWithCI& e) {
                return nlohmann::json{{"mean", e.mean},
                                      {"std_error", e.std_error},
                                      {"n_samples", e.n_samples},
                                      {"ci95_low", e.ci95_low},
                                      {"ci95_high", e.ci95_high}};
            };
            j["mc"] = {{"p_nonzero", dump(row.mc->p_nonzero)},
                       {"sop", dump(row.mc->sop)},
                       {"ergodic", dump(row.mc->ergodic)}};
        }
        if (row.oracle) {
            j["oracle"] = {{"p_nonzero", row.oracle->p_nonzero},
                           {"sop", row.oracle->sop},
                           {"ergodic_capacity", row.oracle->ergodic_capacity}};
        }
        j["warnings"] = row.warnings;
        arr.push_back(std::move(j));
    }
    out << arr.dump(2) << '\n';
}

ValidationReport run_validation(const SweepSpec& spec, const SweepOptions& raw_options) {
    SweepOptions options = raw_options;
    options.with_oracle = true;
    options.with_mc = true;

    ValidationReport report;
    report.rows = run_sweep(spec, options);

    std::ostringstream table;
    table << std::setprecision(10);
    table << "point        metric      analytic        oracle          mc              mc_se       verdict\n";

    for (const SweepResultRow& row : report.rows) {
        const SecrecyMetrics& a = row.analytic;
        const SecrecyMetrics& o = row.oracle.value();
        const MetricEstimates& mc = row.mc.value();

        struct Check {
            const char* name;
            double analytic;
            double oracle;
            const EstimateWithCI* estimate;
            double oracle_tol;
            bool binomial;
        };
        const double ergodic_tol =
            kOracleErgodicRelTol * std::max(std::abs(a.ergodic_capacity),
                                            std::abs(o.ergodic_capacity)) +
            kMcAbsFloor;
        const Check checks[] = {
            {"p_nonzero", a.p_nonzero, o.p_nonzero, &mc.p_nonzero, kOracleProbTol, true},
            {"sop", a.sop, o.sop, &mc.sop, kOracleProbTol, true},
            {"ergodic", a.ergodic_capacity, o.ergodic_capacity, &mc.ergodic, ergodic_tol, false},
        };
        for (const Check& c : checks) {
            const bool oracle_ok = std::abs(c.analytic - c.oracle) <= c.oracle_tol;
            const double mc_tol = c.binomial
                                      ? mc_tolerance(*c.estimate)
                                      : std::max(3.0 * c.estimate->std_error, kMcAbsFloor);
            const bool mc_ok = std::abs(c.analytic - c.estimate->mean) <= mc_tol;
            const bool ok = oracle_ok && mc_ok;
            if (!ok) report.pass = false;
            table << std::left << std::setw(13) << row.axis_value << std::setw(12) << c.name
                  << std::setw(16) << c.analytic << std::setw(16) << c.oracle << std::setw(16)
                  << c.estimate->mean << std::setw(12) << c.estimate->std_error
                  << (ok ? "PASS" : (oracle_ok ? "FAIL(mc)" : "FAIL(oracle)")) << '\n';
        }

        const SystemConfig config = config_at(spec, row.axis_value);
        if (config.target_rate == 0.0) {
            const bool complement_ok = std::abs(a.sop - (1.0 - a.p_nonzero)) <= 1e-12;
            if (!complement_ok) report.pass = false;
            table << std::left << std::setw(13) << row.axis_value << std::setw(12)
                  << "sop@rate0" << std::setw(16) << a.sop << std::setw(16)
                  << (1.0 - a.p_nonzero) << std::setw(16) << "-" << std::setw(12) << "-"
                  << (complement_ok ? "PASS" : "FAIL(identity)") << '\n';
        }
    }
    table << (report.pass ? "RESULT: PASS" : "RESULT: FAIL") << '\n';
    report.table = table.str();
    return report;
}

std::string to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::AvgSnrSdDb: return "avg_snr_sd_db";
        case SweepAxis::Rho: return "rho";
        case SweepAxis::AvgSnrSeDb: return "avg_snr_se_db";
        case SweepAxis::TargetRate: return "target_rate";
    }
    return "unknown";
}

}  // namespace secrely
