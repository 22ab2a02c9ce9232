#include "secrely/system_config.hpp"

#include <cmath>
#include <sstream>

namespace secrely {

namespace {

void require(bool ok, const char* field, const std::string& message) {
    if (!ok) throw RangeError(field, message);
}

std::string describe(const char* field, const char* requirement, double got) {
    std::ostringstream oss;
    oss << field << " must be " << requirement << ", got " << got;
    return oss.str();
}

void check_positive_snr(const char* field, double value) {
    require(std::isfinite(value) && value > 0.0, field, describe(field, "a positive finite linear SNR", value));
}

}  // namespace

SystemConfig validate(const SystemConfig& config) {
    require(config.n_relays >= 1, "n_relays",
            describe("n_relays", ">= 1", static_cast<double>(config.n_relays)));
    require(std::isfinite(config.rho) && config.rho >= 0.0 && config.rho <= 1.0, "rho",
            describe("rho", "in [0, 1]", config.rho));
    check_positive_snr("avg_snr_sd", config.avg_snr_sd);
    check_positive_snr("avg_snr_sr", config.avg_snr_sr);
    check_positive_snr("avg_snr_rd", config.avg_snr_rd);
    check_positive_snr("avg_snr_se", config.avg_snr_se);
    check_positive_snr("avg_snr_sb", config.avg_snr_sb);
    check_positive_snr("avg_snr_be", config.avg_snr_be);
    require(std::isfinite(config.target_rate) && config.target_rate >= 0.0, "target_rate",
            describe("target_rate", ">= 0", config.target_rate));
    // The harmonic combinations can underflow to 0 for extreme inputs even
    // though both hops are positive.
    require(config.gamma_c() > 0.0, "gamma_c",
            describe("derived gamma_c", "> 0", config.gamma_c()));
    require(config.gamma_ce() > 0.0, "gamma_ce",
            describe("derived gamma_ce", "> 0", config.gamma_ce()));
    return config;
}

double db_to_linear(double x_db) {
    return std::pow(10.0, x_db / 10.0);
}

double linear_to_db(double x) {
    if (!(x > 0.0)) throw DomainError("linear_to_db requires a positive argument");
    return 10.0 * std::log10(x);
}

EstimateWithCI EstimateWithCI::from_moments(double mean, double std_error, std::uint64_t n_samples) {
    if (!(std_error >= 0.0)) throw RangeError("std_error", "std_error must be non-negative");
    if (n_samples == 0) throw RangeError("n_samples", "n_samples must be positive");
    EstimateWithCI e;
    e.mean = mean;
    e.std_error = std_error;
    e.n_samples = n_samples;
    e.ci95_low = mean - 1.96 * std_error;
    e.ci95_high = mean + 1.96 * std_error;
    return e;
}

std::string to_string(RatePrefactor p) {
    return p == RatePrefactor::Half ? "half" : "unit";
}

}  // namespace secrely
