#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "secrely/monte_carlo.hpp"
#include "secrely/system_config.hpp"

namespace secrely::testing {

// Config with the requested combined relay-path means (both hops set to
// twice the combined value).
inline SystemConfig make_config(int n_relays, double rho, double sd, double c, double se,
                                double ce, double rate = 2.0) {
    SystemConfig cfg;
    cfg.n_relays = n_relays;
    cfg.rho = rho;
    cfg.avg_snr_sd = sd;
    cfg.avg_snr_sr = 2.0 * c;
    cfg.avg_snr_rd = 2.0 * c;
    cfg.avg_snr_se = se;
    cfg.avg_snr_sb = 2.0 * ce;
    cfg.avg_snr_be = 2.0 * ce;
    cfg.target_rate = rate;
    return cfg;
}

// N=5, rho=0.5, S-D 10 dB, S-E -5 dB, combined means locked at half,
// rate 2 bits/s/Hz.
inline SystemConfig reference_config() {
    const double se = db_to_linear(-5.0);
    return make_config(5, 0.5, 10.0, 5.0, se, 0.5 * se);
}

// Random valid config: up to max_relays relays, correlation uniform in
// [0, 1], SNR means log-uniform over roughly [-13, +17] dB, rates in [0, 4].
inline SystemConfig random_config(RandomStream& rng, int max_relays = 10) {
    const auto log_uniform = [&rng] { return std::exp(rng.next_unit() * 7.0 - 3.0) * 0.5; };
    SystemConfig cfg;
    cfg.n_relays = 1 + static_cast<int>(rng.next_u64() % max_relays);
    cfg.rho = rng.next_unit();
    cfg.avg_snr_sd = log_uniform();
    cfg.avg_snr_sr = log_uniform();
    cfg.avg_snr_rd = log_uniform();
    cfg.avg_snr_se = log_uniform();
    cfg.avg_snr_sb = log_uniform();
    cfg.avg_snr_be = log_uniform();
    cfg.target_rate = 4.0 * rng.next_unit();
    return cfg;
}

// Two-sided Kolmogorov-Smirnov statistic against a reference CDF. Sorts a
// copy of the samples.
template <typename Cdf>
double ks_statistic(std::vector<double> samples, Cdf&& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs((static_cast<double>(i) + 1.0) / n - f));
        d = std::max(d, std::abs(static_cast<double>(i) / n - f));
    }
    return d;
}

// Asymptotic two-sided KS critical value at the 1% level.
inline double ks_critical_1pct(std::size_t n) {
    return 1.6276236307187675 / std::sqrt(static_cast<double>(n));
}

// Collects seeded trial outcomes using the same block substream layout as
// the estimator.
inline std::vector<TrialOutcome> collect_trials(const SystemConfig& config, std::uint64_t n,
                                                std::uint64_t seed) {
    std::vector<TrialOutcome> out;
    out.reserve(n);
    const std::uint64_t n_blocks = (n + kTrialsPerBlock - 1) / kTrialsPerBlock;
    for (std::uint64_t b = 0; b < n_blocks; ++b) {
        RandomStream rng = RandomStream::for_block(seed, b);
        const std::uint64_t last = std::min(n, (b + 1) * kTrialsPerBlock);
        for (std::uint64_t i = b * kTrialsPerBlock; i < last; ++i) {
            out.push_back(run_trial(rng, config));
        }
    }
    return out;
}

}  // namespace secrely::testing
