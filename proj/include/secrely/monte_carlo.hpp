#pragma once

#include <cstdint>
#include <utility>

#include "secrely/system_config.hpp"

namespace secrely {

// Counter-style 64-bit generator (splitmix64): every draw is a bijective
// hash of an advancing counter, so substreams are cheap and a stream is a
// pure function of its seed.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(seed) {}

    // Substream for one trial block, mixed from (seed, block_index) so block
    // results never depend on which worker executes them.
    static RandomStream for_block(std::uint64_t seed, std::uint64_t block_index);

    std::uint64_t next_u64();
    double next_unit();  // uniform on (0, 1]
    double next_exponential(double mean);
    std::pair<double, double> next_normal_pair();

private:
    std::uint64_t state_;
};

struct SimulationPlan {
    SystemConfig config;
    std::uint64_t n_trials = 1;
    std::uint64_t seed = 0;
    // Execution hint only: estimates are a pure function of
    // (config, n_trials, seed) for any n_workers >= 1.
    unsigned n_workers = 1;
};

// One simulated network use: combined destination and eavesdropper SNRs and
// the instantaneous secrecy capacity under both prefactor conventions
// (cs_half = cs_unit / 2; both 0 when the eavesdropper is ahead).
struct TrialOutcome {
    double gamma_opr = 0.0;
    double gamma_opr_e = 0.0;
    double cs_half = 0.0;
    double cs_unit = 0.0;
};

// Draws a pair of exponential variates with the given mean whose power
// correlation is rho: the first for the selection instant, the second for
// the transmission instant. Built from complex Gaussians g_old and
// g_new = sqrt(rho) g_old + sqrt(1-rho) w, so rho = 1 returns identical
// values and rho = 0 independent ones.
std::pair<double, double> sample_correlated_exp_pair(RandomStream& rng, double mean, double rho);

// Simulates one use of the network: stale-measurement argmax selection among
// n_relays correlated pairs, plus fresh direct / eavesdropper-path draws.
TrialOutcome run_trial(RandomStream& rng, const SystemConfig& config);

struct MetricEstimates {
    EstimateWithCI p_nonzero;
    EstimateWithCI sop;  // unit-prefactor outage indicator
    EstimateWithCI ergodic;  // mean of cs_half
};

// Estimates all three metrics from plan.n_trials seeded trials. Trials are
// partitioned into fixed-size blocks with per-block RNG substreams and the
// block partials are merged in block order, so results are bit-identical for
// any worker count.
MetricEstimates estimate_metrics(const SimulationPlan& plan);

// Trials per deterministic RNG block.
inline constexpr std::uint64_t kTrialsPerBlock = std::uint64_t{1} << 16;

}  // namespace secrely
