#include "secrely/monte_carlo.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "secrely/compensated_sum.hpp"
#include "secrely/errors.hpp"

namespace secrely {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

// murmur3 finalizer; full-avalanche 64-bit mix.
std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
}

}  // namespace

RandomStream RandomStream::for_block(std::uint64_t seed, std::uint64_t block_index) {
    std::uint64_t s = mix64(seed);
    s = mix64(s ^ (0x9e3779b97f4a7c15ULL * (block_index + 1)));
    return RandomStream(s);
}

std::uint64_t RandomStream::next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double RandomStream::next_unit() {
    // Top 53 bits, shifted into (0, 1] so logs stay finite.
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RandomStream::next_exponential(double mean) {
    return -mean * std::log(next_unit());
}

std::pair<double, double> RandomStream::next_normal_pair() {
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

std::pair<double, double> sample_correlated_exp_pair(RandomStream& rng, double mean, double rho) {
    const auto [a1, a2] = rng.next_normal_pair();
    const auto [b1, b2] = rng.next_normal_pair();
    const double sqrt_rho = std::sqrt(rho);
    const double sqrt_rem = std::sqrt(1.0 - rho);
    const double c1 = sqrt_rho * a1 + sqrt_rem * b1;
    const double c2 = sqrt_rho * a2 + sqrt_rem * b2;
    // |CN(0,1)|^2 is exponential with mean 1.
    const double snr_old = mean * 0.5 * (a1 * a1 + a2 * a2);
    const double snr_new = mean * 0.5 * (c1 * c1 + c2 * c2);
    return {snr_old, snr_new};
}

TrialOutcome run_trial(RandomStream& rng, const SystemConfig& config) {
    const double gamma_c = config.gamma_c();

    const double gamma_sd = rng.next_exponential(config.avg_snr_sd);
    double best_stale = -1.0;
    double delivered = 0.0;
    for (int n = 0; n < config.n_relays; ++n) {
        const auto [stale, fresh] = sample_correlated_exp_pair(rng, gamma_c, config.rho);
        if (stale > best_stale) {  // strict: ties go to the lowest index
            best_stale = stale;
            delivered = fresh;
        }
    }

    TrialOutcome t;
    t.gamma_opr = gamma_sd + delivered;
    const double gamma_se = rng.next_exponential(config.avg_snr_se);
    const double gamma_sb = rng.next_exponential(config.avg_snr_sb);
    const double gamma_be = rng.next_exponential(config.avg_snr_be);
    t.gamma_opr_e = gamma_se + std::min(gamma_sb, gamma_be);
    if (t.gamma_opr > t.gamma_opr_e) {
        t.cs_unit = std::log2(1.0 + t.gamma_opr) - std::log2(1.0 + t.gamma_opr_e);
        t.cs_half = 0.5 * t.cs_unit;
    }
    return t;
}

namespace {

struct BlockPartial {
    std::uint64_t n = 0;
    std::uint64_t n_nonzero = 0;
    std::uint64_t n_outage = 0;
    double cs_half_sum = 0.0;
    double cs_half_sq_sum = 0.0;
};

BlockPartial run_block(const SystemConfig& config, std::uint64_t seed, std::uint64_t block,
                       std::uint64_t n_trials) {
    const std::uint64_t first = block * kTrialsPerBlock;
    const std::uint64_t last = std::min(n_trials, first + kTrialsPerBlock);
    RandomStream rng = RandomStream::for_block(seed, block);
    BlockPartial p;
    CompensatedSum cs, cs_sq;
    for (std::uint64_t i = first; i < last; ++i) {
        const TrialOutcome t = run_trial(rng, config);
        ++p.n;
        if (t.gamma_opr > t.gamma_opr_e) ++p.n_nonzero;
        // Outage includes the zero-capacity event, so the rate-0 estimate is
        // exactly the complement of p_nonzero.
        if (t.gamma_opr <= t.gamma_opr_e || t.cs_unit < config.target_rate) ++p.n_outage;
        cs.add(t.cs_half);
        cs_sq.add(t.cs_half * t.cs_half);
    }
    p.cs_half_sum = cs.value();
    p.cs_half_sq_sum = cs_sq.value();
    return p;
}

EstimateWithCI binomial_estimate(std::uint64_t count, std::uint64_t n) {
    const double p = static_cast<double>(count) / static_cast<double>(n);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    return EstimateWithCI::from_moments(p, se, n);
}

}  // namespace

MetricEstimates estimate_metrics(const SimulationPlan& plan) {
    const SystemConfig config = validate(plan.config);
    if (plan.n_trials < 1) throw RangeError("n_trials", "n_trials must be >= 1");
    if (plan.n_workers < 1) throw RangeError("n_workers", "n_workers must be >= 1");

    const std::uint64_t n_blocks = (plan.n_trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
    std::vector<BlockPartial> partials(n_blocks);

    const unsigned n_threads =
        static_cast<unsigned>(std::min<std::uint64_t>(plan.n_workers, n_blocks));
    if (n_threads <= 1) {
        for (std::uint64_t b = 0; b < n_blocks; ++b) {
            partials[b] = run_block(config, plan.seed, b, plan.n_trials);
        }
    } else {
        std::atomic<std::uint64_t> next_block{0};
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned w = 0; w < n_threads; ++w) {
            pool.emplace_back([&] {
                for (std::uint64_t b = next_block.fetch_add(1); b < n_blocks;
                     b = next_block.fetch_add(1)) {
                    partials[b] = run_block(config, plan.seed, b, plan.n_trials);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    // Merge in block order; block partials do not depend on the executor, so
    // the reduction is bit-identical for any worker count.
    std::uint64_t n = 0, n_nonzero = 0, n_outage = 0;
    CompensatedSum cs, cs_sq;
    for (const BlockPartial& p : partials) {
        n += p.n;
        n_nonzero += p.n_nonzero;
        n_outage += p.n_outage;
        cs.add(p.cs_half_sum);
        cs_sq.add(p.cs_half_sq_sum);
    }

    MetricEstimates est;
    est.p_nonzero = binomial_estimate(n_nonzero, n);
    est.sop = binomial_estimate(n_outage, n);
    const double mean = cs.value() / static_cast<double>(n);
    double variance = 0.0;
    if (n > 1) {
        variance = (cs_sq.value() - static_cast<double>(n) * mean * mean) /
                   static_cast<double>(n - 1);
        variance = std::max(0.0, variance);
    }
    est.ergodic =
        EstimateWithCI::from_moments(mean, std::sqrt(variance / static_cast<double>(n)), n);
    return est;
}

}  // namespace secrely
