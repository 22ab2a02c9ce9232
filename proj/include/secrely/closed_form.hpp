#pragma once

#include <string>
#include <vector>

#include "secrely/system_config.hpp"

namespace secrely {

// Alternating binomial sums over relay terms blow up roughly like 2^N in
// double precision; beyond this many relays the closed forms are refused.
inline constexpr int kMaxRelaysClosedForm = 25;

// Precomputed per-term quantities for the outdated-selection mixture sums.
//
// The closed forms divide by (g_n - gamma_sd) and (gamma_ce - gamma_se),
// which are removable-singularity denominators: construction nudges the
// colliding parameter (gamma_sd or gamma_se respectively) by a relative 1e-6
// whenever a denominator falls below singularity_eps relative, and records a
// warning. The perturbation error is far below both quadrature and Monte
// Carlo noise.
struct ClosedFormContext {
    SystemConfig config;              // as supplied (validated)
    double gamma_sd = 0.0;            // possibly nudged copy of avg_snr_sd
    double gamma_se = 0.0;            // possibly nudged copy of avg_snr_se
    double gamma_c = 0.0;
    double gamma_ce = 0.0;
    std::vector<double> g_terms;      // mean of the selected relay's delivered SNR, term n = 1..N
    std::vector<double> binom_coeff;  // C(N, n), n = 1..N
    std::vector<double> a_terms;      // 1 / ((gamma_ce - gamma_se) (g_n - gamma_sd))
    double singularity_eps = 1e-9;
    std::vector<std::string> warnings;

    // Validates the config; throws CancellationError for n_relays above
    // kMaxRelaysClosedForm.
    static ClosedFormContext make(const SystemConfig& config, double singularity_eps = 1e-9);
};

// Density of the combined destination SNR (direct link plus the relay
// selected on stale measurements). Signed binomial mixture of two-exponential
// convolution terms; tiny negative excursions from cancellation are clamped
// to 0, excursions beyond 1e-9 of the largest term raise CancellationError.
double pdf_gamma_opr(const ClosedFormContext& ctx, double gamma);
// Its CDF and survival function (term-wise antiderivatives, clamped to [0,1]).
double cdf_gamma_opr(const ClosedFormContext& ctx, double gamma);
double survival_gamma_opr(const ClosedFormContext& ctx, double gamma);

// Density / CDF of the combined eavesdropper SNR: sum of the direct tap and
// the two-hop relay tap, i.e. a hypoexponential with means gamma_ce and
// avg_snr_se. The SystemConfig overloads require those means to be separated
// by more than the default desingularization threshold.
double pdf_gamma_opr_e(const SystemConfig& config, double gamma);
double cdf_gamma_opr_e(const SystemConfig& config, double gamma);
double pdf_gamma_opr_e(const ClosedFormContext& ctx, double gamma);
double cdf_gamma_opr_e(const ClosedFormContext& ctx, double gamma);

// Probability that the destination SNR exceeds the eavesdropper SNR.
double prob_nonzero_secrecy(const ClosedFormContext& ctx);

// Probability that the secrecy capacity falls below config.target_rate. The
// threshold term is 2^target_rate (unit prefactor convention) regardless of
// config.rate_prefactor.
double secrecy_outage_prob(const ClosedFormContext& ctx);

// Mean secrecy capacity in bits/s/Hz; carries the 1/2 half-duplex factor
// under RatePrefactor::Half, twice that under Unit.
double ergodic_secrecy_capacity(const ClosedFormContext& ctx);

SecrecyMetrics closed_form_metrics(const ClosedFormContext& ctx);

}  // namespace secrely
