#pragma once

#include <cstdint>
#include <string>

#include "secrely/errors.hpp"

namespace secrely {

// Whether secrecy capacity carries the 1/2 half-duplex factor. The outage
// closed form always uses the unit-factor threshold 2^rate; the ergodic
// capacity follows this switch (Half by default).
enum class RatePrefactor { Half, Unit };

// Average-SNR parameterization of the network: one direct source-destination
// link, n_relays statistically identical two-hop relay paths selected
// opportunistically on stale measurements, and an eavesdropper observing the
// direct and selected relay transmissions. All SNR fields are linear scale.
struct SystemConfig {
    int n_relays = 1;
    double rho = 1.0;          // selection/transmission power correlation, in [0, 1]
    double avg_snr_sd = 1.0;   // direct source-destination link
    double avg_snr_sr = 1.0;   // source-relay hop (identical across relays)
    double avg_snr_rd = 1.0;   // relay-destination hop
    double avg_snr_se = 1.0;   // direct source-eavesdropper link
    double avg_snr_sb = 1.0;   // source-to-selected-relay as seen by the eavesdropper path
    double avg_snr_be = 1.0;   // selected-relay-to-eavesdropper hop
    double target_rate = 0.0;  // secrecy rate threshold, bits/s/Hz
    RatePrefactor rate_prefactor = RatePrefactor::Half;

    // Combined average SNR of a two-hop relay path. The end-to-end SNR is the
    // min of two independent exponentials, itself exponential with this mean.
    double gamma_c() const { return avg_snr_sr * avg_snr_rd / (avg_snr_sr + avg_snr_rd); }
    // Same combination for the eavesdropper's relay-path hops.
    double gamma_ce() const { return avg_snr_sb * avg_snr_be / (avg_snr_sb + avg_snr_be); }
};

// Checks every field range plus the derived combined SNRs and returns the
// config unchanged. Throws RangeError naming the offending field. Idempotent.
SystemConfig validate(const SystemConfig& config);

double db_to_linear(double x_db);
// Throws DomainError for x <= 0.
double linear_to_db(double x);

// Scalar secrecy metrics for one parameter point.
struct SecrecyMetrics {
    double p_nonzero = 0.0;         // probability of non-zero secrecy capacity
    double sop = 0.0;               // secrecy outage probability at target_rate
    double ergodic_capacity = 0.0;  // bits/s/Hz
};

// Point estimate with a 95% normal-approximation confidence interval
// (half-width exactly 1.96 standard errors).
struct EstimateWithCI {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n_samples = 0;
    double ci95_low = 0.0;
    double ci95_high = 0.0;

    static EstimateWithCI from_moments(double mean, double std_error, std::uint64_t n_samples);
};

std::string to_string(RatePrefactor p);

}  // namespace secrely
