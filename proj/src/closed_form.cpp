#include "secrely/closed_form.hpp"

#include <cassert>
#include <cmath>
#include <sstream>

#include "secrely/compensated_sum.hpp"
#include "secrely/errors.hpp"
#include "secrely/special_functions.hpp"

namespace secrely {

namespace {

constexpr double kNudgeFactor = 1.0 + 1e-6;
constexpr double kClampTol = 1e-9;  // out-of-range tolerance for probabilities

// 1 / (1/a + 1/b) without forming the reciprocals.
double parallel(double a, double b) {
    return a * b / (a + b);
}

// exp(-u) - exp(-v) with full relative accuracy in every regime: factoring
// out the larger exponential avoids the 1 - 1 cancellation near zero without
// quantizing the deep tail the way a plain expm1 difference would.
double exp_diff(double u, double v) {
    if (u == v) return 0.0;
    if (u < v) return -std::exp(-u) * std::expm1(u - v);
    return std::exp(-v) * std::expm1(v - u);
}

struct SignedSum {
    CompensatedSum acc;
    double max_abs = 0.0;

    void add(double term) {
        acc.add(term);
        max_abs = std::max(max_abs, std::abs(term));
    }
};

double clamp_probability(double p, double scale, const char* who) {
    if (p >= 0.0 && p <= 1.0) return p;
    if (p < 0.0 && p >= -kClampTol) return 0.0;
    if (p > 1.0 && p <= 1.0 + kClampTol) return 1.0;
    std::ostringstream oss;
    oss << who << " left [0,1] beyond roundoff tolerance: value " << p
        << " (largest term magnitude " << scale << "); too many relays for double precision";
    throw CancellationError(oss.str());
}

}  // namespace

ClosedFormContext ClosedFormContext::make(const SystemConfig& raw, double singularity_eps) {
    const SystemConfig config = validate(raw);
    if (config.n_relays > kMaxRelaysClosedForm) {
        std::ostringstream oss;
        oss << "closed forms support at most " << kMaxRelaysClosedForm
            << " relays before the alternating sums lose double precision; got " << config.n_relays;
        throw CancellationError(oss.str());
    }

    ClosedFormContext ctx;
    ctx.config = config;
    ctx.gamma_sd = config.avg_snr_sd;
    ctx.gamma_se = config.avg_snr_se;
    ctx.gamma_c = config.gamma_c();
    ctx.gamma_ce = config.gamma_ce();
    ctx.singularity_eps = singularity_eps;

    const int n_relays = config.n_relays;
    ctx.g_terms.resize(n_relays);
    ctx.binom_coeff.resize(n_relays);
    double binom = 1.0;
    for (int n = 1; n <= n_relays; ++n) {
        // g_n = gamma_c [n(1-rho) + rho] / n, written as (n - rho(n-1))/n so
        // the n = 1 term is exactly gamma_c for every rho.
        ctx.g_terms[n - 1] = ctx.gamma_c * (n - config.rho * (n - 1)) / n;
        binom *= static_cast<double>(n_relays - n + 1) / n;  // C(N, n), exact for N <= 25
        ctx.binom_coeff[n - 1] = binom;
    }

    // Nudge gamma_sd away from every g_n, then gamma_se away from gamma_ce.
    for (int attempt = 0; attempt < 64; ++attempt) {
        double worst = ctx.gamma_sd;
        bool collided = false;
        for (double g : ctx.g_terms) {
            if (std::abs(g - ctx.gamma_sd) < singularity_eps * ctx.gamma_sd) {
                collided = true;
                worst = g;
            }
        }
        if (!collided) break;
        const double old = ctx.gamma_sd;
        ctx.gamma_sd *= kNudgeFactor;
        std::ostringstream oss;
        oss << "desingularized avg_snr_sd " << old << " -> " << ctx.gamma_sd
            << " (coincided with relay-term mean " << worst << ")";
        ctx.warnings.push_back(oss.str());
    }
    for (int attempt = 0; attempt < 64; ++attempt) {
        if (std::abs(ctx.gamma_ce - ctx.gamma_se) >= singularity_eps * ctx.gamma_se) break;
        const double old = ctx.gamma_se;
        ctx.gamma_se *= kNudgeFactor;
        std::ostringstream oss;
        oss << "desingularized avg_snr_se " << old << " -> " << ctx.gamma_se
            << " (coincided with combined eavesdropper relay mean " << ctx.gamma_ce << ")";
        ctx.warnings.push_back(oss.str());
    }

    ctx.a_terms.resize(n_relays);
    for (int n = 1; n <= n_relays; ++n) {
        ctx.a_terms[n - 1] =
            1.0 / ((ctx.gamma_ce - ctx.gamma_se) * (ctx.g_terms[n - 1] - ctx.gamma_sd));
    }
    return ctx;
}

double pdf_gamma_opr(const ClosedFormContext& ctx, double gamma) {
    if (!(gamma >= 0.0)) throw DomainError("pdf_gamma_opr requires gamma >= 0");
    SignedSum s;
    for (size_t i = 0; i < ctx.g_terms.size(); ++i) {
        const double g = ctx.g_terms[i];
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;  // (-1)^(n-1)
        s.add(sign * ctx.binom_coeff[i] * exp_diff(gamma / g, gamma / ctx.gamma_sd) /
              (g - ctx.gamma_sd));
    }
    const double value = s.acc.value();
    if (value >= 0.0) return value;
    if (value >= -1e-9 * s.max_abs) return 0.0;
    std::ostringstream oss;
    oss << "pdf_gamma_opr went negative beyond cancellation tolerance: " << value
        << " at gamma = " << gamma << " (largest term " << s.max_abs << ")";
    throw CancellationError(oss.str());
}

double survival_gamma_opr(const ClosedFormContext& ctx, double gamma) {
    if (!(gamma >= 0.0)) throw DomainError("survival_gamma_opr requires gamma >= 0");
    const double exp_sd = std::exp(-gamma / ctx.gamma_sd);
    SignedSum s;
    for (size_t i = 0; i < ctx.g_terms.size(); ++i) {
        const double g = ctx.g_terms[i];
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        s.add(sign * ctx.binom_coeff[i] *
              (g * std::exp(-gamma / g) - ctx.gamma_sd * exp_sd) / (g - ctx.gamma_sd));
    }
    return clamp_probability(s.acc.value(), s.max_abs, "survival_gamma_opr");
}

double cdf_gamma_opr(const ClosedFormContext& ctx, double gamma) {
    if (!(gamma >= 0.0)) throw DomainError("cdf_gamma_opr requires gamma >= 0");
    const double exp_sd = std::exp(-gamma / ctx.gamma_sd);
    SignedSum s;
    for (size_t i = 0; i < ctx.g_terms.size(); ++i) {
        const double g = ctx.g_terms[i];
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        s.add(sign * ctx.binom_coeff[i] *
              (1.0 - (g * std::exp(-gamma / g) - ctx.gamma_sd * exp_sd) / (g - ctx.gamma_sd)));
    }
    return clamp_probability(s.acc.value(), s.max_abs, "cdf_gamma_opr");
}

namespace {

double pdf_opr_e_impl(double gamma, double ce, double se) {
    // Hypoexponential density; sign structure keeps it non-negative for any
    // ordering of the two means.
    return exp_diff(gamma / ce, gamma / se) / (ce - se);
}

double cdf_opr_e_impl(double gamma, double ce, double se) {
    const double v =
        1.0 - (ce * std::exp(-gamma / ce) - se * std::exp(-gamma / se)) / (ce - se);
    return std::min(1.0, std::max(0.0, v));
}

void check_e_separation(const SystemConfig& config) {
    if (std::abs(config.gamma_ce() - config.avg_snr_se) < 1e-9 * config.avg_snr_se) {
        throw DomainError(
            "gamma_ce and avg_snr_se coincide; build a ClosedFormContext to desingularize");
    }
}

}  // namespace

double pdf_gamma_opr_e(const SystemConfig& config, double gamma) {
    if (!(gamma >= 0.0)) throw DomainError("pdf_gamma_opr_e requires gamma >= 0");
    check_e_separation(config);
    return std::max(0.0, pdf_opr_e_impl(gamma, config.gamma_ce(), config.avg_snr_se));
}

double cdf_gamma_opr_e(const SystemConfig& config, double gamma) {
    if (!(gamma >= 0.0)) throw DomainError("cdf_gamma_opr_e requires gamma >= 0");
    check_e_separation(config);
    return cdf_opr_e_impl(gamma, config.gamma_ce(), config.avg_snr_se);
}

double pdf_gamma_opr_e(const ClosedFormContext& ctx, double gamma) {
    if (!(gamma >= 0.0)) throw DomainError("pdf_gamma_opr_e requires gamma >= 0");
    return std::max(0.0, pdf_opr_e_impl(gamma, ctx.gamma_ce, ctx.gamma_se));
}

double cdf_gamma_opr_e(const ClosedFormContext& ctx, double gamma) {
    if (!(gamma >= 0.0)) throw DomainError("cdf_gamma_opr_e requires gamma >= 0");
    return cdf_opr_e_impl(gamma, ctx.gamma_ce, ctx.gamma_se);
}

double prob_nonzero_secrecy(const ClosedFormContext& ctx) {
    const double ce = ctx.gamma_ce;
    const double se = ctx.gamma_se;
    const double sd = ctx.gamma_sd;
    const double ce_weight = ce / (ce - se);
    const double se_weight = se / (ce - se);
    SignedSum s;
    for (size_t i = 0; i < ctx.g_terms.size(); ++i) {
        const double g = ctx.g_terms[i];
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        const double bracket =
            ce_weight * (parallel(g, ce) - parallel(sd, ce)) -
            se_weight * (parallel(g, se) - parallel(sd, se));
        s.add(sign * ctx.binom_coeff[i] * (1.0 - bracket / (g - sd)));
    }
    return clamp_probability(s.acc.value(), s.max_abs, "prob_nonzero_secrecy");
}

double secrecy_outage_prob(const ClosedFormContext& ctx) {
    const double ce = ctx.gamma_ce;
    const double se = ctx.gamma_se;
    const double sd = ctx.gamma_sd;
    const double threshold = std::exp2(ctx.config.target_rate);  // shared across terms
    SignedSum s;
    for (size_t i = 0; i < ctx.g_terms.size(); ++i) {
        const double g = ctx.g_terms[i];
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        const double relay_part =
            g * std::exp((1.0 - threshold) / g) *
            (1.0 / (threshold / g + 1.0 / ce) - 1.0 / (threshold / g + 1.0 / se));
        const double direct_part =
            sd * std::exp((1.0 - threshold) / sd) *
            (1.0 / (threshold / sd + 1.0 / ce) - 1.0 / (threshold / sd + 1.0 / se));
        s.add(sign * ctx.binom_coeff[i] * ctx.a_terms[i] * (relay_part - direct_part));
    }
    return clamp_probability(1.0 - s.acc.value(), s.max_abs, "secrecy_outage_prob");
}

double ergodic_secrecy_capacity(const ClosedFormContext& ctx) {
    const double ce = ctx.gamma_ce;
    const double se = ctx.gamma_se;
    const double sd = ctx.gamma_sd;

    // Each piece is a weighted alpha * exp(1/alpha) E1(1/alpha) with
    // 1/alpha a sum of rate parameters; evaluated as exp_e1_product(arg)/arg
    // so low-SNR (large-argument) points neither overflow nor underflow.
    const auto weighted = [](double arg) {
        assert(arg > 0.0);
        return exp_e1_product(arg) / arg;
    };

    const double direct_piece = sd * exp_e1_product(1.0 / sd);
    const double e_direct = weighted(1.0 / sd + 1.0 / ce);
    const double e_cross = weighted(1.0 / sd + 1.0 / se);

    SignedSum s;
    for (size_t i = 0; i < ctx.g_terms.size(); ++i) {
        const double g = ctx.g_terms[i];
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        const double inner =
            (ce - se) * (g * exp_e1_product(1.0 / g) - direct_piece)
            - (ce + g) * weighted(1.0 / g + 1.0 / ce)
            + (ce + sd) * e_direct
            + (se + g) * weighted(1.0 / g + 1.0 / se)
            - (se + sd) * e_cross;
        s.add(sign * ctx.binom_coeff[i] * inner / (g - sd));
    }

    const double prefactor = 1.0 / (2.0 * std::log(2.0) * (ce - se));
    double value = prefactor * s.acc.value();
    if (ctx.config.rate_prefactor == RatePrefactor::Unit) value *= 2.0;
    if (!std::isfinite(value)) {
        throw NonFiniteError("ergodic_secrecy_capacity produced a non-finite value");
    }
    if (value < 0.0) {
        const double scale = std::abs(prefactor) * s.max_abs;
        if (value >= -1e-9 * std::max(scale, 1.0)) return 0.0;
        std::ostringstream oss;
        oss << "ergodic_secrecy_capacity went negative beyond cancellation tolerance: " << value;
        throw CancellationError(oss.str());
    }
    return value;
}

SecrecyMetrics closed_form_metrics(const ClosedFormContext& ctx) {
    SecrecyMetrics m;
    m.p_nonzero = prob_nonzero_secrecy(ctx);
    m.sop = secrecy_outage_prob(ctx);
    m.ergodic_capacity = ergodic_secrecy_capacity(ctx);
    return m;
}

}  // namespace secrely
