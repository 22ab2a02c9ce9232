#include "secrely/quadrature.hpp"

#include <cmath>

#include "secrely/closed_form.hpp"

namespace secrely {

namespace {

double tail_cutoff(const ClosedFormContext& ctx, const QuadratureSettings& settings) {
    const double largest_mean = std::max(std::max(ctx.gamma_c, ctx.gamma_sd),
                                         std::max(ctx.gamma_ce, ctx.gamma_se));
    return settings.tail_cutoff_multiplier * largest_mean;
}

}  // namespace

std::vector<double> geometric_breakpoints(double hi) {
    std::vector<double> pts;
    for (double x = hi; x > hi * 1e-16; x *= 0.25) pts.push_back(x);
    pts.push_back(0.0);
    std::reverse(pts.begin(), pts.end());
    return pts;
}

double oracle_prob_nonzero(const SystemConfig& config, const QuadratureSettings& settings) {
    const ClosedFormContext ctx = ClosedFormContext::make(config);
    const double hi = tail_cutoff(ctx, settings);
    const auto integrand = [&ctx](double gamma) {
        return pdf_gamma_opr(ctx, gamma) * cdf_gamma_opr_e(ctx, gamma);
    };
    const double p = integrate_adaptive(integrand, geometric_breakpoints(hi), settings).value;
    return std::min(1.0, std::max(0.0, p));
}

double oracle_sop(const SystemConfig& config, const QuadratureSettings& settings) {
    const ClosedFormContext ctx = ClosedFormContext::make(config);
    const double hi = tail_cutoff(ctx, settings);
    const double threshold = std::exp2(config.target_rate);
    const auto integrand = [&ctx, threshold](double y) {
        return pdf_gamma_opr_e(ctx, y) * survival_gamma_opr(ctx, threshold * (1.0 + y) - 1.0);
    };
    const double covered =
        integrate_adaptive(integrand, geometric_breakpoints(hi), settings).value;
    return std::min(1.0, std::max(0.0, 1.0 - covered));
}

double oracle_ergodic_capacity(const SystemConfig& config, const QuadratureSettings& settings) {
    const ClosedFormContext ctx = ClosedFormContext::make(config);
    const std::vector<double> pts = geometric_breakpoints(tail_cutoff(ctx, settings));
    // Gain over the destination variate weighted by the eavesdropper CDF,
    // minus loss over the eavesdropper variate weighted by the destination
    // survival; each inner integral collapsed to the closed-form weight.
    const auto gain = [&ctx](double x) {
        return std::log2(1.0 + x) * pdf_gamma_opr(ctx, x) * cdf_gamma_opr_e(ctx, x);
    };
    const auto loss = [&ctx](double y) {
        return std::log2(1.0 + y) * pdf_gamma_opr_e(ctx, y) * survival_gamma_opr(ctx, y);
    };
    const double value = 0.5 * (integrate_adaptive(gain, pts, settings).value -
                                integrate_adaptive(loss, pts, settings).value);
    if (value < 0.0 && value >= -1e-9) return 0.0;
    if (value < 0.0) {
        throw NonFiniteError("oracle_ergodic_capacity produced a negative value beyond tolerance");
    }
    return value;
}

double oracle_ergodic_capacity_nested(const SystemConfig& config,
                                      const QuadratureSettings& settings) {
    const ClosedFormContext ctx = ClosedFormContext::make(config);
    const double hi = tail_cutoff(ctx, settings);
    const std::vector<double> pts = geometric_breakpoints(hi);
    QuadratureSettings inner = settings;
    inner.abs_tol = std::max(settings.abs_tol, 1e-9);
    inner.rel_tol = std::max(settings.rel_tol, 1e-8);

    const auto inner_breakpoints = [&pts](double lo, double hi_local) {
        std::vector<double> out;
        out.push_back(lo);
        for (double p : pts) {
            if (p > lo && p < hi_local) out.push_back(p);
        }
        out.push_back(hi_local);
        return out;
    };

    const auto gain = [&](double x) {
        if (x == 0.0) return 0.0;
        const double w = integrate_adaptive([&ctx](double y) { return pdf_gamma_opr_e(ctx, y); },
                                            inner_breakpoints(0.0, x), inner)
                             .value;
        return std::log2(1.0 + x) * pdf_gamma_opr(ctx, x) * w;
    };
    const auto loss = [&](double y) {
        if (y >= hi) return 0.0;
        const double w = integrate_adaptive([&ctx](double x) { return pdf_gamma_opr(ctx, x); },
                                            inner_breakpoints(y, hi), inner)
                             .value;
        return std::log2(1.0 + y) * pdf_gamma_opr_e(ctx, y) * w;
    };
    return 0.5 * (integrate_adaptive(gain, pts, inner).value -
                  integrate_adaptive(loss, pts, inner).value);
}

SecrecyMetrics oracle_metrics(const SystemConfig& config, const QuadratureSettings& settings) {
    SecrecyMetrics m;
    m.p_nonzero = oracle_prob_nonzero(config, settings);
    m.sop = oracle_sop(config, settings);
    m.ergodic_capacity = oracle_ergodic_capacity(config, settings);
    if (config.rate_prefactor == RatePrefactor::Unit) m.ergodic_capacity *= 2.0;
    return m;
}

}  // namespace secrely
