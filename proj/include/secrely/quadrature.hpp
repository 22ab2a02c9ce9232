#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "secrely/compensated_sum.hpp"
#include "secrely/errors.hpp"
#include "secrely/system_config.hpp"

namespace secrely {

struct QuadratureSettings {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_subdivisions = 2000;
    // Integration upper limit for the semi-infinite metric integrals, as a
    // multiple of the largest mean SNR in the config. Exponential tails make
    // hard truncation safe; see the tail-robustness test.
    double tail_cutoff_multiplier = 50.0;
};

struct QuadratureResult {
    double value = 0.0;
    double est_error = 0.0;
};

namespace detail {

// One Gauss-Kronrod 7/15 application on [lo, hi]: Kronrod value plus the
// usual QUADPACK-style error estimate from the Gauss/Kronrod difference.
template <typename F>
QuadratureResult gauss_kronrod_15(F&& f, double lo, double hi) {
    // 15-point Kronrod abscissae (positive half) and weights; the 7-point
    // Gauss rule sits on the odd-index nodes.
    static constexpr double xgk[8] = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    static constexpr double wgk[8] = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static constexpr double wg[4] = {
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

    const double center = 0.5 * (lo + hi);
    const double half_length = 0.5 * (hi - lo);

    const double f_center = f(center);
    double result_gauss = wg[3] * f_center;
    double result_kronrod = wgk[7] * f_center;
    double result_abs = wgk[7] * std::abs(f_center);

    double fv[15];
    fv[7] = f_center;
    for (int j = 0; j < 7; ++j) {
        const double dx = half_length * xgk[j];
        const double f_lo = f(center - dx);
        const double f_hi = f(center + dx);
        fv[j] = f_lo;
        fv[14 - j] = f_hi;
        result_kronrod += wgk[j] * (f_lo + f_hi);
        result_abs += wgk[j] * (std::abs(f_lo) + std::abs(f_hi));
        if (j % 2 == 1) {  // Gauss nodes: xgk[1], xgk[3], xgk[5]
            result_gauss += wg[j / 2] * (f_lo + f_hi);
        }
    }

    const double mean = 0.5 * result_kronrod;
    double result_asc = wgk[7] * std::abs(f_center - mean);
    for (int j = 0; j < 7; ++j) {
        result_asc += wgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
    }
    result_asc *= half_length;
    result_abs *= half_length;

    const double value = result_kronrod * half_length;
    double err = std::abs((result_kronrod - result_gauss) * half_length);
    if (result_asc != 0.0 && err != 0.0) {
        err = result_asc * std::min(1.0, std::pow(200.0 * err / result_asc, 1.5));
    }
    err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * result_abs);
    return {value, err};
}

}  // namespace detail

// Globally adaptive integration of f over consecutive breakpoint intervals:
// repeatedly bisects the segment with the largest error estimate until the
// summed estimate meets max(abs_tol, rel_tol * |value|). Seeding several
// breakpoints keeps narrow features visible when the domain spans many
// orders of magnitude. Throws ConvergenceError carrying the best estimate
// when max_subdivisions segments are not enough.
template <typename F>
QuadratureResult integrate_adaptive(F&& f, const std::vector<double>& breakpoints,
                                    const QuadratureSettings& settings = {}) {
    if (breakpoints.size() < 2) throw DomainError("integrate_adaptive needs >= 2 breakpoints");
    for (size_t i = 1; i < breakpoints.size(); ++i) {
        if (!(breakpoints[i - 1] < breakpoints[i])) {
            throw DomainError("integrate_adaptive breakpoints must be strictly increasing");
        }
    }

    struct Segment {
        double lo, hi;
        QuadratureResult r;
    };
    std::vector<Segment> segments;
    segments.reserve(breakpoints.size() - 1);
    for (size_t i = 1; i < breakpoints.size(); ++i) {
        segments.push_back({breakpoints[i - 1], breakpoints[i],
                            detail::gauss_kronrod_15(f, breakpoints[i - 1], breakpoints[i])});
    }

    const auto totals = [&segments] {
        CompensatedSum value, err;
        for (const Segment& s : segments) {
            value.add(s.r.value);
            err.add(s.r.est_error);
        }
        return QuadratureResult{value.value(), err.value()};
    };

    QuadratureResult total = totals();
    while (total.est_error > std::max(settings.abs_tol, settings.rel_tol * std::abs(total.value))) {
        if (static_cast<int>(segments.size()) >= settings.max_subdivisions) {
            std::ostringstream oss;
            oss << "adaptive quadrature did not converge within " << settings.max_subdivisions
                << " subdivisions: value " << total.value << ", est_error " << total.est_error;
            throw ConvergenceError(oss.str(), total.value, total.est_error);
        }
        size_t worst = 0;
        for (size_t i = 1; i < segments.size(); ++i) {
            if (segments[i].r.est_error > segments[worst].r.est_error) worst = i;
        }
        const Segment split = segments[worst];
        const double mid = 0.5 * (split.lo + split.hi);
        if (mid <= split.lo || mid >= split.hi) {
            // Interval at double resolution; cannot refine further.
            throw ConvergenceError("adaptive quadrature hit an unsplittable interval",
                                   total.value, total.est_error);
        }
        segments[worst] = {split.lo, mid, detail::gauss_kronrod_15(f, split.lo, mid)};
        segments.push_back({mid, split.hi, detail::gauss_kronrod_15(f, mid, split.hi)});
        total = totals();
    }

    // Sum left-to-right for a reproducible, well-ordered final reduction.
    std::sort(segments.begin(), segments.end(),
              [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
    CompensatedSum value, err;
    for (const Segment& s : segments) {
        value.add(s.r.value);
        err.add(s.r.est_error);
    }
    return {value.value(), err.value()};
}

template <typename F>
QuadratureResult integrate_adaptive(F&& f, double lo, double hi,
                                    const QuadratureSettings& settings = {}) {
    if (!(lo < hi)) throw DomainError("integrate_adaptive requires lo < hi");
    return integrate_adaptive(std::forward<F>(f), std::vector<double>{lo, hi}, settings);
}

// Breakpoints for [0, hi] descending geometrically from hi, so an integrand
// whose support is orders of magnitude narrower than the truncated domain
// still lands inside comparably sized starting segments.
std::vector<double> geometric_breakpoints(double hi);

// Ground-truth evaluation of the three secrecy metrics directly from the
// defining integrals over the SNR densities, independent of the closed-form
// metric expressions. Double integrals are reduced to single ones through
// the closed-form inner CDF / survival weights.
double oracle_prob_nonzero(const SystemConfig& config, const QuadratureSettings& settings = {});
double oracle_sop(const SystemConfig& config, const QuadratureSettings& settings = {});
// Half-prefactor ergodic secrecy capacity (bits/s/Hz).
double oracle_ergodic_capacity(const SystemConfig& config, const QuadratureSettings& settings = {});
// Debug route keeping the genuine nested double integral; slower and looser
// (~1e-6) but free of the CDF-reduction step.
double oracle_ergodic_capacity_nested(const SystemConfig& config,
                                      const QuadratureSettings& settings = {});

// All three oracles, with the ergodic value scaled to match the config's
// rate_prefactor convention so rows compare directly with closed_form_metrics.
SecrecyMetrics oracle_metrics(const SystemConfig& config, const QuadratureSettings& settings = {});

}  // namespace secrely
