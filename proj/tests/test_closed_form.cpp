#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "secrely/closed_form.hpp"
#include "secrely/monte_carlo.hpp"
#include "secrely/quadrature.hpp"

using namespace secrely;

namespace {

// Builds a config with the requested combined relay-path means by setting
// both hops of each path to twice the combined value.
SystemConfig make_config(int n_relays, double rho, double sd, double c, double se, double ce,
                         double rate = 2.0) {
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

// N=5, rho=0.5, S-D 10 dB, S-E -5 dB, combined means at half, rate 2.
SystemConfig reference_config() {
    const double se = db_to_linear(-5.0);
    return make_config(5, 0.5, 10.0, 5.0, se, 0.5 * se);
}

double quadrature_cdf_of_pdf(const ClosedFormContext& ctx, double gamma) {
    QuadratureSettings s;
    s.abs_tol = 1e-12;
    s.rel_tol = 1e-11;
    return integrate_adaptive([&ctx](double x) { return pdf_gamma_opr(ctx, x); }, 0.0, gamma, s)
        .value;
}

}  // namespace

TEST_CASE("pdf_gamma_opr vanishes at zero and matches the two-exponential case") {
    const auto ctx = ClosedFormContext::make(make_config(1, 0.5, 2.0, 1.0, 1.0, 0.5));
    CHECK(pdf_gamma_opr(ctx, 0.0) == 0.0);
    // (e^-1 - e^-0.5) / (1 - 2), frozen from extended precision
    CHECK(pdf_gamma_opr(ctx, 1.0) == doctest::Approx(0.2386512185411911).epsilon(1e-13));
}

TEST_CASE("pdf_gamma_opr integrates to one") {
    for (const SystemConfig& cfg :
         {reference_config(), make_config(3, 0.0, 1.0, 2.0, 1.0, 0.5),
          make_config(7, 1.0, 0.3, 4.0, 2.0, 0.4)}) {
        const auto ctx = ClosedFormContext::make(cfg);
        const double upper = 50.0 * std::max(ctx.gamma_c, ctx.gamma_sd);
        const double mass =
            integrate_adaptive([&ctx](double x) { return pdf_gamma_opr(ctx, x); }, 0.0, upper)
                .value;
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("pdf_gamma_opr stays non-negative under cancellation") {
    const auto ctx = ClosedFormContext::make(make_config(10, 0.35, 5.0, 2.5, 1.0, 0.5));
    for (double x = 0.0; x < 60.0; x += 0.25) {
        CHECK(pdf_gamma_opr(ctx, x) >= 0.0);
    }
}

TEST_CASE("eavesdropper pdf and cdf") {
    const SystemConfig cfg = make_config(1, 0.5, 1.0, 0.5, 1.0, 0.5);
    CHECK(pdf_gamma_opr_e(cfg, 0.0) == 0.0);
    // (e^-2 - e^-1) / (0.5 - 1), frozen from extended precision
    CHECK(pdf_gamma_opr_e(cfg, 1.0) == doctest::Approx(0.4650883158696592594).epsilon(1e-13));
    CHECK(cdf_gamma_opr_e(cfg, 0.0) == 0.0);
    CHECK(cdf_gamma_opr_e(cfg, 1e4) == doctest::Approx(1.0).epsilon(1e-12));

    const double mass =
        integrate_adaptive([&cfg](double y) { return pdf_gamma_opr_e(cfg, y); }, 0.0, 80.0).value;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));

    QuadratureSettings tight;
    tight.abs_tol = 1e-12;
    const double partial =
        integrate_adaptive([&cfg](double y) { return pdf_gamma_opr_e(cfg, y); }, 0.0, 2.0, tight)
            .value;
    CHECK(std::abs(cdf_gamma_opr_e(cfg, 2.0) - partial) <= 1e-10);
}

TEST_CASE("destination CDF agrees with quadrature of the density") {
    const auto ctx = ClosedFormContext::make(reference_config());
    for (double gamma : {0.5, 2.0, 8.0, 25.0}) {
        CHECK(std::abs(cdf_gamma_opr(ctx, gamma) - quadrature_cdf_of_pdf(ctx, gamma)) <= 1e-10);
        CHECK(std::abs(survival_gamma_opr(ctx, gamma) - (1.0 - cdf_gamma_opr(ctx, gamma))) <=
              1e-12);
    }
    CHECK(cdf_gamma_opr(ctx, 0.0) == 0.0);
}

TEST_CASE("non-zero secrecy probability saturates when the main channel dominates") {
    const auto ctx = ClosedFormContext::make(make_config(5, 0.5, 1e4, 5e3, 1.0, 0.5));
    CHECK(prob_nonzero_secrecy(ctx) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("identically distributed sides give exactly one half at N=1") {
    // Combined relay mean 0.5 and direct mean 1.0 on both sides; for N=1 the
    // two combined SNRs are i.i.d., so the probability is 1/2 by symmetry.
    const auto ctx = ClosedFormContext::make(make_config(1, 0.77, 1.0, 0.5, 1.0, 0.5));
    CHECK(std::abs(prob_nonzero_secrecy(ctx) - 0.5) <= 1e-10);
}

TEST_CASE("outage at rate zero is the exact complement of non-zero secrecy") {
    for (const SystemConfig& base :
         {reference_config(), make_config(3, 0.9, 2.0, 3.0, 1.5, 0.2),
          make_config(1, 0.0, 1.0, 0.5, 1.0, 0.5)}) {
        SystemConfig cfg = base;
        cfg.target_rate = 0.0;
        const auto ctx = ClosedFormContext::make(cfg);
        CHECK(std::abs(secrecy_outage_prob(ctx) - (1.0 - prob_nonzero_secrecy(ctx))) <= 1e-12);
    }
}

TEST_CASE("outage saturates at large target rates") {
    SystemConfig cfg = reference_config();
    cfg.target_rate = 60.0;
    const auto ctx = ClosedFormContext::make(cfg);
    CHECK(secrecy_outage_prob(ctx) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("outage is non-decreasing in the target rate") {
    double prev = -1.0;
    for (double rate = 0.0; rate <= 8.0; rate += 0.5) {
        SystemConfig cfg = reference_config();
        cfg.target_rate = rate;
        const double sop = secrecy_outage_prob(ClosedFormContext::make(cfg));
        CHECK(sop >= prev - 1e-12);
        prev = sop;
    }
}

TEST_CASE("ergodic capacity limits") {
    // All means near zero: both capacities vanish.
    const auto tiny = ClosedFormContext::make(make_config(5, 0.5, 1e-8, 5e-9, 1e-8, 5e-9));
    CHECK(ergodic_secrecy_capacity(tiny) == doctest::Approx(0.0).epsilon(1e-6));
    // Eavesdropper far ahead: capacity pinned at ~0 but never negative.
    const auto behind = ClosedFormContext::make(make_config(5, 0.5, 1e-4, 5e-5, 1e3, 5e2));
    const double v = ergodic_secrecy_capacity(behind);
    CHECK(v >= 0.0);
    CHECK(v <= 1e-6);
}

TEST_CASE("unit prefactor doubles the ergodic capacity") {
    SystemConfig cfg = reference_config();
    const double half = ergodic_secrecy_capacity(ClosedFormContext::make(cfg));
    cfg.rate_prefactor = RatePrefactor::Unit;
    const double unit = ergodic_secrecy_capacity(ClosedFormContext::make(cfg));
    CHECK(unit == doctest::Approx(2.0 * half).epsilon(1e-15));
}

TEST_CASE("reference point regression") {
    const auto ctx = ClosedFormContext::make(reference_config());
    CHECK(prob_nonzero_secrecy(ctx) == doctest::Approx(0.9988138386116015).epsilon(1e-12));
    CHECK(secrecy_outage_prob(ctx) == doctest::Approx(0.082160111389216886).epsilon(1e-12));
    CHECK(ergodic_secrecy_capacity(ctx) == doctest::Approx(1.7283323949798872).epsilon(1e-12));
}

TEST_CASE("non-zero secrecy probability is non-decreasing in the correlation") {
    const double se = db_to_linear(-5.0);
    double prev = -1.0;
    for (int i = 0; i <= 10; ++i) {
        const double rho = 0.1 * i;
        const auto ctx = ClosedFormContext::make(make_config(5, rho, 10.0, 5.0, se, 0.5 * se));
        const double p = prob_nonzero_secrecy(ctx);
        CHECK(p >= prev - 1e-13);
        prev = p;
    }
}

TEST_CASE("all metrics are constant in rho for a single relay") {
    SecrecyMetrics first;
    bool have_first = false;
    for (double rho : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const auto ctx = ClosedFormContext::make(make_config(1, rho, 2.0, 0.8, 1.0, 0.4));
        const SecrecyMetrics m = closed_form_metrics(ctx);
        if (!have_first) {
            first = m;
            have_first = true;
            continue;
        }
        CHECK(std::abs(m.p_nonzero - first.p_nonzero) <= 1e-12);
        CHECK(std::abs(m.sop - first.sop) <= 1e-12);
        CHECK(std::abs(m.ergodic_capacity - first.ergodic_capacity) <= 1e-12);
    }
}

TEST_CASE("parameter coincidences are nudged and reported") {
    // gamma_c equal to avg_snr_sd makes the N=1 denominator vanish.
    const auto ctx = ClosedFormContext::make(make_config(1, 0.5, 1.0, 1.0, 1.0, 0.25));
    REQUIRE(!ctx.warnings.empty());
    CHECK(ctx.gamma_sd != ctx.config.avg_snr_sd);
    const double nudged = prob_nonzero_secrecy(ctx);
    // Neighbouring non-singular parameter point for comparison.
    const auto nearby = ClosedFormContext::make(make_config(1, 0.5, 1.0 + 1e-5, 1.0, 1.0, 0.25));
    CHECK(nudged == doctest::Approx(prob_nonzero_secrecy(nearby)).epsilon(1e-4));
    CHECK(std::isfinite(secrecy_outage_prob(ctx)));
    CHECK(std::isfinite(ergodic_secrecy_capacity(ctx)));

    // Same on the eavesdropper side.
    const auto ctx_e = ClosedFormContext::make(make_config(2, 0.5, 2.0, 0.5, 1.0, 1.0));
    REQUIRE(!ctx_e.warnings.empty());
    CHECK(ctx_e.gamma_se != ctx_e.config.avg_snr_se);
    CHECK(std::isfinite(prob_nonzero_secrecy(ctx_e)));
}

TEST_CASE("relay counts beyond the double-precision cap are refused") {
    CHECK_THROWS_AS(ClosedFormContext::make(make_config(26, 0.5, 1.0, 0.5, 1.0, 0.25)),
                    CancellationError);
    CHECK_NOTHROW(ClosedFormContext::make(make_config(25, 0.5, 1.0, 0.5, 1.0, 0.25)));
}
