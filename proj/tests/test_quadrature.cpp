#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "secrely/closed_form.hpp"
#include "secrely/quadrature.hpp"
#include "secrely/special_functions.hpp"
#include "test_support.hpp"

using namespace secrely;
using secrely::testing::make_config;
using secrely::testing::random_config;
using secrely::testing::reference_config;

TEST_CASE("basic integrals") {
    const auto one = [](double) { return 1.0; };
    const QuadratureResult constant = integrate_adaptive(one, 0.0, 1.0);
    CHECK(constant.value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(constant.est_error <= 1e-12);

    const auto decay = [](double x) { return std::exp(-x); };
    CHECK(integrate_adaptive(decay, 0.0, 50.0).value == doctest::Approx(1.0).epsilon(1e-10));

    // integral_0^inf log2(1+x) e^-x = log2(e) e E1(1); tail below 1e-13 at 50.
    const auto logweight = [](double x) { return std::log2(1.0 + x) * std::exp(-x); };
    const double expected = std::log2(std::exp(1.0)) * exp_e1_product(1.0);
    CHECK(integrate_adaptive(logweight, 0.0, 50.0).value ==
          doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("invalid interval is rejected") {
    CHECK_THROWS_AS(integrate_adaptive([](double) { return 1.0; }, 1.0, 1.0), DomainError);
}

TEST_CASE("subdivision exhaustion reports the best estimate") {
    QuadratureSettings starved;
    starved.max_subdivisions = 4;
    starved.abs_tol = 1e-14;
    starved.rel_tol = 1e-14;
    const auto wiggly = [](double x) { return std::sin(50.0 * x) * std::sin(61.0 * x); };
    try {
        integrate_adaptive(wiggly, 0.0, 20.0, starved);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(std::isfinite(e.best_value()));
        CHECK(e.est_error() > 0.0);
    }
}

TEST_CASE("oracle self-consistency: outage at rate zero complements non-zero secrecy") {
    SystemConfig cfg = reference_config();
    cfg.target_rate = 0.0;
    const double pnz = oracle_prob_nonzero(cfg);
    const double sop = oracle_sop(cfg);
    CHECK(std::abs(sop - (1.0 - pnz)) <= 1e-8);
}

TEST_CASE("oracle symmetric case and degenerate eavesdropper") {
    // i.i.d. sides at N=1: probability one half.
    CHECK(oracle_prob_nonzero(make_config(1, 0.3, 1.0, 0.5, 1.0, 0.5)) ==
          doctest::Approx(0.5).epsilon(1e-8));
    // Vanishing eavesdropper SNR: certainty of positive secrecy capacity.
    CHECK(oracle_prob_nonzero(make_config(5, 0.5, 10.0, 5.0, 1e-7, 5e-8)) ==
          doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("oracle outage saturates at large rates") {
    SystemConfig cfg = reference_config();
    cfg.target_rate = 60.0;
    CHECK(oracle_sop(cfg) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("degenerate eavesdropper reduces the ergodic oracle to a single integral") {
    const SystemConfig cfg = make_config(5, 0.5, 10.0, 5.0, 1e-9, 5e-10);
    const ClosedFormContext ctx = ClosedFormContext::make(cfg);
    const double upper = 50.0 * std::max(ctx.gamma_c, ctx.gamma_sd);
    const double expected =
        0.5 * integrate_adaptive(
                  [&ctx](double x) { return std::log2(1.0 + x) * pdf_gamma_opr(ctx, x); }, 0.0,
                  upper)
                  .value;
    CHECK(oracle_ergodic_capacity(cfg) == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("closed forms match the oracles at the reference point") {
    const SystemConfig cfg = reference_config();
    const ClosedFormContext ctx = ClosedFormContext::make(cfg);
    CHECK(std::abs(prob_nonzero_secrecy(ctx) - oracle_prob_nonzero(cfg)) <= 1e-7);
    CHECK(std::abs(secrecy_outage_prob(ctx) - oracle_sop(cfg)) <= 1e-7);
    const double closed = ergodic_secrecy_capacity(ctx);
    const double oracle = oracle_ergodic_capacity(cfg);
    CHECK(std::abs(closed - oracle) <= 1e-6 * std::max(std::abs(closed), std::abs(oracle)));
}

TEST_CASE("closed forms match the oracles across randomized configs") {
    RandomStream rng(515151);
    for (int i = 0; i < 20; ++i) {
        const SystemConfig cfg = random_config(rng);
        INFO("config ", i, ": N=", cfg.n_relays, " rho=", cfg.rho, " sd=", cfg.avg_snr_sd,
             " se=", cfg.avg_snr_se);
        const ClosedFormContext ctx = ClosedFormContext::make(cfg);
        CHECK(std::abs(prob_nonzero_secrecy(ctx) - oracle_prob_nonzero(cfg)) <= 1e-7);
        CHECK(std::abs(secrecy_outage_prob(ctx) - oracle_sop(cfg)) <= 1e-7);
        const double closed = ergodic_secrecy_capacity(ctx);
        const double oracle = oracle_ergodic_capacity(cfg);
        CHECK(std::abs(closed - oracle) <=
              1e-6 * std::max(std::abs(closed), std::abs(oracle)) + 1e-9);
    }
}

TEST_CASE("nested double integral agrees with the reduced ergodic oracle") {
    const SystemConfig cfg = reference_config();
    const double reduced = oracle_ergodic_capacity(cfg);
    const double nested = oracle_ergodic_capacity_nested(cfg);
    CHECK(std::abs(nested - reduced) <= 1e-6 * std::max(1.0, std::abs(reduced)));
}

TEST_CASE("doubling the tail cutoff leaves the oracles unchanged") {
    const SystemConfig cfg = reference_config();
    QuadratureSettings near, far;
    far.tail_cutoff_multiplier = 2.0 * near.tail_cutoff_multiplier;
    CHECK(std::abs(oracle_prob_nonzero(cfg, near) - oracle_prob_nonzero(cfg, far)) <= 1e-9);
    CHECK(std::abs(oracle_sop(cfg, near) - oracle_sop(cfg, far)) <= 1e-9);
    CHECK(std::abs(oracle_ergodic_capacity(cfg, near) - oracle_ergodic_capacity(cfg, far)) <=
          1e-9);
}
