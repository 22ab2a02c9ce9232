#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "secrely/quadrature.hpp"
#include "secrely/special_functions.hpp"

using namespace secrely;

namespace {

// Reference values frozen from a 60-digit series / continued-fraction
// evaluation of the defining integral.
struct Reference {
    double x;
    double e1;
};
constexpr Reference kE1Reference[] = {
    {0.01, 4.037929576538113832},
    {0.1, 1.822923958419390666},
    {0.5, 0.5597735947761608117},
    {1.0, 0.2193839343955202737},
    {2.0, 0.04890051070806111957},
    {5.0, 0.001148295591275325797},
    {10.0, 4.156968929685324277e-6},
    {50.0, 3.783264029550459019e-24},
};

}  // namespace

TEST_CASE("E1 matches the frozen references within 1e-13 absolute") {
    for (const Reference& ref : kE1Reference) {
        const E1Result r = exp_integral_e1(ref.x);
        CHECK(std::abs(r.value - ref.e1) <= 1e-13);
        CHECK(r.est_abs_error <= 1e-13);
        CHECK(r.value > 0.0);
    }
}

TEST_CASE("E1 error estimate stays honest across the supported range") {
    for (double x : {1e-8, 1e-6, 1e-3, 0.2, 0.999, 1.0, 1.001, 3.0, 30.0, 300.0, 700.0}) {
        const E1Result r = exp_integral_e1(x);
        CHECK(r.value > 0.0);
        CHECK(r.est_abs_error >= 0.0);
        CHECK(r.est_abs_error <= 1e-13);
    }
}

TEST_CASE("E1 domain and underflow edges") {
    CHECK_THROWS_AS(exp_integral_e1(0.0), DomainError);
    CHECK_THROWS_AS(exp_integral_e1(-3.0), DomainError);
    CHECK_THROWS_AS(exp_e1_product(0.0), DomainError);
    const E1Result deep = exp_integral_e1(800.0);
    CHECK(deep.value == 0.0);
    CHECK(deep.est_abs_error == 0.0);
}

TEST_CASE("E1 is strictly decreasing and below exp(-x)/x") {
    double prev = std::numeric_limits<double>::infinity();
    for (double x = 0.05; x <= 60.0; x *= 1.37) {
        const double v = exp_integral_e1(x).value;
        CHECK(v < prev);
        CHECK(v > 0.0);
        CHECK(v < std::exp(-x) / x);
        prev = v;
    }
}

TEST_CASE("exp(x) E1(x) matches the frozen references") {
    CHECK(exp_e1_product(1.0) == doctest::Approx(0.5963473623231940743).epsilon(1e-14));
    CHECK(exp_e1_product(0.5) == doctest::Approx(0.9229106324837304688).epsilon(1e-14));
    CHECK(exp_e1_product(10.0) == doctest::Approx(0.09156333393978808188).epsilon(1e-14));
    CHECK(exp_e1_product(100.0) == doctest::Approx(0.009901942286733018406).epsilon(1e-14));
    // Asymptotic regime 1/x - 1/x^2 + 2/x^3 - ...
    CHECK(exp_e1_product(1000.0) == doctest::Approx(9.99001994023880715e-4).epsilon(1e-13));
    // Tiny-argument regime: exp(x) ~ 1, value ~ -euler_gamma - ln x
    CHECK(exp_e1_product(1e-6) == doctest::Approx(13.23830913136500346).epsilon(1e-14));
}

TEST_CASE("exp(x) E1(x) stays finite far past the E1 underflow point") {
    const double v = exp_e1_product(1e6);
    CHECK(v > 0.0);
    CHECK(v == doctest::Approx(1e-6 - 1e-12).epsilon(1e-10));
}

TEST_CASE("series and continued fraction agree across the crossover band") {
    for (double x = 0.5; x <= 2.0; x += 0.03125) {
        const double from_series = std::exp(x) * detail::e1_series(x).value;
        const double from_cf = detail::exp_e1_continued_fraction(x);
        CHECK(from_cf == doctest::Approx(from_series).epsilon(2e-13));
    }
}

TEST_CASE("log-integral identity against adaptive quadrature") {
    // integral_0^inf log2(1+x) exp(-x/alpha) dx = alpha log2(e) exp(1/alpha) E1(1/alpha)
    for (double alpha : {0.1, 1.0, 10.0, 100.0}) {
        const double upper = 45.0 * alpha;  // exp tail below 1e-12 relative
        const auto integrand = [alpha](double x) {
            return std::log2(1.0 + x) * std::exp(-x / alpha);
        };
        const double numeric = integrate_adaptive(integrand, 0.0, upper).value;
        const double closed = alpha * std::log2(std::exp(1.0)) * exp_e1_product(1.0 / alpha);
        CHECK(std::abs(numeric - closed) <= 1e-9 * std::max(1.0, std::abs(closed)));
    }
}

TEST_CASE("E1 agrees with direct quadrature of the defining integral") {
    for (double x : {0.01, 0.1, 0.7, 1.5, 5.0, 20.0, 50.0}) {
        const auto integrand = [](double t) { return std::exp(-t) / t; };
        const double upper = x + 60.0;
        const double numeric = integrate_adaptive(integrand, x, upper).value;
        CHECK(std::abs(exp_integral_e1(x).value - numeric) <= 1e-10);
    }
}
