#include "secrely/special_functions.hpp"

#include <cmath>
#include <limits>

#include "secrely/errors.hpp"

namespace secrely {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;  // 20 significant digits
constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_domain(double x, const char* who) {
    if (!(x > 0.0)) throw DomainError(std::string(who) + " requires x > 0");
}

}  // namespace

namespace detail {

E1Result e1_series(double x) {
    // E1(x) = -euler_gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
    const double lead = -kEulerGamma - std::log(x);
    double sum = lead;
    double xk_over_kfact = 1.0;  // x^k / k!
    double term = 0.0;
    for (int k = 1; k <= 80; ++k) {
        xk_over_kfact *= x / k;
        term = xk_over_kfact / k;
        sum += (k % 2 == 1) ? term : -term;
        if (term <= kEps * std::abs(sum)) break;
    }
    // Truncation is bounded by the first omitted term (alternating series);
    // rounding by a few ulps of the largest intermediate.
    const double rounding = 4.0 * kEps * (std::abs(lead) + std::abs(sum) + (x < 1.0 ? x : x * std::exp(x)));
    return {sum, term + rounding};
}

double exp_e1_continued_fraction(double x, double* est_rel_error) {
    // exp(x) E1(x) = 1 / (x+1 - 1^2/(x+3 - 2^2/(x+5 - ...))), evaluated with
    // the modified Lentz algorithm.
    constexpr double kTiny = 1e-300;
    double f = x + 1.0;
    if (f == 0.0) f = kTiny;
    double c = f;
    double d = 0.0;
    double delta = 0.0;
    for (int j = 1; j <= 400; ++j) {
        const double a = -static_cast<double>(j) * static_cast<double>(j);
        const double b = x + 1.0 + 2.0 * j;
        d = b + a * d;
        if (d == 0.0) d = kTiny;
        c = b + a / c;
        if (c == 0.0) c = kTiny;
        d = 1.0 / d;
        delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 0.5 * kEps) break;
    }
    if (est_rel_error != nullptr) {
        *est_rel_error = std::abs(delta - 1.0) + 8.0 * kEps;
    }
    return 1.0 / f;
}

}  // namespace detail

E1Result exp_integral_e1(double x) {
    check_domain(x, "exp_integral_e1");
    if (x <= 1.0) return detail::e1_series(x);
    double rel = 0.0;
    const double product = detail::exp_e1_continued_fraction(x, &rel);
    const double value = std::exp(-x) * product;
    return {value, value * (rel + 4.0 * kEps)};
}

double exp_e1_product(double x) {
    check_domain(x, "exp_e1_product");
    if (x <= 1.0) {
        // exp(x) <= e here, so composing with the series cannot overflow and
        // loses nothing: the series dominates the error budget.
        return std::exp(x) * detail::e1_series(x).value;
    }
    return detail::exp_e1_continued_fraction(x);
}

}  // namespace secrely
