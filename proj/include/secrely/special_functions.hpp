#pragma once

namespace secrely {

// Value of the exponential integral E1 together with an estimate of the
// absolute error of the returned double.
struct E1Result {
    double value = 0.0;
    double est_abs_error = 0.0;
};

// E1(x) = integral of exp(-t)/t over [x, inf), x > 0.
//
// Power series below x = 1, modified-Lentz continued fraction above; both
// regimes keep est_abs_error below 1e-13 for x in [1e-8, 700]. Beyond
// x ~ 740 the value underflows to 0 and the reported error underflows with
// it. Throws DomainError for x <= 0.
E1Result exp_integral_e1(double x);

// exp(x) * E1(x), evaluated without forming either factor so the result
// stays finite where E1 alone underflows. Behaves like 1/x - 1/x^2 for
// large x and like -euler_gamma - ln(x) near 0. Throws DomainError for
// x <= 0.
double exp_e1_product(double x);

namespace detail {

// The two evaluation routes, exposed for crossover testing on [0.5, 2].
E1Result e1_series(double x);
// Returns exp(x)*E1(x); writes a relative error estimate if est_rel_error
// is non-null.
double exp_e1_continued_fraction(double x, double* est_rel_error = nullptr);

}  // namespace detail

}  // namespace secrely
