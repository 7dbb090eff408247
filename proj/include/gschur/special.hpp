#ifndef GSCHUR_SPECIAL_HPP
#define GSCHUR_SPECIAL_HPP

namespace gschur {

// log Gamma(x) for x > 0. The C library's lgamma writes the signgam global
// on every call, which is a data race under concurrent evaluation; this
// wrapper uses the reentrant form.
double lgamma_pos(double x);

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
// Series expansion for x < a + 1, Lentz continued fraction otherwise.
double reg_lower_gamma(double a, double x);

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double reg_upper_gamma(double a, double x);

// Density of Gamma(shape, rate) at x (zero for x < 0).
double gamma_pdf(double shape, double rate, double x);

}  // namespace gschur

#endif  // GSCHUR_SPECIAL_HPP
