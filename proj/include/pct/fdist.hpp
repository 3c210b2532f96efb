#pragma once

namespace pct {

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1],
/// evaluated with a modified Lentz continued fraction.
double incomplete_beta(double a, double b, double x);

/// P(X <= f) for X ~ F(d1, d2).
double f_cdf(double f, double d1, double d2);

/// P(X > f) for X ~ F(d1, d2), computed without cancellation.
double f_upper_tail(double f, double d1, double d2);

/// Critical value c with P(X > c) = alpha.
double f_critical_value(double alpha, double d1, double d2);

}  // namespace pct
