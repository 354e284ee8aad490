#pragma once

namespace archipelago {

/// Real dilogarithm Li2(x) = sum_{k>=1} x^k / k^2 for x <= 1.
///
/// The power series is summed directly on [0, 1/2]; other arguments are
/// mapped there with the reflection Li2(x) + Li2(1-x) = pi^2/6 - ln x ln(1-x),
/// the Landen identity Li2(x) = -Li2(x/(x-1)) - ln^2(1-x)/2 (x < 0), and the
/// inversion Li2(x) + Li2(1/x) = -pi^2/6 - ln^2(-x)/2 (x < -1).
/// Absolute error below 1e-14. Throws DomainError for x > 1 or NaN.
double dilog(double x);

}  // namespace archipelago
