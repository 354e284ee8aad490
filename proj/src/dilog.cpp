#include "archipelago/dilog.hpp"

#include <cmath>
#include <numbers>

#include "archipelago/errors.hpp"

namespace archipelago {

namespace {

constexpr double kPi2Over6 = std::numbers::pi * std::numbers::pi / 6.0;

// 0 <= x <= 1/2.
double series(double x) {
  double term = x;
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double add = term / (static_cast<double>(k) * k);
    sum += add;
    if (add < 1e-18 * sum) break;
    term *= x;
  }
  return sum;
}

// 0 <= x <= 1.
double unit_interval(double x) {
  if (x == 0.0) return 0.0;
  if (x == 1.0) return kPi2Over6;
  if (x <= 0.5) return series(x);
  return kPi2Over6 - std::log(x) * std::log1p(-x) - series(1.0 - x);
}

}  // namespace

double dilog(double x) {
  if (std::isnan(x) || x > 1.0) throw DomainError("dilog: argument must be <= 1");
  if (x >= 0.0) return unit_interval(x);
  if (x >= -1.0) {
    // x/(x-1) lies in (0, 1/2].
    const double l = std::log1p(-x);
    return -unit_interval(x / (x - 1.0)) - 0.5 * l * l;
  }
  const double l = std::log(-x);
  return -kPi2Over6 - 0.5 * l * l - dilog(1.0 / x);
}

}  // namespace archipelago
