#include "archipelago/closed_forms.hpp"

#include <cmath>
#include <numbers>

#include "archipelago/dilog.hpp"
#include "archipelago/errors.hpp"

namespace archipelago {

double qubit_ququart_p() { return std::sqrt(9.0 - 2.0 * std::sqrt(3.0)); }

namespace {

double qubit_ququart_multiplicative() {
  const double p = qubit_ququart_p();
  const double s3 = std::sqrt(3.0);
  using std::log;
  return p / 3.0 + log(12.0) * log(419904.0) / (48.0 * s3) + log(3.0) / (6.0 * s3) +
         log(2.0) / (3.0 * s3) - log(18.0) * log(p + 3.0) / (6.0 * s3) -
         2.0 * log(p + 3.0) / (3.0 * s3) -
         log(6.0) * log(12.0 * (s3 * p + 3.0 * s3 - 1.0)) / (12.0 * s3) +
         dilog((p + 3.0) / 6.0) / (3.0 * s3) - dilog((3.0 - p) / 6.0) / (3.0 * s3);
}

}  // namespace

const std::vector<ClosedForm>& closed_form_catalog() {
  static const std::vector<ClosedForm> catalog = [] {
    using std::log;
    constexpr double pi = std::numbers::pi;
    const double ln2 = std::numbers::ln2;
    const double acosh2 = std::acosh(2.0);
    const double l43 = log(4.0 / 3.0);
    std::vector<ClosedForm> c = {
        {"qq_additive", "2/3*(sqrt(2)-1)", 2.0 / 3.0 * (std::sqrt(2.0) - 1.0)},
        {"eq5", "p/3 + ... + Li2((p+3)/6)/(3 sqrt3) - Li2((3-p)/6)/(3 sqrt3), p = sqrt(9-2 sqrt3)",
         qubit_ququart_multiplicative()},
        {"tq_additive", "1/6", 1.0 / 6.0},
        {"tq_multiplicative", "1/4*(3-2*log(2)^2-log(4))", 0.25 * (3.0 - 2.0 * ln2 * ln2 - log(4.0))},
        {"tq_sum", "1/12*(11-6*log(2)^2-3*log(4))", (11.0 - 6.0 * ln2 * ln2 - 3.0 * log(4.0)) / 12.0},
        {"addendum_ppt", "1/2+2/pi^2", 0.5 + 2.0 / (pi * pi)},
        {"addendum_additive", "1-8/(3*pi^2)", 1.0 - 8.0 / (3.0 * pi * pi)},
        {"addendum_bound_additive", "1/2-2/(3*pi^2)", 0.5 - 2.0 / (3.0 * pi * pi)},
        {"npt_any", "(3*pi-4)/(3*pi)", (3.0 * pi - 4.0) / (3.0 * pi)},
        {"npt_bound", "4/(3*pi)", 4.0 / (3.0 * pi)},
        {"npt_ppt_formula", "1/2+2/pi^2", 0.5 + 2.0 / (pi * pi)},
        {"npt_ppt_decimal", "8/(3*pi)", 8.0 / (3.0 * pi)},
        {"tpq_area", "16*pi/81", 16.0 * pi / 81.0},
        {"tpq_bound", "(pi-2)/pi", (pi - 2.0) / pi},
        {"tpq_mult", "2/3-arccosh(2)/pi", 2.0 / 3.0 - acosh2 / pi},
        {"tpq_add_only", "(-6+pi+3*arccosh(2))/(3*pi)", (-6.0 + pi + 3.0 * acosh2) / (3.0 * pi)},
        {"tp4_bound", "(4-3*log(4/3))/9", (4.0 - 3.0 * l43) / 9.0},
        {"tp4_additive", "25/72", 25.0 / 72.0},
        {"tp4_mult", "(2-log(3))/3", (2.0 - log(3.0)) / 3.0},
        {"tp4_mult_only", "(7-24*log(4/3))/72", (7.0 - 24.0 * l43) / 72.0},
        {"tp4_add_only", "2*(log(27/8)-1)/9", 2.0 * (log(27.0 / 8.0) - 1.0) / 9.0},
        {"tp4_ratio", "(7-24*log(4/3))/(8*(4-3*log(4/3)))", (7.0 - 24.0 * l43) / (8.0 * (4.0 - 3.0 * l43))},
    };
    // Alias kept for callers that use the historical two-ququart name.
    c.push_back({"ululart_mult", c[3].expression, c[3].value});
    return c;
  }();
  return catalog;
}

const ClosedForm& closed_form_entry(std::string_view name) {
  for (const auto& e : closed_form_catalog()) {
    if (e.name == name) return e;
  }
  throw UnknownName("unknown closed form '" + std::string(name) + "'");
}

double closed_form(std::string_view name) { return closed_form_entry(name).value; }

}  // namespace archipelago
