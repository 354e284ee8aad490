#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace archipelago {

struct ClosedForm {
  std::string name;
  /// Human-readable exact expression.
  std::string expression;
  double value;
};

/// Every exact probability (and the two-qutrit disk area) known for the
/// cataloged models, evaluated once at first use.
const std::vector<ClosedForm>& closed_form_catalog();

/// Value of a named entry; throws UnknownName.
double closed_form(std::string_view name);
const ClosedForm& closed_form_entry(std::string_view name);

/// p = sqrt(9 - 2 sqrt 3), the algebraic constant inside the qubit-ququart
/// multiplicative-region probability.
double qubit_ququart_p();

}  // namespace archipelago
