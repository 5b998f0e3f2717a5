#pragma once

#include <string>
#include <vector>

#include "bubbledyn/classifier.hpp"

namespace bubbledyn {

// Parameters with known Julia set type (n = 3), one per outcome of the
// classification, plus the two ways v1 can reach infinity.
struct ReferenceExample {
  std::string name;   // stable identifier, e.g. "cantor_set"
  std::string label;  // human-readable lambda, e.g. "-i"
  int n = 3;
  Complex lambda;
  JuliaKind kind = JuliaKind::Unresolved;
  Subcase subcase = Subcase::None;
};

const std::vector<ReferenceExample>& reference_examples();

// For n = 3, lambda = 4/25 the second iterate of v1 lands in the trap disk at
// relative distance 0.125... from -lambda.
inline constexpr double kSecondIterateRatio = 0.125;
inline constexpr double kSecondIterateTolerance = 0.005;

// |f^2(v1) + lambda| / |lambda| for n = 3, lambda = 4/25, or empty if the
// orbit does not survive two steps within the budget.
std::optional<double> second_iterate_ratio(int budget);

struct CheckRow {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

// The five reference classifications and the second-iterate ratio check.
std::vector<CheckRow> run_reference_checks(int budget = kDefaultClassifyBudget,
                                           double ratio_tolerance = kSecondIterateTolerance);

}  // namespace bubbledyn
