#include "bubbledyn/reference_examples.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace bubbledyn {

const std::vector<ReferenceExample>& reference_examples() {
  static const std::vector<ReferenceExample> examples{
      {"cantor_set", "-i", 3, {0.0, -1.0}, JuliaKind::CantorSet, Subcase::Case1},
      {"connected_immediate_basin", "e^(i pi/3)", 3, std::polar(1.0, std::numbers::pi / 3.0), JuliaKind::Connected,
       Subcase::Case2},
      {"connected_preimage_basin", "sqrt(3)/9", 3, {std::sqrt(3.0) / 9.0, 0.0}, JuliaKind::Connected, Subcase::Case2},
      {"connected_two_basins", "sqrt(6)/9", 3, {std::sqrt(6.0) / 9.0, 0.0}, JuliaKind::Connected, Subcase::Case3a},
      {"cantor_bubbles", "4/25", 3, {4.0 / 25.0, 0.0}, JuliaKind::CantorBubbles, Subcase::Case3b},
  };
  return examples;
}

std::optional<double> second_iterate_ratio(int budget) {
  const MapParams params(3, {4.0 / 25.0, 0.0});
  const OrbitResult orbit =
      iterate_orbit(params, SpherePoint::finite(params.v1()), budget, trap_disk(params, kTrapKappa), 3);
  if (orbit.trace.size() < 3 || orbit.trace[2].is_infinite()) return std::nullopt;
  return std::abs(orbit.trace[2].value() + params.lambda()) / std::abs(params.lambda());
}

std::vector<CheckRow> run_reference_checks(int budget, double ratio_tolerance) {
  std::vector<CheckRow> rows;
  for (const ReferenceExample& ex : reference_examples()) {
    CheckRow row;
    row.name = "n=" + std::to_string(ex.n) + " lambda=" + ex.label;
    row.expected = std::string(to_string(ex.kind)) + "/" + std::string(to_string(ex.subcase));
    try {
      const Classification c = classify(MapParams(ex.n, ex.lambda), budget);
      row.actual = std::string(to_string(c.kind)) + "/" + std::string(to_string(c.subcase));
      row.pass = c.kind == ex.kind && c.subcase == ex.subcase;
    } catch (const std::exception& e) {
      row.actual = std::string("error: ") + e.what();
    }
    rows.push_back(std::move(row));
  }

  CheckRow ratio;
  ratio.name = "n=3 lambda=4/25 |f^2(v1)+lambda|/|lambda|";
  char buffer[96];
  std::snprintf(buffer, sizeof buffer, "%.3f +- %g", kSecondIterateRatio, ratio_tolerance);
  ratio.expected = buffer;
  if (const auto value = second_iterate_ratio(budget)) {
    std::snprintf(buffer, sizeof buffer, "%.6f", *value);
    ratio.actual = buffer;
    ratio.pass = std::abs(*value - kSecondIterateRatio) <= ratio_tolerance;
  } else {
    ratio.actual = "orbit shorter than two steps";
  }
  rows.push_back(std::move(ratio));
  return rows;
}

}  // namespace bubbledyn
