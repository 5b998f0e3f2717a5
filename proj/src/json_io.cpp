#include "bubbledyn/json_io.hpp"

namespace bubbledyn {

using nlohmann::json;

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json point_json(const SpherePoint& z) {
  if (z.is_infinite()) return nullptr;
  return complex_json(z.value());
}

json orbit_json(const OrbitResult& orbit) {
  json trace = json::array();
  for (const SpherePoint& p : orbit.trace) trace.push_back(point_json(p));
  return {{"outcome", std::string(to_string(orbit.outcome))},
          {"steps", orbit.steps},
          {"final", point_json(orbit.final)},
          {"trace", std::move(trace)}};
}

json cycle_json(const CycleInfo& cycle) {
  json points = json::array();
  for (Complex p : cycle.points) points.push_back(complex_json(p));
  return {{"points", std::move(points)},
          {"period", cycle.period},
          {"multiplier", complex_json(cycle.multiplier)},
          {"multiplier_abs", std::abs(cycle.multiplier)},
          {"kind", std::string(to_string(cycle.kind))}};
}

json classification_json(const MapParams& params, const Classification& c) {
  json cycles = json::array();
  for (const CycleInfo& cycle : c.evidence.cycles) cycles.push_back(cycle_json(cycle));
  json out = {
      {"n", params.n()},
      {"lambda", complex_json(params.lambda())},
      {"kind", std::string(to_string(c.kind))},
      {"subcase", std::string(to_string(c.subcase))},
      {"evidence",
       {{"trap_active", c.evidence.trap_active},
        {"threshold", c.evidence.threshold},
        {"v0_result", orbit_json(c.evidence.v0_result)},
        {"v1_result", orbit_json(c.evidence.v1_result)},
        {"cycles", std::move(cycles)}}},
      {"budget_used", c.budget_used},
      {"experimental", params.experimental()},
      {"note", c.note},
  };
  // Whether v1 lies in the immediate basin of infinity is not decided.
  if (c.subcase == Subcase::Case2) out["v1_immediate_basin"] = "unknown";
  return out;
}

}  // namespace bubbledyn
