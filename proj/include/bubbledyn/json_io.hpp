#pragma once

#include <json.hpp>

#include "bubbledyn/classifier.hpp"
#include "bubbledyn/cycles.hpp"
#include "bubbledyn/escape_trap.hpp"
#include "bubbledyn/map_core.hpp"

namespace bubbledyn {

// Wire format shared by the CLI and the tile service. Complex numbers are
// [re, im] arrays; the point at infinity is null. Keys are snake_case.
nlohmann::json point_json(const SpherePoint& z);
nlohmann::json complex_json(Complex z);
nlohmann::json orbit_json(const OrbitResult& orbit);
nlohmann::json cycle_json(const CycleInfo& cycle);
// Includes the query (n, lambda) alongside the classification record.
nlohmann::json classification_json(const MapParams& params, const Classification& c);

}  // namespace bubbledyn
