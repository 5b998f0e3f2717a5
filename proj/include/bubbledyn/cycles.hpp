#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "bubbledyn/map_core.hpp"

namespace bubbledyn {

inline constexpr int kMaxCyclePeriod = 64;
inline constexpr double kDefaultCycleEps = 1e-10;

enum class CycleKind { Superattracting, Attracting, Indeterminate };

std::string_view to_string(CycleKind kind);

// Superattracting below 1e-8, Attracting below 1 - 1e-6, Indeterminate otherwise.
CycleKind kind_for_multiplier(Complex multiplier);

struct CycleInfo {
  // One period, starting at the point of smallest magnitude (ties by argument).
  std::vector<Complex> points;
  int period = 0;
  Complex multiplier;
  CycleKind kind = CycleKind::Indeterminate;
};

// Burns in budget/2 iterations from the seed, then looks for the smallest
// period p <= 64 with |z_{k+p} - z_k| < eps (1 + |z_k|) over p consecutive
// offsets, using the remaining budget. Empty if the orbit escapes or nothing
// is found. Throws std::invalid_argument if budget < 100 or eps not in (0, 1e-6].
std::optional<CycleInfo> find_cycle(const MapParams& params, Complex seed, int budget,
                                    double eps = kDefaultCycleEps);

// Distinct attracting cycles reached from v0 and v1 (v0's first).
std::vector<CycleInfo> attractor_inventory(const MapParams& params, int budget);

// Same period and every point of `a` within `tol` of some point of `b`.
bool same_cycle(const CycleInfo& a, const CycleInfo& b, double tol = 1e-6);

}  // namespace bubbledyn
