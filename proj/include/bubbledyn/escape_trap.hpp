#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "bubbledyn/map_core.hpp"

namespace bubbledyn {

// kappa used by the classifier and renderers for the trap disk.
inline constexpr double kTrapKappa = 0.2;
inline constexpr int kDefaultClassifyBudget = 5000;
inline constexpr int kDefaultRenderBudget = 500;

struct Disk {
  Complex center;
  double radius = 0.0;
  // Set when the disk is a trap disk D(-lambda, kappa |lambda|).
  std::optional<double> kappa;

  bool contains_closed(Complex z) const { return std::abs(z - center) <= radius; }
};

enum class OrbitOutcome { Escaped, Trapped, CycleConverged, BudgetExhausted };

std::string_view to_string(OrbitOutcome outcome);

struct OrbitResult {
  OrbitOutcome outcome = OrbitOutcome::BudgetExhausted;
  // Iteration index at detection (0 = the seed itself).
  int steps = 0;
  SpherePoint final;
  // z_0, z_1, ... up to the requested trace length.
  std::vector<SpherePoint> trace;

  friend bool operator==(const OrbitResult&, const OrbitResult&) = default;
};

// Right-hand side of the trap condition
//   |lambda| < 1/(1+k) * (2k / ((1+k)(sqrt(k^2+4k)+k)))^{1/(n-1)}.
// Throws std::domain_error unless n >= 2 and 0 < kappa < 1.
double trap_threshold(int n, double kappa);

// D(-lambda, kappa |lambda|) when |lambda| is below the threshold; f maps its
// closure into its interior, so it certifies capture by an attracting basin.
std::optional<Disk> trap_disk(const MapParams& params, double kappa);

// R = max(4^{1/(n-1)}, (2|lambda|)^{1/n}, 3|lambda|). For |z| >= R,
// |f(z)| >= 2|z|: |z|^n >= 2|lambda| bounds the perturbation by |z|^n / 2 and
// |z|^{n-1} >= 4 gives |z|^n / 2 >= 2|z|. Sufficient, not tight.
double escape_radius(const MapParams& params);

// Iterates z -> f(z) from the seed. The seed is tested at step 0. Returns
// Escaped at the first step with z = inf or |z| >= escape_radius, Trapped at
// the first step inside the closed trap disk, BudgetExhausted after `budget`
// applications otherwise. Records up to `trace_length` points.
OrbitResult iterate_orbit(const MapParams& params, const SpherePoint& seed, int budget,
                          const std::optional<Disk>& trap, int trace_length = 0);

}  // namespace bubbledyn
