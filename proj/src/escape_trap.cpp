#include "bubbledyn/escape_trap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bubbledyn {

std::string_view to_string(OrbitOutcome outcome) {
  switch (outcome) {
    case OrbitOutcome::Escaped: return "escaped";
    case OrbitOutcome::Trapped: return "trapped";
    case OrbitOutcome::CycleConverged: return "cycle_converged";
    case OrbitOutcome::BudgetExhausted: return "budget_exhausted";
  }
  return "unknown";
}

double trap_threshold(int n, double kappa) {
  if (n < 2) throw std::domain_error("trap_threshold: n must be >= 2");
  if (!(kappa > 0.0 && kappa < 1.0)) throw std::domain_error("trap_threshold: kappa must lie in (0, 1)");
  const double base =
      2.0 * kappa / ((1.0 + kappa) * (std::sqrt(kappa * kappa + 4.0 * kappa) + kappa));
  return std::pow(base, 1.0 / (n - 1)) / (1.0 + kappa);
}

std::optional<Disk> trap_disk(const MapParams& params, double kappa) {
  const double modulus = std::abs(params.lambda());
  if (!(modulus < trap_threshold(params.n(), kappa))) return std::nullopt;
  return Disk{params.v0(), kappa * modulus, kappa};
}

double escape_radius(const MapParams& params) {
  const double modulus = std::abs(params.lambda());
  const int n = params.n();
  return std::max({std::pow(4.0, 1.0 / (n - 1)), std::pow(2.0 * modulus, 1.0 / n), 3.0 * modulus});
}

OrbitResult iterate_orbit(const MapParams& params, const SpherePoint& seed, int budget,
                          const std::optional<Disk>& trap, int trace_length) {
  if (budget < 1) throw std::invalid_argument("iterate_orbit: budget must be >= 1");
  const double radius = escape_radius(params);
  const std::size_t trace_cap = static_cast<std::size_t>(std::max(trace_length, 0));

  OrbitResult result;
  if (trace_cap > 0) result.trace.reserve(std::min<std::size_t>(trace_cap, 1024));

  SpherePoint z = seed;
  for (int step = 0;; ++step) {
    if (result.trace.size() < trace_cap) result.trace.push_back(z);
    if (z.is_infinite() || std::abs(z.value()) >= radius) {
      result.outcome = OrbitOutcome::Escaped;
      result.steps = step;
      result.final = z;
      return result;
    }
    if (trap && trap->contains_closed(z.value())) {
      result.outcome = OrbitOutcome::Trapped;
      result.steps = step;
      result.final = z;
      return result;
    }
    if (step == budget) break;
    z = eval(params, z.value());
  }
  result.outcome = OrbitOutcome::BudgetExhausted;
  result.steps = budget;
  result.final = z;
  return result;
}

}  // namespace bubbledyn
