#include "bubbledyn/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bubbledyn/escape_trap.hpp"

namespace bubbledyn {

namespace {

constexpr double kSuperattractingBound = 1e-8;
constexpr double kAttractingMargin = 1e-6;
constexpr double kCyclicMapTol = 1e-8;
constexpr std::size_t kHistory = 2 * kMaxCyclePeriod;

bool escaped(const SpherePoint& z, double radius) {
  return z.is_infinite() || std::abs(z.value()) >= radius;
}

// Smallest period p such that the last 2p points repeat with period p.
int detect_period(const std::vector<Complex>& ring, std::size_t count, std::size_t head, double eps) {
  // ring holds the last min(count, kHistory) points; head is the slot of the newest.
  auto at = [&](std::size_t back) {  // back = 0 is the newest point
    return ring[(head + kHistory - back) % kHistory];
  };
  for (int p = 1; p <= kMaxCyclePeriod; ++p) {
    const auto span = static_cast<std::size_t>(2 * p);
    if (span > count) break;
    bool stable = true;
    for (int k = 0; k < p && stable; ++k) {
      const Complex later = at(static_cast<std::size_t>(k));
      const Complex earlier = at(static_cast<std::size_t>(k + p));
      stable = std::abs(later - earlier) < eps * (1.0 + std::abs(earlier));
    }
    if (stable) return p;
  }
  return 0;
}

// Index of the smallest-magnitude point, ties broken by argument.
std::size_t canonical_start(const std::vector<Complex>& points) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double mi = std::abs(points[i]);
    const double mb = std::abs(points[best]);
    const double scale = 1e-12 * std::max(1.0, mb);
    if (mi < mb - scale || (std::abs(mi - mb) <= scale && std::arg(points[i]) < std::arg(points[best]))) {
      best = i;
    }
  }
  return best;
}

}  // namespace

std::string_view to_string(CycleKind kind) {
  switch (kind) {
    case CycleKind::Superattracting: return "superattracting";
    case CycleKind::Attracting: return "attracting";
    case CycleKind::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

CycleKind kind_for_multiplier(Complex multiplier) {
  const double m = std::abs(multiplier);
  if (m < kSuperattractingBound) return CycleKind::Superattracting;
  if (m < 1.0 - kAttractingMargin) return CycleKind::Attracting;
  return CycleKind::Indeterminate;
}

std::optional<CycleInfo> find_cycle(const MapParams& params, Complex seed, int budget, double eps) {
  if (budget < 100) throw std::invalid_argument("find_cycle: budget must be >= 100");
  if (!(eps > 0.0 && eps <= 1e-6)) throw std::invalid_argument("find_cycle: eps must lie in (0, 1e-6]");

  const double radius = escape_radius(params);
  SpherePoint z = SpherePoint::finite(seed);
  if (escaped(z, radius)) return std::nullopt;

  const int burn_in = budget / 2;
  for (int i = 0; i < burn_in; ++i) {
    z = eval(params, z.value());
    if (escaped(z, radius)) return std::nullopt;
  }

  std::vector<Complex> ring(kHistory);
  std::size_t count = 0;
  std::size_t head = 0;
  ring[head] = z.value();
  count = 1;

  int period = 0;
  for (int i = burn_in; i < budget && period == 0; ++i) {
    z = eval(params, z.value());
    if (escaped(z, radius)) return std::nullopt;
    head = (head + 1) % kHistory;
    ring[head] = z.value();
    count = std::min(count + 1, kHistory);
    period = detect_period(ring, count, head, eps);
  }
  if (period == 0) return std::nullopt;

  // Refinement: a few more laps around the cycle.
  for (int i = 0; i < 16 * period; ++i) {
    z = eval(params, z.value());
    if (escaped(z, radius)) return std::nullopt;
  }

  std::vector<Complex> lap;
  lap.reserve(static_cast<std::size_t>(period));
  for (int i = 0; i < period; ++i) {
    lap.push_back(z.value());
    z = eval(params, z.value());
    if (escaped(z, radius)) return std::nullopt;
  }

  CycleInfo info;
  info.period = period;
  const std::size_t start = canonical_start(lap);
  info.points.reserve(lap.size());
  for (std::size_t i = 0; i < lap.size(); ++i) info.points.push_back(lap[(start + i) % lap.size()]);

  for (std::size_t i = 0; i < info.points.size(); ++i) {
    const Complex next = info.points[(i + 1) % info.points.size()];
    const SpherePoint image = eval(params, info.points[i]);
    if (image.is_infinite() || std::abs(image.value() - next) > kCyclicMapTol * (1.0 + std::abs(next)))
      return std::nullopt;
  }

  Complex multiplier{1.0, 0.0};
  try {
    for (const Complex& p : info.points) multiplier *= deriv(params, p);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
  info.multiplier = multiplier;
  info.kind = kind_for_multiplier(multiplier);
  return info;
}

bool same_cycle(const CycleInfo& a, const CycleInfo& b, double tol) {
  if (a.period != b.period) return false;
  return std::all_of(a.points.begin(), a.points.end(), [&](Complex p) {
    return std::any_of(b.points.begin(), b.points.end(), [&](Complex q) { return std::abs(p - q) <= tol; });
  });
}

std::vector<CycleInfo> attractor_inventory(const MapParams& params, int budget) {
  std::vector<CycleInfo> found;
  for (const Complex seed : {params.v0(), params.v1()}) {
    auto cycle = find_cycle(params, seed, budget);
    if (!cycle) continue;
    const bool duplicate =
        std::any_of(found.begin(), found.end(), [&](const CycleInfo& c) { return same_cycle(c, *cycle); });
    if (!duplicate) found.push_back(std::move(*cycle));
  }
  return found;
}

}  // namespace bubbledyn
