#include "bubbledyn/map_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bubbledyn {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Below this relative gap the rational form is used.
constexpr double kCombinedSwitch = 1e-12;
// Below this relative gap z^n equals lambda to rounding: z is a pole.
constexpr double kPoleGap = 64.0 * kEps;

bool over_cap(Complex z) {
  return !(std::abs(z.real()) < kOverflowCap && std::abs(z.imag()) < kOverflowCap);
}

}  // namespace

SpherePoint SpherePoint::finite(Complex z) {
  if (over_cap(z)) return infinity();
  return SpherePoint(z, false);
}

double SpherePoint::magnitude() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : std::abs(value_);
}

MapParams::MapParams(int n, Complex lambda) : n_(n), lambda_(lambda) {
  if (n < 2) throw std::invalid_argument("degree n must be >= 2, got " + std::to_string(n));
  if (lambda == Complex{0.0, 0.0}) throw std::invalid_argument("lambda must be nonzero");
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
    throw std::invalid_argument("lambda must be finite");
  omega_ = omega_pow(1);
}

Complex MapParams::omega_pow(int k) const {
  k %= n_;
  if (k < 0) k += n_;
  if (k == 0) return {1.0, 0.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * k / n_);
}

Complex ipow(Complex z, int k) {
  Complex result{1.0, 0.0};
  while (k > 0) {
    if (k & 1) result *= z;
    k >>= 1;
    if (k) z *= z;
  }
  return result;
}

Complex eval_two_term(const MapParams& params, Complex z) {
  const Complex w = ipow(z, params.n());
  const Complex lam = params.lambda();
  return w + lam * lam / (w - lam);
}

Complex eval_combined(const MapParams& params, Complex z) {
  const Complex w = ipow(z, params.n());
  const Complex lam = params.lambda();
  return (w * w - lam * w + lam * lam) / (w - lam);
}

SpherePoint eval(const MapParams& params, Complex z) {
  if (over_cap(z)) return SpherePoint::infinity();
  const Complex w = ipow(z, params.n());
  if (over_cap(w)) return SpherePoint::infinity();

  const Complex lam = params.lambda();
  const Complex gap = w - lam;
  const double gap_abs = std::abs(gap);
  const double w_abs = std::abs(w);
  if (gap_abs <= kPoleGap * std::max(w_abs, std::abs(lam))) return SpherePoint::infinity();

  Complex result;
  if (gap_abs < kCombinedSwitch * std::max(1.0, w_abs)) {
    result = (w * w - lam * w + lam * lam) / gap;
  } else {
    result = w + lam * lam / gap;
  }
  return SpherePoint::finite(result);
}

SpherePoint eval(const MapParams& params, const SpherePoint& z) {
  if (z.is_infinite()) return SpherePoint::infinity();
  return eval(params, z.value());
}

Complex deriv(const MapParams& params, Complex z) {
  const int n = params.n();
  const Complex lam = params.lambda();
  const Complex w = ipow(z, n);
  const Complex gap = w - lam;
  const Complex gap_sq = gap * gap;
  if (gap_sq == Complex{0.0, 0.0} || !std::isfinite(std::norm(gap_sq)))
    throw std::domain_error("derivative requested at a pole of f");
  return static_cast<double>(n) * ipow(z, 2 * n - 1) * (w - 2.0 * lam) / gap_sq;
}

std::vector<SpherePoint> critical_points(const MapParams& params) {
  std::vector<SpherePoint> points;
  points.reserve(static_cast<std::size_t>(params.n()) + 2);
  points.push_back(SpherePoint::finite({0.0, 0.0}));
  points.push_back(SpherePoint::infinity());
  const Complex root = std::pow(2.0 * params.lambda(), 1.0 / params.n());
  for (int k = 0; k < params.n(); ++k) {
    points.push_back(SpherePoint::finite(params.omega_pow(k) * root));
  }
  return points;
}

}  // namespace bubbledyn
