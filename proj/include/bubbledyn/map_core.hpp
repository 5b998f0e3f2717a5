#pragma once

#include <complex>
#include <vector>

namespace bubbledyn {

using Complex = std::complex<double>;

// Finite values beyond this magnitude (per component) are treated as infinity.
inline constexpr double kOverflowCap = 1e150;

// A point of the Riemann sphere: a finite complex value or infinity.
class SpherePoint {
 public:
  SpherePoint() = default;

  // Normalizes non-finite or over-cap values to infinity.
  static SpherePoint finite(Complex z);
  static SpherePoint infinity() { return SpherePoint(Complex{}, true); }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  // Only meaningful for finite points.
  Complex value() const { return value_; }
  // +inf for the point at infinity.
  double magnitude() const;

  friend bool operator==(const SpherePoint& a, const SpherePoint& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

 private:
  SpherePoint(Complex z, bool inf) : value_(z), infinite_(inf) {}
  Complex value_{};
  bool infinite_ = false;
};

// One member f(z) = z^n + lambda^2 / (z^n - lambda) of the family, with the
// constants derived from (n, lambda).
class MapParams {
 public:
  // Throws std::invalid_argument for n < 2 or lambda == 0.
  MapParams(int n, Complex lambda);

  int n() const { return n_; }
  Complex lambda() const { return lambda_; }
  // Primitive n-th root of unity e^{2 pi i / n}.
  Complex omega() const { return omega_; }
  // omega^k computed directly from the angle (no accumulated rounding).
  Complex omega_pow(int k) const;
  // Free critical values: v0 = f(0) = -lambda, v1 = f(c_k) = 3 lambda.
  Complex v0() const { return -lambda_; }
  Complex v1() const { return 3.0 * lambda_; }
  // Guarantees of the classification are only claimed for n >= 3.
  bool experimental() const { return n_ == 2; }

 private:
  int n_;
  Complex lambda_;
  Complex omega_;
};

// z^k by repeated squaring; k >= 0.
Complex ipow(Complex z, int k);

// f(z) on the sphere. Infinity maps to infinity, the n poles (z^n = lambda)
// map to infinity, and overflow normalizes to infinity.
SpherePoint eval(const MapParams& params, const SpherePoint& z);
SpherePoint eval(const MapParams& params, Complex z);

// The two algebraic forms of f, exposed for cross-checking. Neither applies
// the pole or overflow normalization.
Complex eval_two_term(const MapParams& params, Complex z);
Complex eval_combined(const MapParams& params, Complex z);

// f'(z) = n z^{2n-1} (z^n - 2 lambda) / (z^n - lambda)^2.
// Throws std::domain_error when z is (numerically) a pole.
Complex deriv(const MapParams& params, Complex z);

// The n + 2 critical points in fixed order {0, inf, c_1, ..., c_n} where
// c_k = omega^{k-1} (2 lambda)^{1/n} with the principal root.
std::vector<SpherePoint> critical_points(const MapParams& params);

}  // namespace bubbledyn
