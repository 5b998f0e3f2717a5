#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bubbledyn/cycles.hpp"
#include "bubbledyn/escape_trap.hpp"
#include "bubbledyn/image_io.hpp"
#include "bubbledyn/map_core.hpp"

namespace bubbledyn {

inline constexpr int kTileSize = 256;
// Zoom-0 tile covers [-W, W]^2.
inline constexpr double kBaseHalfWidth = 2.0;
// v1 orbits in the parameter plane get this many times the v0 budget.
inline constexpr int kV1BudgetFactor = 10;
inline constexpr double kAttractorHitTol = 1e-6;

enum class Plane { Parameter, Dynamical };

std::string_view to_string(Plane plane);
// Accepts "param"/"parameter" and "julia"/"dynamical".
std::optional<Plane> parse_plane(std::string_view text);

struct Viewport {
  Complex center;
  double half_width = kBaseHalfWidth;
  int pixel_width = kTileSize;
  int pixel_height = kTileSize;

  double half_height() const { return half_width * pixel_height / pixel_width; }
  double pixel_size() const { return 2.0 * half_width / pixel_width; }
  // Plane coordinate of the center of pixel (x, y); y grows downwards.
  Complex pixel_center(int x, int y) const;
  // Inverse of pixel_center in continuous pixel units.
  std::pair<double, double> to_pixel(Complex z) const;
};

// Slippy-map addressing: at zoom z the base square is cut into 2^z x 2^z
// tiles of side s = 2W / 2^z; tile (tx, ty) covers
// [-W + tx s, -W + (tx+1) s] x [W - (ty+1) s, W - ty s].
struct TileSpec {
  Plane plane = Plane::Parameter;
  int n = 3;
  Complex lambda;  // dynamical plane only
  int zoom = 0;
  int tx = 0;
  int ty = 0;
  int budget = kDefaultRenderBudget;

  bool in_range() const;
  Viewport viewport() const;
  // {plane}_{n}_{lre}_{lim}_{zoom}_{tx}_{ty}.png
  std::string file_name() const;
};

struct RenderStyle {
  Rgb v1_bounded{0, 160, 60};
  Rgb v0_bounded{240, 220, 40};
  // Escape shading walks this ramp cyclically, one stop per escape_period/size.
  std::vector<Rgb> escape_ramp{{8, 16, 64},   {16, 40, 120},  {30, 80, 180},  {70, 130, 220},
                               {140, 190, 245}, {70, 130, 220}, {30, 80, 180}, {16, 40, 120}};
  double escape_period = 24.0;
  // Attractor i uses attractor_hues[i % size]; the trap basin without a
  // matching attractor uses the slot after the last attractor.
  std::vector<Rgb> attractor_hues{{235, 120, 30}, {200, 40, 160}, {40, 190, 190},
                                  {150, 200, 40}, {120, 80, 220}, {220, 200, 60}};
  Rgb unresolved{0, 0, 0};
  Rgb critical_point{220, 30, 30};
  Rgb critical_value{30, 60, 220};
  int marker_radius = 5;
};

// Parameter-plane verdict for one lambda.
struct ParameterSample {
  bool v0_bounded = false;
  bool v1_bounded = false;
  // Smooth escape time of v0 (valid when v0 escaped).
  double smooth = 0.0;
};

// v0 with `budget` iterations, v1 with kV1BudgetFactor * budget, both using
// the trap disk when n >= 3. lambda == 0 samples as escaped at time 0.
ParameterSample sample_parameter(int n, Complex lambda, int budget);

enum class DynamicalFate { Escaped, Attractor, Unresolved };

struct DynamicalSample {
  DynamicalFate fate = DynamicalFate::Unresolved;
  int steps = 0;
  // Attractor slot (see RenderStyle::attractor_hues) when fate == Attractor.
  int attractor = -1;
  double smooth = 0.0;
};

// Precomputed per-frame data for the dynamical plane.
struct DynamicalContext {
  MapParams params;
  std::vector<CycleInfo> attractors;
  std::optional<Disk> trap;
  // Attractor slot credited for entering the trap disk.
  int trap_slot = -1;
  double escape_radius = 0.0;

  DynamicalContext(const MapParams& params, std::vector<CycleInfo> attractors);
};

DynamicalSample sample_dynamical(const DynamicalContext& context, Complex z, int budget);

// nu = steps - log_n(log|z| / log R), clamped at 0; plain steps when z = inf.
double smooth_escape_time(int steps, const SpherePoint& final, int n, double escape_radius);

Rgb escape_color(const RenderStyle& style, double smooth);
Rgb parameter_color(const RenderStyle& style, const ParameterSample& sample);
Rgb dynamical_color(const RenderStyle& style, const DynamicalSample& sample);

// Verdicts for every pixel of the view, row-major.
std::vector<ParameterSample> sample_parameter_view(const Viewport& view, int n, int budget, unsigned workers = 0);

// Attractor list used for dynamical renders (inventory at the classification budget).
std::vector<CycleInfo> render_attractors(const MapParams& params);

// 256x256 tiles. Throws std::invalid_argument for the wrong plane.
Image render_parameter_tile(const TileSpec& spec, const RenderStyle& style, unsigned workers = 0);
Image render_dynamical_tile(const TileSpec& spec, const RenderStyle& style, const std::vector<CycleInfo>& attractors,
                            unsigned workers = 0);

struct ViewRequest {
  Viewport viewport;
  Plane plane = Plane::Parameter;
  int n = 3;
  std::optional<Complex> lambda;  // required for the dynamical plane
  int budget = kDefaultRenderBudget;
  bool markers = false;
};

// Full frame, rendered in independent blocks. Markers (dynamical plane only):
// critical points {0, c_k} in red, critical values {-lambda, 3 lambda} in blue,
// drawn last. Output bytes do not depend on the worker count.
Image render_view(const ViewRequest& request, const RenderStyle& style, unsigned workers = 0);
Image render_view(const ViewRequest& request, const RenderStyle& style, const std::vector<CycleInfo>& attractors,
                  unsigned workers = 0);

}  // namespace bubbledyn
