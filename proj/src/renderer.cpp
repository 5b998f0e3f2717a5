#include "bubbledyn/renderer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "bubbledyn/parallel.hpp"

namespace bubbledyn {

namespace {

constexpr int kBlock = 64;

std::uint8_t channel(double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

Rgb lerp(Rgb a, Rgb b, double t) {
  return {channel(a.r + (b.r - a.r) * t), channel(a.g + (b.g - a.g) * t), channel(a.b + (b.b - a.b) * t)};
}

Rgb scale(Rgb c, double f) { return {channel(c.r * f), channel(c.g * f), channel(c.b * f)}; }

// Fills the image block by block; each pixel is written exactly once.
template <typename PixelFn>
void fill_blocks(Image& image, unsigned workers, PixelFn&& pixel) {
  const int bx = (image.width() + kBlock - 1) / kBlock;
  const int by = (image.height() + kBlock - 1) / kBlock;
  parallel_for(static_cast<std::size_t>(bx) * static_cast<std::size_t>(by), workers, [&](std::size_t b) {
    const int x0 = static_cast<int>(b % static_cast<std::size_t>(bx)) * kBlock;
    const int y0 = static_cast<int>(b / static_cast<std::size_t>(bx)) * kBlock;
    const int x1 = std::min(x0 + kBlock, image.width());
    const int y1 = std::min(y0 + kBlock, image.height());
    for (int y = y0; y < y1; ++y)
      for (int x = x0; x < x1; ++x) image.set(x, y, pixel(x, y));
  });
}

void draw_markers(Image& image, const Viewport& view, const MapParams& params, const RenderStyle& style) {
  std::vector<Complex> points{Complex{0.0, 0.0}};
  for (const SpherePoint& c : critical_points(params))
    if (c.is_finite() && c.value() != Complex{0.0, 0.0}) points.push_back(c.value());
  const std::vector<Complex> values{params.v0(), params.v1()};

  const double r = style.marker_radius;
  std::vector<bool> red(static_cast<std::size_t>(image.width()) * static_cast<std::size_t>(image.height()), false);
  auto stamp = [&](Complex at, Rgb color, bool is_value) {
    const auto [cx, cy] = view.to_pixel(at);
    const int x_lo = std::max(0, static_cast<int>(std::floor(cx - r)));
    const int x_hi = std::min(image.width() - 1, static_cast<int>(std::ceil(cx + r)));
    const int y_lo = std::max(0, static_cast<int>(std::floor(cy - r)));
    const int y_hi = std::min(image.height() - 1, static_cast<int>(std::ceil(cy + r)));
    for (int y = y_lo; y <= y_hi; ++y) {
      for (int x = x_lo; x <= x_hi; ++x) {
        const double d = std::hypot(x + 0.5 - cx, y + 0.5 - cy);
        if (d > r) continue;
        const std::size_t slot = static_cast<std::size_t>(y) * static_cast<std::size_t>(image.width()) + static_cast<std::size_t>(x);
        if (is_value) {
          // A value sitting on a critical point keeps a red rim around it.
          if (red[slot] && d > r / 2.0) continue;
        } else {
          red[slot] = true;
        }
        image.set(x, y, color);
      }
    }
  };
  for (Complex p : points) stamp(p, style.critical_point, false);
  for (Complex v : values) stamp(v, style.critical_value, true);
}

}  // namespace

std::string_view to_string(Plane plane) { return plane == Plane::Parameter ? "param" : "julia"; }

std::optional<Plane> parse_plane(std::string_view text) {
  if (text == "param" || text == "parameter") return Plane::Parameter;
  if (text == "julia" || text == "dynamical") return Plane::Dynamical;
  return std::nullopt;
}

Complex Viewport::pixel_center(int x, int y) const {
  const double step = pixel_size();
  return {center.real() - half_width + (x + 0.5) * step, center.imag() + half_height() - (y + 0.5) * step};
}

std::pair<double, double> Viewport::to_pixel(Complex z) const {
  const double step = pixel_size();
  return {(z.real() - (center.real() - half_width)) / step, (center.imag() + half_height() - z.imag()) / step};
}

bool TileSpec::in_range() const {
  if (zoom < 0 || zoom > 40) return false;
  const long long side = 1LL << zoom;
  return tx >= 0 && ty >= 0 && tx < side && ty < side;
}

Viewport TileSpec::viewport() const {
  const double side = 2.0 * kBaseHalfWidth / std::ldexp(1.0, zoom);
  return Viewport{Complex{-kBaseHalfWidth + (tx + 0.5) * side, kBaseHalfWidth - (ty + 0.5) * side}, side / 2.0, kTileSize,
                  kTileSize};
}

std::string TileSpec::file_name() const {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, "%s_%d_%.17g_%.17g_%d_%d_%d.png", to_string(plane).data(), n,
                plane == Plane::Dynamical ? lambda.real() : 0.0, plane == Plane::Dynamical ? lambda.imag() : 0.0, zoom,
                tx, ty);
  return buffer;
}

double smooth_escape_time(int steps, const SpherePoint& final, int n, double escape_radius) {
  if (final.is_infinite()) return steps;
  const double r = std::abs(final.value());
  if (r <= 1.0 || escape_radius <= 1.0) return steps;
  const double nu = steps - std::log(std::log(r) / std::log(escape_radius)) / std::log(static_cast<double>(n));
  return std::max(0.0, nu);
}

Rgb escape_color(const RenderStyle& style, double smooth) {
  const auto stops = style.escape_ramp.size();
  if (stops == 0) return {};
  const double t = std::fmod(std::max(smooth, 0.0), style.escape_period) / style.escape_period * static_cast<double>(stops);
  const auto i = static_cast<std::size_t>(t) % stops;
  return lerp(style.escape_ramp[i], style.escape_ramp[(i + 1) % stops], t - std::floor(t));
}

Rgb parameter_color(const RenderStyle& style, const ParameterSample& sample) {
  if (sample.v1_bounded) return style.v1_bounded;
  if (sample.v0_bounded) return style.v0_bounded;
  return escape_color(style, sample.smooth);
}

Rgb dynamical_color(const RenderStyle& style, const DynamicalSample& sample) {
  switch (sample.fate) {
    case DynamicalFate::Escaped: return escape_color(style, sample.smooth);
    case DynamicalFate::Attractor: {
      if (style.attractor_hues.empty()) return style.unresolved;
      const Rgb hue = style.attractor_hues[static_cast<std::size_t>(sample.attractor) % style.attractor_hues.size()];
      return scale(hue, std::max(0.35, 1.0 - sample.steps / 40.0));
    }
    case DynamicalFate::Unresolved: break;
  }
  return style.unresolved;
}

ParameterSample sample_parameter(int n, Complex lambda, int budget) {
  if (lambda == Complex{0.0, 0.0}) return {};
  const MapParams params(n, lambda);
  const std::optional<Disk> trap = params.experimental() ? std::nullopt : trap_disk(params, kTrapKappa);

  ParameterSample sample;
  const OrbitResult v0 = iterate_orbit(params, SpherePoint::finite(params.v0()), budget, trap);
  sample.v0_bounded = v0.outcome != OrbitOutcome::Escaped;
  if (!sample.v0_bounded) sample.smooth = smooth_escape_time(v0.steps, v0.final, n, escape_radius(params));
  const OrbitResult v1 = iterate_orbit(params, SpherePoint::finite(params.v1()), kV1BudgetFactor * budget, trap);
  sample.v1_bounded = v1.outcome != OrbitOutcome::Escaped;
  return sample;
}

DynamicalContext::DynamicalContext(const MapParams& p, std::vector<CycleInfo> found)
    : params(p), attractors(std::move(found)), escape_radius(bubbledyn::escape_radius(p)) {
  if (!params.experimental()) trap = trap_disk(params, kTrapKappa);
  if (!trap) return;
  for (std::size_t i = 0; i < attractors.size(); ++i) {
    const auto& pts = attractors[i].points;
    if (std::any_of(pts.begin(), pts.end(), [&](Complex z) { return trap->contains_closed(z); })) {
      trap_slot = static_cast<int>(i);
      return;
    }
  }
  trap_slot = static_cast<int>(attractors.size());
}

DynamicalSample sample_dynamical(const DynamicalContext& context, Complex start, int budget) {
  SpherePoint z = SpherePoint::finite(start);
  for (int step = 0;; ++step) {
    if (z.is_infinite() || std::abs(z.value()) >= context.escape_radius) {
      return {DynamicalFate::Escaped, step, -1,
              smooth_escape_time(step, z, context.params.n(), context.escape_radius)};
    }
    const Complex w = z.value();
    if (context.trap && context.trap->contains_closed(w)) return {DynamicalFate::Attractor, step, context.trap_slot, 0.0};
    for (std::size_t i = 0; i < context.attractors.size(); ++i) {
      for (const Complex p : context.attractors[i].points) {
        if (std::abs(w - p) < kAttractorHitTol) return {DynamicalFate::Attractor, step, static_cast<int>(i), 0.0};
      }
    }
    if (step >= budget) return {DynamicalFate::Unresolved, step, -1, 0.0};
    z = eval(context.params, w);
  }
}

std::vector<ParameterSample> sample_parameter_view(const Viewport& view, int n, int budget, unsigned workers) {
  std::vector<ParameterSample> samples(static_cast<std::size_t>(view.pixel_width) *
                                       static_cast<std::size_t>(view.pixel_height));
  const auto rows = static_cast<std::size_t>(view.pixel_height);
  parallel_for(rows, workers, [&](std::size_t y) {
    for (int x = 0; x < view.pixel_width; ++x) {
      samples[y * static_cast<std::size_t>(view.pixel_width) + static_cast<std::size_t>(x)] =
          sample_parameter(n, view.pixel_center(x, static_cast<int>(y)), budget);
    }
  });
  return samples;
}

std::vector<CycleInfo> render_attractors(const MapParams& params) {
  return attractor_inventory(params, kDefaultClassifyBudget);
}

Image render_parameter_tile(const TileSpec& spec, const RenderStyle& style, unsigned workers) {
  if (spec.plane != Plane::Parameter) throw std::invalid_argument("render_parameter_tile needs a parameter-plane tile");
  ViewRequest request{spec.viewport(), Plane::Parameter, spec.n, std::nullopt, spec.budget, false};
  return render_view(request, style, {}, workers);
}

Image render_dynamical_tile(const TileSpec& spec, const RenderStyle& style, const std::vector<CycleInfo>& attractors,
                            unsigned workers) {
  if (spec.plane != Plane::Dynamical) throw std::invalid_argument("render_dynamical_tile needs a dynamical-plane tile");
  ViewRequest request{spec.viewport(), Plane::Dynamical, spec.n, spec.lambda, spec.budget, false};
  return render_view(request, style, attractors, workers);
}

Image render_view(const ViewRequest& request, const RenderStyle& style, unsigned workers) {
  if (request.plane == Plane::Dynamical) {
    if (!request.lambda) throw std::invalid_argument("dynamical-plane render requires lambda");
    return render_view(request, style, render_attractors(MapParams(request.n, *request.lambda)), workers);
  }
  return render_view(request, style, {}, workers);
}

Image render_view(const ViewRequest& request, const RenderStyle& style, const std::vector<CycleInfo>& attractors,
                  unsigned workers) {
  const Viewport& view = request.viewport;
  if (view.pixel_width < 1 || view.pixel_height < 1 || !(view.half_width > 0.0))
    throw std::invalid_argument("viewport must have positive size");
  if (request.budget < 1) throw std::invalid_argument("render budget must be >= 1");
  if (request.n < 2) throw std::invalid_argument("degree n must be >= 2");

  Image image(view.pixel_width, view.pixel_height);
  if (request.plane == Plane::Parameter) {
    fill_blocks(image, workers, [&](int x, int y) {
      return parameter_color(style, sample_parameter(request.n, view.pixel_center(x, y), request.budget));
    });
    return image;
  }

  if (!request.lambda) throw std::invalid_argument("dynamical-plane render requires lambda");
  const DynamicalContext context(MapParams(request.n, *request.lambda), attractors);
  fill_blocks(image, workers, [&](int x, int y) {
    return dynamical_color(style, sample_dynamical(context, view.pixel_center(x, y), request.budget));
  });
  if (request.markers) draw_markers(image, view, context.params, style);
  return image;
}

}  // namespace bubbledyn
