#include "bubbledyn/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "bubbledyn/parallel.hpp"

namespace bubbledyn {

namespace {

// A Case3a cycle must clear the closed trap disk by this much.
constexpr double kCaseThreeAMargin = 1e-6;

bool clear_of(const CycleInfo& cycle, const Disk& disk) {
  return std::all_of(cycle.points.begin(), cycle.points.end(), [&](Complex p) {
    return std::abs(p - disk.center) > disk.radius + kCaseThreeAMargin;
  });
}

void settle(Classification& c, JuliaKind kind, Subcase subcase) {
  c.kind = kind;
  c.subcase = subcase;
}

// Steps 1-2 of the decision tree: no trap disk in play.
void classify_by_escape(const MapParams& params, int budget, Classification& c) {
  const SpherePoint v0 = SpherePoint::finite(params.v0());
  const SpherePoint v1 = SpherePoint::finite(params.v1());

  c.evidence.v0_result = iterate_orbit(params, v0, budget, std::nullopt);
  c.evidence.v1_result = iterate_orbit(params, v1, budget, std::nullopt);
  c.budget_used += c.evidence.v0_result.steps + c.evidence.v1_result.steps;

  const bool v0_escaped = c.evidence.v0_result.outcome == OrbitOutcome::Escaped;
  const bool v1_escaped = c.evidence.v1_result.outcome == OrbitOutcome::Escaped;
  if (v0_escaped && v1_escaped) {
    settle(c, JuliaKind::CantorSet, Subcase::Case1);
  } else if (v0_escaped) {
    // An escaping v0 forces v1 to escape as well; seeing otherwise means the
    // budget was too small to follow v1 out.
    c.note = "v0 escaped but v1 did not within budget";
  } else if (v1_escaped) {
    settle(c, JuliaKind::Connected, Subcase::Case2);
  } else if (!c.evidence.trap_active && !params.experimental()) {
    c.note = "trap disk absent yet v1 stayed bounded within budget; budget shortfall";
  }
}

}  // namespace

std::string_view to_string(JuliaKind kind) {
  switch (kind) {
    case JuliaKind::CantorSet: return "cantor_set";
    case JuliaKind::Connected: return "connected";
    case JuliaKind::CantorBubbles: return "cantor_bubbles";
    case JuliaKind::Unresolved: return "unresolved";
  }
  return "unknown";
}

std::string_view to_string(Subcase subcase) {
  switch (subcase) {
    case Subcase::Case1: return "case1";
    case Subcase::Case2: return "case2";
    case Subcase::Case3a: return "case3a";
    case Subcase::Case3b: return "case3b";
    case Subcase::None: return "none";
  }
  return "unknown";
}

Classification classify(const MapParams& params, int budget) {
  if (budget < 100) throw std::invalid_argument("classify: budget must be >= 100");

  Classification c;
  c.evidence.threshold = trap_threshold(params.n(), kTrapKappa);
  const std::optional<Disk> trap = trap_disk(params, kTrapKappa);
  c.evidence.trap_active = trap.has_value();

  if (!trap) {
    classify_by_escape(params, budget, c);
    if (params.experimental() && c.note.empty() && c.kind == JuliaKind::Unresolved)
      c.note = "n = 2 is experimental; bounded critical orbits are not classified";
    return c;
  }

  if (params.experimental()) {
    // The trap and escape-region estimates do not carry over to n = 2; only
    // escape verdicts are reported there.
    classify_by_escape(params, budget, c);
    if (c.kind == JuliaKind::Unresolved && c.note.empty())
      c.note = "n = 2 is experimental; trap-disk classification disabled";
    return c;
  }

  // v0 is the trap center, so it never joins the basin of infinity.
  c.evidence.v0_result = iterate_orbit(params, SpherePoint::finite(params.v0()), budget, trap);
  c.evidence.v1_result = iterate_orbit(params, SpherePoint::finite(params.v1()), budget, trap);
  c.budget_used += c.evidence.v0_result.steps + c.evidence.v1_result.steps;

  switch (c.evidence.v1_result.outcome) {
    case OrbitOutcome::Escaped:
      settle(c, JuliaKind::Connected, Subcase::Case2);
      return c;
    case OrbitOutcome::Trapped:
      // The basin around -lambda is completely invariant, so v1 shares v0's component.
      settle(c, JuliaKind::CantorBubbles, Subcase::Case3b);
      return c;
    default:
      break;
  }

  auto v1_cycle = find_cycle(params, params.v1(), budget);
  c.budget_used += budget;
  if (v1_cycle && v1_cycle->kind != CycleKind::Indeterminate && clear_of(*v1_cycle, *trap)) {
    if (auto v0_cycle = find_cycle(params, params.v0(), budget); v0_cycle && !same_cycle(*v0_cycle, *v1_cycle)) {
      c.budget_used += budget;
      c.evidence.cycles.push_back(std::move(*v0_cycle));
    }
    c.evidence.cycles.push_back(std::move(*v1_cycle));
    settle(c, JuliaKind::Connected, Subcase::Case3a);
    return c;
  }
  if (v1_cycle) c.evidence.cycles.push_back(std::move(*v1_cycle));
  c.note = "v1 neither escaped nor entered the trap disk, and no attracting cycle clear of the disk was found";
  return c;
}

std::vector<GridRow> classify_points(int n, const std::vector<Complex>& lambdas, int budget, unsigned workers) {
  if (n < 2) throw std::invalid_argument("classify_points: n must be >= 2");
  if (budget < 100) throw std::invalid_argument("classify_points: budget must be >= 100");
  std::vector<GridRow> rows(lambdas.size());
  parallel_for(lambdas.size(), workers, [&](std::size_t i) {
    GridRow& row = rows[i];
    row.lambda = lambdas[i];
    if (lambdas[i] == Complex{0.0, 0.0}) {
      row.skipped = true;
      return;
    }
    row.result = classify(MapParams(n, lambdas[i]), budget);
  });
  return rows;
}

std::vector<Complex> grid_centers(const Window& window, int columns, int rows) {
  if (columns < 1 || rows < 1) throw std::invalid_argument("grid resolution must be at least 1x1");
  if (!(window.re_max > window.re_min) || !(window.im_max > window.im_min))
    throw std::invalid_argument("grid window is degenerate");
  const double dx = (window.re_max - window.re_min) / columns;
  const double dy = (window.im_max - window.im_min) / rows;
  std::vector<Complex> centers;
  centers.reserve(static_cast<std::size_t>(columns) * static_cast<std::size_t>(rows));
  for (int j = 0; j < rows; ++j) {
    const double im = window.im_max - (j + 0.5) * dy;
    for (int i = 0; i < columns; ++i) centers.emplace_back(window.re_min + (i + 0.5) * dx, im);
  }
  return centers;
}

std::vector<GridRow> classify_grid(int n, const Window& window, int columns, int rows, int budget,
                                   unsigned workers) {
  return classify_points(n, grid_centers(window, columns, rows), budget, workers);
}

void write_csv(std::ostream& out, const std::vector<GridRow>& rows) {
  out << "re,im,kind,subcase,v0_outcome,v0_steps,v1_outcome,v1_steps,trap_active\n";
  char buffer[512];
  for (const GridRow& row : rows) {
    if (row.skipped) {
      std::snprintf(buffer, sizeof buffer, "%.17g,%.17g,skipped,none,none,0,none,0,false\n", row.lambda.real(),
                    row.lambda.imag());
    } else {
      const Classification& c = row.result;
      std::snprintf(buffer, sizeof buffer, "%.17g,%.17g,%s,%s,%s,%d,%s,%d,%s\n", row.lambda.real(),
                    row.lambda.imag(), to_string(c.kind).data(), to_string(c.subcase).data(),
                    to_string(c.evidence.v0_result.outcome).data(), c.evidence.v0_result.steps,
                    to_string(c.evidence.v1_result.outcome).data(), c.evidence.v1_result.steps,
                    c.evidence.trap_active ? "true" : "false");
    }
    out << buffer;
  }
  out.flush();
  if (!out) throw std::runtime_error("failed to write CSV output");
}

}  // namespace bubbledyn
