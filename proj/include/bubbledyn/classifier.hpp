#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bubbledyn/cycles.hpp"
#include "bubbledyn/escape_trap.hpp"
#include "bubbledyn/map_core.hpp"

namespace bubbledyn {

// Julia set types of the family for n >= 3:
//   CantorSet      - v0 escapes (then v1 escapes as well);
//   Connected      - v1 escapes while v0 does not (Case2), or the two free
//                    critical values lie in different bounded components (Case3a);
//   CantorBubbles  - both free critical values lie in the completely invariant
//                    basin around -lambda (Case3b).
enum class JuliaKind { CantorSet, Connected, CantorBubbles, Unresolved };
enum class Subcase { Case1, Case2, Case3a, Case3b, None };

std::string_view to_string(JuliaKind kind);
std::string_view to_string(Subcase subcase);

struct Evidence {
  bool trap_active = false;
  double threshold = 0.0;
  OrbitResult v0_result;
  OrbitResult v1_result;
  std::vector<CycleInfo> cycles;
};

struct Classification {
  JuliaKind kind = JuliaKind::Unresolved;
  Subcase subcase = Subcase::None;
  Evidence evidence;
  // Total map applications spent.
  int budget_used = 0;
  // Empty unless the run hit an inconsistency or an experimental regime.
  std::string note;
};

// Finite-budget decision procedure. Never guesses: anything the budget cannot
// settle is Unresolved. Throws std::invalid_argument if budget < 100.
Classification classify(const MapParams& params, int budget = kDefaultClassifyBudget);

struct Window {
  double re_min = -2.0;
  double im_min = -2.0;
  double re_max = 2.0;
  double im_max = 2.0;
};

struct GridRow {
  Complex lambda;
  // lambda == 0 lies outside the family.
  bool skipped = false;
  Classification result;
};

// Classifies an explicit list of parameters, in order. Parallel across entries
// with deterministic assembly; workers = 0 picks the default worker count.
std::vector<GridRow> classify_points(int n, const std::vector<Complex>& lambdas, int budget,
                                     unsigned workers = 0);

// Cell-center parameters of a re x im grid over the window, row-major from
// the top-left cell. Throws std::invalid_argument on a degenerate window or
// empty resolution.
std::vector<Complex> grid_centers(const Window& window, int columns, int rows);

std::vector<GridRow> classify_grid(int n, const Window& window, int columns, int rows, int budget,
                                   unsigned workers = 0);

// CSV with header re,im,kind,subcase,v0_outcome,v0_steps,v1_outcome,v1_steps,trap_active.
// Throws std::runtime_error if the stream fails.
void write_csv(std::ostream& out, const std::vector<GridRow>& rows);

}  // namespace bubbledyn
