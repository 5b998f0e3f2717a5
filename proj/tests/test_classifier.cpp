#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "bubbledyn/classifier.hpp"
#include "bubbledyn/reference_examples.hpp"

using namespace bubbledyn;

namespace {

void check_invariants(const MapParams& p, const Classification& c) {
  CHECK(c.evidence.trap_active == (std::abs(p.lambda()) < c.evidence.threshold));
  CHECK(c.evidence.threshold == trap_threshold(p.n(), 0.2));
  if (c.kind == JuliaKind::CantorSet) {
    CHECK(c.subcase == Subcase::Case1);
    CHECK(c.evidence.v0_result.outcome == OrbitOutcome::Escaped);
    CHECK_FALSE(c.evidence.trap_active);
  }
  if (c.kind == JuliaKind::CantorBubbles) {
    CHECK(c.subcase == Subcase::Case3b);
    CHECK(c.evidence.v0_result.outcome == OrbitOutcome::Trapped);
    CHECK(c.evidence.v1_result.outcome == OrbitOutcome::Trapped);
  }
  if (c.kind != JuliaKind::Unresolved) {
    const bool v0_escaped = c.evidence.v0_result.outcome == OrbitOutcome::Escaped;
    const bool v1_escaped = c.evidence.v1_result.outcome == OrbitOutcome::Escaped;
    CHECK_FALSE((v0_escaped && !v1_escaped));
    CHECK(c.subcase != Subcase::None);
  } else {
    CHECK(c.subcase == Subcase::None);
  }
}

}  // namespace

TEST_CASE("reference classifications") {
  for (const ReferenceExample& ex : reference_examples()) {
    CAPTURE(ex.label);
    const MapParams p(ex.n, ex.lambda);
    const Classification c = classify(p, 5000);
    CHECK(c.kind == ex.kind);
    CHECK(c.subcase == ex.subcase);
    check_invariants(p, c);
  }
}

TEST_CASE("reference examples evidence") {
  SUBCASE("Case3a lists both attractors, the v1 one clear of the trap disk") {
    const Classification c = classify(MapParams(3, {std::sqrt(6.0) / 9.0, 0.0}));
    REQUIRE(c.evidence.cycles.size() == 2);
    CHECK(c.evidence.cycles[1].kind == CycleKind::Superattracting);
    CHECK(c.evidence.trap_active);
  }
  SUBCASE("Case2 with trap present: v1 hits the pole") {
    const Classification c = classify(MapParams(3, {std::sqrt(3.0) / 9.0, 0.0}));
    CHECK(c.evidence.trap_active);
    CHECK(c.evidence.v1_result.steps == 1);
    CHECK(c.evidence.v0_result.outcome == OrbitOutcome::Trapped);
  }
  SUBCASE("Case2 with trap absent") {
    const Classification c = classify(MapParams(3, std::polar(1.0, std::numbers::pi / 3.0)));
    CHECK_FALSE(c.evidence.trap_active);
    CHECK(c.evidence.v0_result.outcome == OrbitOutcome::BudgetExhausted);
    CHECK(c.evidence.v1_result.outcome == OrbitOutcome::Escaped);
  }
}

TEST_CASE("n = 2 parabolic parameter is unresolved") {
  const Classification c = classify(MapParams(2, {0.25, 0.0}));
  CHECK(c.kind == JuliaKind::Unresolved);
  CHECK_FALSE(c.note.empty());
}

TEST_CASE("n = 2 keeps escape verdicts") {
  // Perturbation to lambda = 0.253 escapes both critical orbits.
  const Classification c = classify(MapParams(2, {0.253, 0.0}));
  CHECK(c.kind == JuliaKind::CantorSet);
  // Inside the would-be trap region: only escape verdicts or Unresolved.
  const Classification small = classify(MapParams(2, {0.05, 0.0}));
  CHECK(small.evidence.trap_active);
  CHECK(small.kind != JuliaKind::CantorBubbles);
  CHECK(small.subcase != Subcase::Case3a);
}

TEST_CASE("classify preconditions") {
  CHECK_THROWS_AS(classify(MapParams(3, {0.16, 0.0}), 99), std::invalid_argument);
}

TEST_CASE("classification invariants and budget monotonicity on random parameters") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> coord(-1.2, 1.2);
  int resolved = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const MapParams p(3 + trial % 4, {coord(rng), coord(rng)});
    const Classification low = classify(p, 1000);
    check_invariants(p, low);
    if (low.kind == JuliaKind::Unresolved) continue;
    ++resolved;
    const Classification high = classify(p, 4000);
    CHECK(high.kind == low.kind);
    CHECK(high.subcase == low.subcase);
  }
  CHECK(resolved > 250);
}

TEST_CASE("grid_centers addressing") {
  const auto single = grid_centers({-1.0, -1.0, 1.0, 1.0}, 1, 1);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == Complex{0.0, 0.0});

  const auto g = grid_centers({0.0, 0.0, 4.0, 2.0}, 4, 2);
  REQUIRE(g.size() == 8);
  CHECK(g[0] == Complex{0.5, 1.5});  // top-left first
  CHECK(g[3] == Complex{3.5, 1.5});
  CHECK(g[4] == Complex{0.5, 0.5});

  CHECK_THROWS_AS(grid_centers({0.0, 0.0, 0.0, 1.0}, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(grid_centers({0.0, 0.0, 1.0, 1.0}, 0, 2), std::invalid_argument);
}

TEST_CASE("classify_grid examples") {
  SUBCASE("1x1 around 4/25") {
    const auto rows = classify_grid(3, {0.15, -0.01, 0.17, 0.01}, 1, 1, 5000);
    REQUIRE(rows.size() == 1);
    CHECK_FALSE(rows[0].skipped);
    CHECK(rows[0].result.kind == JuliaKind::CantorBubbles);
  }
  SUBCASE("1x1 around 0 is skipped") {
    const auto rows = classify_grid(3, {-1.0, -1.0, 1.0, 1.0}, 1, 1, 5000);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].skipped);
  }
  SUBCASE("explicit three-parameter batch") {
    const auto rows =
        classify_points(3, {{0.0, -1.0}, std::polar(1.0, std::numbers::pi / 3.0), {0.16, 0.0}}, 5000);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].result.kind == JuliaKind::CantorSet);
    CHECK(rows[1].result.kind == JuliaKind::Connected);
    CHECK(rows[2].result.kind == JuliaKind::CantorBubbles);
  }
}

TEST_CASE("classify_grid is independent of the worker count") {
  const Window w{-0.6, -0.6, 0.6, 0.6};
  std::ostringstream one;
  std::ostringstream many;
  write_csv(one, classify_grid(3, w, 9, 7, 500, 1));
  write_csv(many, classify_grid(3, w, 9, 7, 500, 8));
  CHECK(one.str() == many.str());
}

TEST_CASE("CSV format") {
  std::vector<GridRow> rows = classify_points(3, {{0.16, 0.0}, {0.0, 0.0}}, 5000);
  std::ostringstream out;
  write_csv(out, rows);
  const std::string text = out.str();
  CHECK(text.find('\r') == std::string::npos);
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "re,im,kind,subcase,v0_outcome,v0_steps,v1_outcome,v1_steps,trap_active");
  std::getline(lines, line);
  CHECK(line == "0.16,0,cantor_bubbles,case3b,trapped,0,trapped,2,true");
  std::getline(lines, line);
  CHECK(line == "0,0,skipped,none,none,0,none,0,false");

  // Full precision round trip of the parameter.
  std::ostringstream precise;
  write_csv(precise, classify_points(3, {{0.1 + 0.2, -1.0 / 3.0}}, 100));
  std::string body = precise.str().substr(precise.str().find('\n') + 1);
  const double re = std::stod(body.substr(0, body.find(',')));
  CHECK(re == 0.1 + 0.2);

  std::ostringstream broken;
  broken.setstate(std::ios::badbit);
  CHECK_THROWS_AS(write_csv(broken, rows), std::runtime_error);
}
