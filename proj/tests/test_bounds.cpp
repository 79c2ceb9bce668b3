#include <cmath>
#include <variant>

#include "doctest.h"
#include "kadapt/bounds.hpp"
#include "kadapt/generators.hpp"

using namespace kadapt;

namespace {

const AffineInstance& regions_example() {
  static const AffineInstance inst =
      std::get<AffineInstance>(builtin_example("recourse-regions"));
  return inst;
}

}  // namespace

TEST_CASE("objective-uncertainty policy bound") {
  CHECK(objective_bound(1) == 2);
  CHECK(objective_bound(2) == 3);
  CHECK(objective_bound(7) == 8);
  CHECK_THROWS_AS(objective_bound(0), std::invalid_argument);
}

TEST_CASE("gap guarantees") {
  CHECK(approx_gap(1, 2, 2, 4) == doctest::Approx(2 * std::log(2.0)));
  CHECK(approx_gap(3, 5, 4, 4) == doctest::Approx(0.0));
  CHECK_THROWS_AS(approx_gap(1, 1, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(approx_gap(1, 1, 0, 2), std::invalid_argument);

  CHECK(constraint_approx_gap(1, 2, 3, 4) == doctest::Approx(0.0));
  CHECK(constraint_approx_gap(1, 2, 3, 1) == doctest::Approx(2 * std::log(4.0)));
  CHECK_THROWS_AS(constraint_approx_gap(1, 1, 3, 5), std::invalid_argument);
}

TEST_CASE("policies for a target gap") {
  CHECK(policies_for_alpha(1, 2, 2, 0) == 3);
  CHECK(policies_for_alpha(1, 2, 2, 1e9) == 1);
  // alpha = L d ln((n+1)/s) inverts back to s = 2
  const double alpha = 2.0 * std::log(3.0 / 2.0);
  CHECK(policies_for_alpha(1, 2, 2, alpha) == 2);
  CHECK(policies_for_alpha(0, 0, 4, 3) == 1);
  CHECK_THROWS_AS(policies_for_alpha(1, 2, 2, -1), std::invalid_argument);
}

TEST_CASE("y-space diameters") {
  YSpace cube;
  cube.lower = {0, 0};
  cube.upper = {1, 1};
  auto d = diam_of_yspace(cube);
  CHECK(d.exact);
  CHECK(d.value == doctest::Approx(std::sqrt(2.0)));

  YSpace expl;
  expl.lower = {0, 0};
  expl.upper = {3, 4};
  expl.explicit_points = {{0, 0}, {3, 4}, {1, 1}};
  d = diam_of_yspace(expl);
  CHECK(d.exact);
  CHECK(d.value == doctest::Approx(5.0));

  YSpace cut = cube;
  cut.add_constraint({{1, 1}, Sense::Le, 1});  // drops the far corner
  d = diam_of_yspace(cut);
  CHECK(d.exact);
  CHECK(d.value == doctest::Approx(std::sqrt(2.0)));  // (0,1) to (1,0)
}

TEST_CASE("hyperplane-count procedures on the regions example") {
  const auto& inst = regions_example();
  CHECK(eta_integer_x(inst) == 20);
  CHECK(eta_mixed_x(inst) == 9);
}

TEST_CASE("rhs trimming tightens the integer count") {
  // one row: y - 10 y xi-free part vs a narrow reachable band over U=[0,1]
  AffineInstance inst;
  inst.name = "trim";
  inst.n_x = 1;
  inst.n_y = 1;
  inst.n_xi = 1;
  inst.m = 1;
  inst.X = {{0}};
  inst.y_space.lower = {0};
  inst.y_space.upper = {1};
  inst.A = {{0}};
  inst.Ai = {{{0}}};
  inst.B = {{10}};
  inst.Bi = {{{1}}};
  inst.H = {{0}};
  inst.h = {0};
  inst.u_box.lower = {rat_of(0)};
  inst.u_box.upper = {rat_of(1)};
  inst.objective.c0 = {rat_of(1)};
  REQUIRE(validate(inst).ok());

  // coefficient of xi spans {0,1}; raw rhs spans {-10,...,0}: 2 * 11
  CHECK(eta_integer_x(inst) == 22);
  // over U the lhs only reaches [0,1], so the rhs collapses to {0}: 2 * 1
  CHECK(eta_integer_x(inst, true) == 2);
}

TEST_CASE("rank bound on the xi coefficient matrix") {
  auto band = std::get<AffineInstance>(builtin_example("cardinality-band-affine(3)"));
  CHECK(omega(band) == 1);
  CHECK(omega(regions_example()) == 2);
}

TEST_CASE("region count bound") {
  CHECK(region_count_bound(3, 2) == 7);
  CHECK(region_count_bound(9, 2) == 46);
  CHECK(region_count_bound(5, 0) == 1);
  CHECK(region_count_bound(2, 5) == 4);  // exponent past eta saturates at 2^eta
  CHECK_THROWS_AS(region_count_bound(0, 1), std::invalid_argument);
}

TEST_CASE("constraint-uncertainty bound report") {
  const auto& inst = regions_example();
  auto rep = constraint_k_bound(inst, false, false);
  CHECK(rep.value == 4);  // min(R = 46, |Y| = 4)
  bool saw_eta = false, saw_r = false;
  for (const auto& [key, val] : rep.formula_trace) {
    if (key == "eta") {
      CHECK(val == "9");
      saw_eta = true;
    }
    if (key == "R") {
      CHECK(val == "46");
      saw_r = true;
    }
  }
  CHECK(saw_eta);
  CHECK(saw_r);

  // uncertain objective multiplies by n_xi + 1 before the |Y| cap
  auto rep2 = constraint_k_bound(inst, false, true);
  CHECK(rep2.value == 4);

  CHECK_THROWS_AS(constraint_k_bound(inst, true, false), std::invalid_argument);

  auto band = std::get<AffineInstance>(builtin_example("cardinality-band-affine(3)"));
  auto rep3 = constraint_k_bound(band, true, false);
  // eta_mixed = 2 rows * (beta0 = 4); exponent omega = 1: R = 1 + 8
  CHECK(rep3.value == 8);  // capped by |Y| = 2^3
  auto rep4 = constraint_k_bound(band, false, false);
  CHECK(rep4.value == 8);
}

TEST_CASE("power product helper") {
  CHECK(power_product(2, 3, 2) == 36);
  CHECK(power_product(5, 1, 0) == 1);
  CHECK(power_product(10, 10, 3) == 1000000);
}

TEST_CASE("bound report serializes") {
  auto j = to_json(constraint_k_bound(regions_example(), false, false));
  CHECK(j["name"] == "constraint_k_bound");
  CHECK(j["value"] == 4);
  CHECK(j["formula_trace"].is_array());
}
