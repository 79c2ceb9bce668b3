#include <algorithm>
#include <vector>

#include "doctest.h"
#include "kadapt/errors.hpp"
#include "kadapt/generators.hpp"
#include "kadapt/scenario_oracle.hpp"

using namespace kadapt;

namespace {

// Plain rational reference: evaluate every y against scenario j directly.
Value ref_scenario_min(const FiniteInstance& inst, int j, std::vector<long long>* arg = nullptr) {
  Value best = Value::infinity();
  const Scenario& sc = inst.scenarios[j];
  inst.y_space.enumerate(1ULL << 22, [&](const std::vector<long long>& y) {
    for (const auto& c : sc.constraints) {
      Rat lhs(0);
      for (size_t i = 0; i < y.size(); ++i) lhs += c.row[i] * rat_of(y[i]);
      if (c.sense == Sense::Eq ? lhs != c.rhs : lhs < c.rhs) return;
    }
    Rat obj(0);
    for (size_t i = 0; i < y.size(); ++i) obj += sc.objective[i] * rat_of(y[i]);
    if (Value(obj) < best) {
      best = Value(obj);
      if (arg) *arg = y;
    }
  });
  return best;
}

FiniteInstance simplex3() {
  return std::get<FiniteInstance>(builtin_example("simplex-units(3)"));
}

}  // namespace

TEST_CASE("scenario minima on the simplex example") {
  auto inst = simplex3();
  REQUIRE(inst.t() == 7);
  // only the full-set scenario forces a positive cost
  for (int j = 0; j < 6; ++j) CHECK(solve_scenario(inst, j).value == Value(rat_of(0)));
  CHECK(solve_scenario(inst, 6).value == Value(rat_of(1, 3)));
  CHECK(two_stage_value(inst) == rat_of(1, 3));
  CHECK_THROWS_AS(solve_scenario(inst, 7), std::exception);
}

TEST_CASE("argmin ties resolve lexicographically") {
  auto inst = simplex3();
  // scenario {2}: e1 and e3 both cost 0; (0,0,1) is lex-smaller
  CHECK(solve_scenario(inst, 1).argmin == std::vector<long long>{0, 0, 1});
}

TEST_CASE("oracle equals plain rational enumeration on seeded knapsacks") {
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    auto inst = generate_knapsack(4 + seed % 7, 3 + seed % 10, seed);
    for (int j = 0; j < inst.t(); ++j) {
      std::vector<long long> ref_arg;
      Value ref = ref_scenario_min(inst, j, &ref_arg);
      auto got = solve_scenario(inst, j);
      REQUIRE(got.value == ref);
      REQUIRE(got.argmin == ref_arg);
    }
  }
}

TEST_CASE("coverage sets on the simplex example") {
  auto inst = simplex3();
  Rat v = two_stage_value(inst);
  // e1 covers the scenarios not charging coordinate 1, plus the full set
  auto cov = coverage_set(inst, {1, 0, 0}, Value(v));
  CHECK(cov.members() == std::vector<int>{1, 3, 5, 6});
  CHECK(coverage_set(inst, {0, 1, 0}, Value(v)).members() == std::vector<int>{0, 3, 4, 6});
  CHECK(coverage_set(inst, {0, 0, 1}, Value(v)).members() == std::vector<int>{0, 1, 2, 6});
  // at a lower threshold the full-set scenario drops out
  CHECK(coverage_set(inst, {1, 0, 0}, Value(rat_of(0))).members() ==
        std::vector<int>{1, 3, 5});
  CHECK_THROWS_AS(coverage_set(inst, {2, 0, 0}, Value(v)), std::invalid_argument);
}

TEST_CASE("evaluate_k_solution maxmin semantics") {
  auto inst = simplex3();
  CHECK(evaluate_k_solution(inst, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) ==
        Value(rat_of(1, 3)));
  CHECK(evaluate_k_solution(inst, {{1, 0, 0}, {0, 1, 0}}) == Value(rat_of(1, 2)));
  CHECK(evaluate_k_solution(inst, {{1, 0, 0}}) == Value(rat_of(1)));
  CHECK(evaluate_k_solution(inst, {}).is_infinite());
}

TEST_CASE("brute-force minimum policy counts") {
  CHECK(brute_force_min_k(simplex3()).k_opt == 3);
  auto band = std::get<FiniteInstance>(builtin_example("cardinality-band(4)"));
  CHECK(brute_force_min_k(band).k_opt == 4);

  auto res = brute_force_min_k(simplex3());
  CHECK(evaluate_k_solution(simplex3(), res.witness) == Value(rat_of(1, 3)));
}

TEST_CASE("brute-force opt(k) is monotone and exact at the ends") {
  auto inst = simplex3();
  CHECK(brute_force_opt_k(inst, 1) == Value(rat_of(1)));
  CHECK(brute_force_opt_k(inst, 2) == Value(rat_of(1, 2)));
  CHECK(brute_force_opt_k(inst, 3) == Value(rat_of(1, 3)));
  CHECK(brute_force_opt_k(inst, 4) == Value(rat_of(1, 3)));
  CHECK(brute_force_opt_k(inst, 0).is_infinite());

  for (uint64_t seed = 1; seed <= 10; ++seed) {
    auto kn = generate_knapsack(4 + seed % 4, 3 + seed % 5, seed);
    Value prev = Value::infinity();
    for (int k = 1; k <= 3; ++k) {
      Value cur = brute_force_opt_k(kn, k);
      CHECK(cur <= prev);
      prev = cur;
    }
    auto mk = brute_force_min_k(kn);
    CHECK(brute_force_opt_k(kn, mk.k_opt) == Value(two_stage_value(kn)));
    if (mk.k_opt > 1)
      CHECK(brute_force_opt_k(kn, mk.k_opt - 1) > Value(two_stage_value(kn)));
  }
}

TEST_CASE("infeasible scenarios raise with the witness index") {
  FiniteInstance inst;
  inst.n_y = 1;
  inst.y_space.lower = {0};
  inst.y_space.upper = {1};
  inst.scenarios.push_back({{rat_of(1)}, {}});
  inst.scenarios.push_back({{rat_of(1)}, {{{rat_of(1)}, Sense::Ge, rat_of(2)}}});
  CHECK(solve_scenario(inst, 1).value.is_infinite());
  CHECK_THROWS_WITH_AS(two_stage_value(inst), doctest::Contains("scenario 1"),
                       TwoStageInfeasible);
}

TEST_CASE("brute-force guard on scenario count") {
  FiniteInstance inst;
  inst.n_y = 1;
  inst.y_space.lower = {0};
  inst.y_space.upper = {1};
  for (int j = 0; j < 65; ++j) inst.scenarios.push_back({{rat_of(1)}, {}});
  CHECK_THROWS_AS(brute_force_min_k(inst), GuardExceeded);
}
