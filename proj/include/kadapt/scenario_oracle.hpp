#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "kadapt/bitset.hpp"
#include "kadapt/instance.hpp"
#include "kadapt/rational.hpp"

namespace kadapt {

struct ScenarioSolution {
  Value value;
  std::vector<long long> argmin;  // empty when the scenario is infeasible
};

class TwoStageInfeasible : public std::runtime_error {
public:
  explicit TwoStageInfeasible(int scenario)
      : std::runtime_error("two-stage infeasible: scenario " +
                           std::to_string(scenario) + " admits no feasible y"),
        scenario(scenario) {}
  int scenario;
};

// Exact minimum of scenario j's objective over its feasible second-stage
// points; +inf when none exists. Argmin ties resolve to the lexicographically
// smallest vector.
ScenarioSolution solve_scenario(const FiniteInstance& inst, int j);

// v* = max_j solve_scenario(j); throws TwoStageInfeasible when a scenario has
// no feasible y.
Rat two_stage_value(const FiniteInstance& inst);

// Bit j set iff y satisfies scenario j's constraints and its objective at y
// is <= v.
CoverageSet coverage_set(const FiniteInstance& inst, const std::vector<long long>& y,
                         const Value& v);

// max over scenarios of (min over policies feasible there); +inf when some
// scenario is covered by no policy or the list is empty.
Value evaluate_k_solution(const FiniteInstance& inst,
                          const std::vector<std::vector<long long>>& policies);

struct MinKOracle {
  int k_opt = 0;
  std::vector<std::vector<long long>> witness;
};

// Exact minimum k with opt(k) = v*, by full enumeration of coverage sets and
// an exact set-cover search. Desk-scale only: t <= 64 and |Y| <= 2^22.
MinKOracle brute_force_min_k(const FiniteInstance& inst);

// Exact opt(k) over deduplicated per-scenario value profiles. Same guards as
// brute_force_min_k plus a profile cap and a node budget.
Value brute_force_opt_k(const FiniteInstance& inst, int k);

}  // namespace kadapt
