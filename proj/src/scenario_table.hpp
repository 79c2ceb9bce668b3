#pragma once

// Internal integer form of a finite instance for the branch-and-bound kernels.
// Each scenario's objective and constraint rows are scaled by positive
// integers (per-vector denominator lcm) so hot loops run on int64 with
// __int128 accumulation; results stay exact. Instances whose scaled data
// would not fit are marked invalid and handled by the enumeration fallback.

#include <cstdint>
#include <vector>

#include "kadapt/instance.hpp"
#include "kadapt/rational.hpp"
#include "kadapt/scenario_oracle.hpp"

namespace kadapt::detail {

constexpr long long kCoeffCap = 1LL << 55;
constexpr unsigned long long kEnumGuard = 1ULL << 22;

struct IntRow {
  std::vector<long long> a;
  long long rhs = 0;
  bool eq = false;
};

struct ScenarioInts {
  std::vector<long long> obj;
  long long obj_scale = 1;
  std::vector<IntRow> rows;
};

struct InstanceTable {
  bool valid = false;
  std::vector<ScenarioInts> scenarios;
  std::vector<IntRow> det_rows;
  // Per-coordinate bounds copied from the y box.
  std::vector<long long> lo, hi;
};

InstanceTable build_table(const FiniteInstance& inst);

// solve_scenario against a prebuilt table (defined in scenario_oracle.cpp).
ScenarioSolution solve_with_table(const FiniteInstance& inst, const InstanceTable& tab,
                                  int j);


// floor(obj_scale * v) saturated so that comparisons against any reachable
// scaled objective value stay exact.
long long scaled_threshold(const ScenarioInts& sc, const InstanceTable& tab, const Rat& v);

// Largest possible |sum a_i y_i| over the box, as a saturation radius.
long long dot_radius(const std::vector<long long>& a, const std::vector<long long>& lo,
                     const std::vector<long long>& hi);

}  // namespace kadapt::detail
