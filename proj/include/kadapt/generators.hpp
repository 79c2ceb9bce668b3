#pragma once

#include <cstdint>
#include <vector>

#include "kadapt/instance.hpp"
#include "kadapt/json_io.hpp"

namespace kadapt {

// Covering knapsack family with per-scenario cost/weight deviations: base
// weights abar_i ~ U{40..60}, costs cbar_i ~ U{abar_i-5..abar_i+5}, demand
// b = 0.2 sum(abar); per scenario, Gamma = floor(n_y/4) cost indices and,
// independently, Gamma weight indices are raised to 1.5x their base value.
// All data are stored scaled by 10 so every entry is an integer.
// Draw order (fixed for reproducibility): all abar, then all cbar, then per
// scenario the cost index set followed by the weight index set.
FiniteInstance generate_knapsack(int n_y, int t, uint64_t seed);

// Set-cover instance: universe elements become unit scenarios e_v with
// objective -e_v . y, the subsets become an explicit Y list of indicator
// vectors. A size-k cover exists iff k policies reach value -1.
FiniteInstance reduce_set_cover(int universe_size,
                                const std::vector<std::vector<int>>& subsets);

// Named study instances:
//   "simplex-units(n)"          scenarios uniform on each nonempty subset of
//                               [n], Y = unit vectors, objective xi . y
//   "recourse-regions"          2x2 affine system -y1 + xi2 y2 <= xi1,
//                               y1 + 3 y2 >= xi2 over U = [3/2,7/2]x[1/2,2]
//   "cardinality-band(n)"       sum(y) <= xi1 <= sum(y)+1 discretized at the
//                               midpoints xi1 = j - 1/2, j = 1..n
//   "cardinality-band-affine(n)" the same band kept in affine form over
//                               U = [0,n]
Instance builtin_example(const std::string& name);

// Finite discretization of an affine instance at a fixed first-stage point
// and a list of uncertainty realizations.
FiniteInstance finite_from_affine(const AffineInstance& inst,
                                  const std::vector<long long>& x,
                                  const std::vector<std::vector<Rat>>& points);

}  // namespace kadapt
