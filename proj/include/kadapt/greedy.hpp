#pragma once

#include <stdexcept>
#include <vector>

#include "kadapt/bitset.hpp"
#include "kadapt/instance.hpp"
#include "kadapt/rational.hpp"

namespace kadapt {

struct MaxCoverageResult {
  std::vector<long long> policy;
  CoverageSet covered;  // S_{policy} intersected with the queried uncovered set
  int opt_count = 0;
};

// Exact maximizer of |S_y intersect uncovered| over y in Y at threshold v_star,
// via depth-first branch-and-bound over the y box: a scenario stays winnable
// while interval arithmetic over the unfixed coordinates allows both its
// constraint rows and objective <= v_star; the winnable count is the pruning
// bound. Ties resolve to the lexicographically smallest maximizer.
MaxCoverageResult max_coverage(const FiniteInstance& inst, const CoverageSet& uncovered,
                               const Rat& v_star);

struct GreedyStep {
  std::vector<long long> policy;
  int newly_covered = 0;
};

struct MinKResult {
  int k_lb = 0;
  int k_ub = 0;
  std::vector<std::vector<long long>> policies;
  std::vector<GreedyStep> trace;
  Rat optimal_value;
};

class UncoverableScenarios : public std::runtime_error {
public:
  explicit UncoverableScenarios(CoverageSet remaining)
      : std::runtime_error("uncoverable scenarios at v*: " + remaining.str()),
        remaining(std::move(remaining)) {}
  CoverageSet remaining;
};

// Greedy cover loop: repeatedly add the exact max-coverage policy until all
// scenarios are covered. k_ub = number of policies; k_lb = ceil(t / opt(U))
// from the first iteration's coverage count.
MinKResult greedy_min_k(const FiniteInstance& inst);

// Approximation factor 1 + ln(t) certified for k_ub against the optimal k.
// Comparisons against it should allow 1e-12 slack.
double guarantee_ratio(int t);

}  // namespace kadapt
