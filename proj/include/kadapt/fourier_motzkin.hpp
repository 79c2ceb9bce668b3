#pragma once

#include <optional>
#include <vector>

#include "kadapt/rational.hpp"

namespace kadapt {

// a . x >= rhs, or strictly > when strict is set.
struct LinIneq {
  std::vector<Rat> a;
  Rat rhs = 0;
  bool strict = false;
};

bool holds(const LinIneq& q, const std::vector<Rat>& x);

// Elimination tower: stages[k] constrains variables 0..nvars-1-k only, with
// variables eliminated from the back. stages[nvars] holds constant rows.
struct FMTower {
  int nvars = 0;
  bool feasible = false;
  std::vector<std::vector<LinIneq>> stages;
};

// Exact feasibility of a mixed strict/non-strict rational system over R^nvars.
FMTower fm_eliminate(std::vector<LinIneq> sys, int nvars);
bool fm_feasible(const std::vector<LinIneq>& sys, int nvars);

// A point of the feasible set (interval midpoints during back-substitution),
// or nullopt when infeasible.
std::optional<std::vector<Rat>> fm_sample(const FMTower& tower);
std::optional<std::vector<Rat>> fm_sample(const std::vector<LinIneq>& sys, int nvars);

// `count` deterministic pseudorandom feasible points.
std::vector<std::vector<Rat>> fm_samples(const std::vector<LinIneq>& sys, int nvars,
                                         int count, uint64_t seed);

// Box sides as inequalities, strict for open boxes.
std::vector<LinIneq> box_system(const std::vector<Rat>& lower,
                                const std::vector<Rat>& upper, bool strict);

}  // namespace kadapt
