#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kadapt/instance.hpp"
#include "kadapt/rational.hpp"

namespace kadapt {

// Geometric hyperplane normal . xi = offset in canonical integer form
// (primitive vector, first nonzero normal entry positive), with the (y, row)
// pairs that generate it.
struct Hyperplane {
  std::vector<Int> normal;
  Int offset;
  std::vector<std::pair<std::vector<long long>, int>> provenance;
};

// Open cell of the arrangement inside U: one strict side per hyperplane.
struct Region {
  std::string signs;  // '+' / '-' per hyperplane, aligned with the plane list
  std::vector<Rat> witness;
  std::vector<std::vector<long long>> feasible_set;
};

// All distinct hyperplanes induced by constraint rows over y in Y that meet
// the (closed) uncertainty set; |result| is the empirical eta at x.
// Guards: n_xi <= 3, |Y| <= 2^16.
std::vector<Hyperplane> hyperplanes_for(const AffineInstance& inst,
                                        const std::vector<long long>& x);

// Incremental sign-vector enumeration of the full-dimensional cells meeting
// the interior of U; witnesses are strictly interior rational points.
// Guards: |planes| <= 24; U must have nonempty interior.
std::vector<Region> enumerate_regions(const std::vector<Hyperplane>& planes,
                                      const UBox& u);

// Y_D: second-stage points feasible throughout the region, evaluated at the
// witness (valid by sign-determination); with cross_check, revalidated at 3
// more sampled points of the region.
std::vector<std::vector<long long>> feasible_set_on_region(
    const AffineInstance& inst, const std::vector<long long>& x, const Region& region,
    const std::vector<Hyperplane>& planes, bool cross_check = false);

// True iff every constraint row of every y has constant feasibility sign on
// the open region.
bool verify_recourse_stability(const AffineInstance& inst,
                               const std::vector<long long>& x, const Region& region,
                               const std::vector<Hyperplane>& planes);

// Region count of the arrangement at x, after asserting that region closures
// cover U (arrangement vertices plus a boundary grid).
int empirical_R(const AffineInstance& inst, const std::vector<long long>& x);

}  // namespace kadapt
