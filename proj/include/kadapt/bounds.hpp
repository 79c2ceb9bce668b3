#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "kadapt/instance.hpp"
#include "kadapt/rational.hpp"

namespace kadapt {

// Policy-count and gap formulas. Integer-valued bounds are exact (GMP);
// gap formulas are floats and comparisons against them should allow 1e-12
// slack.

// Policies sufficient under pure objective uncertainty: n_xi + 1.
long long objective_bound(int n_xi);

// Gap guarantee opt(s) - opt(k) <= L * diam_Y * ln(k/s) for s <= k.
double approx_gap(double L, double diam_Y, long long s, long long k);

// Smallest k with opt(k) <= opt(2RO) + alpha: ceil((n_xi+1) e^{-alpha/(L d)}),
// clamped to [1, n_xi+1].
long long policies_for_alpha(double L, double diam_Y, int n_xi, double alpha);

struct DiamResult {
  double value = 0.0;
  bool exact = true;  // false: box diagonal used as an upper bound only
};

// Euclidean diameter of Y: box diagonal for plain boxes, exact pairwise
// maximum for enumerable constrained/explicit spaces (guard 4096 points).
DiamResult diam_of_yspace(const YSpace& ys);

// Hyperplane-count bound via per-coordinate integer coefficient ranges:
// prod_{i=0..n_xi} (vbar_i - v_i + 1). With trim_rhs, rhs values outside the
// lhs range achievable over the U box are dropped before counting.
Int eta_integer_x(const AffineInstance& inst, bool trim_rhs = false);

// Hyperplane-count bound via per-row products: sum_l prod_i beta^i_l with
// beta^i_l = max_Y y.b^i_l - min_Y y.b^i_l + 1.
Int eta_mixed_x(const AffineInstance& inst);

// max over x in X of rank(A^1 x - H_1 | ... | A^{n_xi} x - H_{n_xi}).
int omega(const AffineInstance& inst);

// sum_{i=0}^{rank} C(eta, i).
Int region_count_bound(const Int& eta, int rank);

struct BoundReport {
  std::string name;
  Int value;
  std::vector<std::string> assumptions;
  std::vector<std::pair<std::string, std::string>> formula_trace;
};

nlohmann::json to_json(const BoundReport& rep);

// Policy-count bound under constraint uncertainty: R = region_count_bound(
// min(eta_integer, eta_mixed), e) with e = omega under fixed recourse and
// e = n_xi otherwise; k = min(R*(n_xi+1), |Y|) when the objective is
// uncertain, min(R, |Y|) when it is not.
BoundReport constraint_k_bound(const AffineInstance& inst, bool fixed_recourse,
                               bool objective_uncertain);

// Gap guarantee opt(R*s) - opt(2RO) <= L * diam_Y * ln((n_xi+1)/s).
double constraint_approx_gap(double L, double diam_Y, int n_xi, long long s);

// a^p * b^p, exact.
Int power_product(const Int& a, const Int& b, int p);

}  // namespace kadapt
