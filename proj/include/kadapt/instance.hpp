#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kadapt/rational.hpp"
#include "kadapt/yspace.hpp"

namespace kadapt {

// Rational linear constraint row . v  <sense>  rhs.
struct RatConstraint {
  std::vector<Rat> row;
  Sense sense = Sense::Ge;
  Rat rhs = 0;
};

RatConstraint normalize(RatConstraint c);

// One uncertainty realization: objective coefficients plus the second-stage
// constraints it induces.
struct Scenario {
  std::vector<Rat> objective;
  std::vector<RatConstraint> constraints;
};

struct FiniteInstance {
  std::string name;
  uint64_t seed = 0;
  bool generated = false;
  int n_y = 0;
  YSpace y_space;
  std::vector<Scenario> scenarios;

  int t() const { return static_cast<int>(scenarios.size()); }
};

using IntMatrix = std::vector<std::vector<long long>>;

// Box (plus optional cuts) of uncertainty realizations, rational-valued.
struct UBox {
  std::vector<Rat> lower;
  std::vector<Rat> upper;
  std::vector<RatConstraint> constraints;

  int dim() const { return static_cast<int>(lower.size()); }
};

// Second-stage cost (c0 + C xi) . y; empty C means xi-free cost.
struct ObjectiveSpec {
  std::vector<Rat> c0;
  std::vector<std::vector<Rat>> C;

  bool depends_on_xi() const;
};

// Uncertain constraint system
//   A(xi) x + B(xi) y >= h(xi)
// with affine data A(xi) = A + sum_i xi_i Ai[i], likewise B, and
// h(xi) = h + H xi; X is an explicit list of first-stage points.
struct AffineInstance {
  std::string name;
  uint64_t seed = 0;
  bool generated = false;
  int n_x = 0;
  int n_y = 0;
  int n_xi = 0;
  int m = 0;
  std::vector<std::vector<long long>> X;
  YSpace y_space;
  IntMatrix A;
  std::vector<IntMatrix> Ai;
  IntMatrix B;
  std::vector<IntMatrix> Bi;
  IntMatrix H;
  std::vector<long long> h;
  UBox u_box;
  ObjectiveSpec objective;
};

struct ValidationReport {
  std::vector<std::string> issues;

  bool ok() const { return issues.empty(); }
  std::string joined() const;
};

ValidationReport validate(const FiniteInstance& inst);
ValidationReport validate(const AffineInstance& inst);

}  // namespace kadapt
