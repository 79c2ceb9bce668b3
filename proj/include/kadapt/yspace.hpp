#pragma once

#include <vector>

#include "kadapt/errors.hpp"
#include "kadapt/rational.hpp"

namespace kadapt {

enum class Sense { Ge, Le, Eq };

// Integer linear constraint row . y  <sense>  rhs.
struct IntConstraint {
  std::vector<long long> row;
  Sense sense = Sense::Ge;
  long long rhs = 0;
};

// Flips <= rows so that stored senses are >= or =.
IntConstraint normalize(IntConstraint c);

// Second-stage feasible set. Either an integer box (optionally cut by linear
// constraints) or an explicit point list; explicit_points nonempty selects the
// latter and lower/upper then just record the bounding box.
struct YSpace {
  std::vector<long long> lower;
  std::vector<long long> upper;
  std::vector<IntConstraint> constraints;
  std::vector<std::vector<long long>> explicit_points;

  int dim() const { return static_cast<int>(lower.size()); }
  bool explicit_mode() const { return !explicit_points.empty(); }

  void add_constraint(IntConstraint c) { constraints.push_back(normalize(std::move(c))); }

  // Product of box widths, ignoring constraints; 0 when some upper < lower.
  Int raw_box_size() const;

  bool in_box(const std::vector<long long>& y) const;
  bool satisfies_constraints(const std::vector<long long>& y) const;
  bool contains(const std::vector<long long>& y) const;

  // Visits members in lexicographic order (box mode) or list order (explicit
  // mode). Throws GuardExceeded when the raw box exceeds `guard` points.
  template <class F>
  void enumerate(unsigned long long guard, F&& f) const {
    if (explicit_mode()) {
      for (const auto& y : explicit_points) f(y);
      return;
    }
    check_guard(guard);
    const int n = dim();
    std::vector<long long> y(lower);
    if (n == 0) return;
    for (int i = 0; i < n; ++i)
      if (lower[i] > upper[i]) return;
    while (true) {
      if (satisfies_constraints(y)) f(y);
      int i = n - 1;
      while (i >= 0 && y[i] == upper[i]) {
        y[i] = lower[i];
        --i;
      }
      if (i < 0) break;
      ++y[i];
    }
  }

  std::vector<std::vector<long long>> enumerate_all(unsigned long long guard) const;

  // Exact member count under the same guard.
  Int count_points(unsigned long long guard) const;

private:
  void check_guard(unsigned long long guard) const;
};

}  // namespace kadapt
