#include <vector>

#include "doctest.h"
#include "kadapt/fourier_motzkin.hpp"

using namespace kadapt;

namespace {

LinIneq ge(std::vector<Rat> a, Rat rhs) { return {std::move(a), std::move(rhs), false}; }
LinIneq gt(std::vector<Rat> a, Rat rhs) { return {std::move(a), std::move(rhs), true}; }

bool all_hold(const std::vector<LinIneq>& sys, const std::vector<Rat>& x) {
  for (const auto& q : sys)
    if (!holds(q, x)) return false;
  return true;
}

}  // namespace

TEST_CASE("box feasibility and sampling") {
  auto sys = box_system({rat_of(0), rat_of(-1)}, {rat_of(2), rat_of(1)}, false);
  CHECK(fm_feasible(sys, 2));
  auto p = fm_sample(sys, 2);
  REQUIRE(p.has_value());
  CHECK(all_hold(sys, *p));
  CHECK((*p)[0] == rat_of(1));  // interval midpoints
  CHECK((*p)[1] == rat_of(0));
}

TEST_CASE("strict inequalities separate touching halfspaces") {
  // x >= 1 and x <= 1 meet in a point; either side strict kills it
  CHECK(fm_feasible({ge({rat_of(1)}, rat_of(1)), ge({rat_of(-1)}, rat_of(-1))}, 1));
  CHECK(!fm_feasible({gt({rat_of(1)}, rat_of(1)), ge({rat_of(-1)}, rat_of(-1))}, 1));
  CHECK(!fm_feasible({ge({rat_of(1)}, rat_of(1)), gt({rat_of(-1)}, rat_of(-1))}, 1));
}

TEST_CASE("infeasibility via elimination, not only on constants") {
  // y >= x + 1, y <= x - 1
  std::vector<LinIneq> sys{ge({rat_of(-1), rat_of(1)}, rat_of(1)),
                           ge({rat_of(1), rat_of(-1)}, rat_of(1))};
  CHECK(!fm_feasible(sys, 2));
}

TEST_CASE("degenerate equality survives as a single point") {
  // x + y = 1 (two weak rows), 0 <= x,y <= 1, y - x >= 1 forces (0, 1)
  std::vector<LinIneq> sys = box_system({rat_of(0), rat_of(0)}, {rat_of(1), rat_of(1)}, false);
  sys.push_back(ge({rat_of(1), rat_of(1)}, rat_of(1)));
  sys.push_back(ge({rat_of(-1), rat_of(-1)}, rat_of(-1)));
  sys.push_back(ge({rat_of(-1), rat_of(1)}, rat_of(1)));
  auto p = fm_sample(sys, 2);
  REQUIRE(p.has_value());
  CHECK(*p == std::vector<Rat>{rat_of(0), rat_of(1)});
}

TEST_CASE("open triangle samples stay strictly inside") {
  std::vector<LinIneq> sys{gt({rat_of(1), rat_of(0)}, rat_of(0)),
                           gt({rat_of(0), rat_of(1)}, rat_of(0)),
                           gt({rat_of(-1), rat_of(-1)}, rat_of(-1))};
  auto pts = fm_samples(sys, 2, 5, 42);
  CHECK(pts.size() == 5);
  for (const auto& p : pts) CHECK(all_hold(sys, p));
  CHECK(fm_samples(sys, 2, 5, 42) == pts);             // seeded determinism
  CHECK(fm_samples(sys, 2, 5, 43) != pts);
}

TEST_CASE("zero-variable systems reduce to constant checks") {
  CHECK(fm_feasible({ge({}, rat_of(-1))}, 0));
  CHECK(!fm_feasible({ge({}, rat_of(1))}, 0));
  CHECK(!fm_feasible({gt({}, rat_of(0))}, 0));
}

TEST_CASE("unbounded directions still sample") {
  // x >= 3, no upper bound
  auto p = fm_sample({ge({rat_of(1)}, rat_of(3))}, 1);
  REQUIRE(p.has_value());
  CHECK((*p)[0] >= rat_of(3));
}

TEST_CASE("holds evaluates strictness") {
  CHECK(holds(ge({rat_of(1)}, rat_of(1)), {rat_of(1)}));
  CHECK(!holds(gt({rat_of(1)}, rat_of(1)), {rat_of(1)}));
  CHECK(holds(gt({rat_of(1)}, rat_of(1)), {rat_of(3, 2)}));
}
