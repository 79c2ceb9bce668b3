#include <algorithm>

#include "doctest.h"
#include "kadapt/generators.hpp"
#include "kadapt/instance.hpp"

using namespace kadapt;

namespace {

FiniteInstance tiny_finite() {
  FiniteInstance inst;
  inst.name = "tiny";
  inst.n_y = 2;
  inst.y_space.lower = {0, 0};
  inst.y_space.upper = {1, 1};
  inst.scenarios.push_back({{rat_of(1), rat_of(2)}, {}});
  return inst;
}

bool mentions(const ValidationReport& rep, const std::string& needle) {
  return std::any_of(rep.issues.begin(), rep.issues.end(), [&](const std::string& s) {
    return s.find(needle) != std::string::npos;
  });
}

}  // namespace

TEST_CASE("valid finite instance passes validation") {
  CHECK(validate(tiny_finite()).ok());
}

TEST_CASE("validation flags dimension mismatches") {
  auto inst = tiny_finite();
  inst.scenarios[0].objective.pop_back();
  auto rep = validate(inst);
  CHECK(!rep.ok());
  CHECK(mentions(rep, "objective"));

  inst = tiny_finite();
  inst.scenarios[0].constraints.push_back({{rat_of(1)}, Sense::Ge, rat_of(0)});
  CHECK(!validate(inst).ok());

  inst = tiny_finite();
  inst.y_space.upper.pop_back();
  CHECK(!validate(inst).ok());
}

TEST_CASE("validation flags explicit points outside the box") {
  auto inst = tiny_finite();
  inst.y_space.explicit_points = {{0, 1}, {2, 0}};
  auto rep = validate(inst);
  CHECK(!rep.ok());
  CHECK(mentions(rep, "explicit"));
}

TEST_CASE("validation flags oversized magnitudes") {
  auto inst = tiny_finite();
  inst.scenarios[0].objective[0] = rat_of(1LL << 41);
  CHECK(!validate(inst).ok());
}

TEST_CASE("rational constraint normalization") {
  RatConstraint c = normalize({{rat_of(1), rat_of(-2)}, Sense::Le, rat_of(5, 2)});
  CHECK(c.sense == Sense::Ge);
  CHECK(c.row[0] == rat_of(-1));
  CHECK(c.row[1] == rat_of(2));
  CHECK(c.rhs == rat_of(-5, 2));
}

TEST_CASE("generated affine builtins validate") {
  auto inst = builtin_example("recourse-regions");
  const auto& aff = std::get<AffineInstance>(inst);
  CHECK(validate(aff).ok());
  CHECK(aff.n_xi == 2);
  CHECK(aff.m == 2);

  auto bad = aff;
  bad.H.pop_back();
  CHECK(!validate(bad).ok());

  bad = aff;
  bad.u_box.lower.pop_back();
  CHECK(!validate(bad).ok());
}
