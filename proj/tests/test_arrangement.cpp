#include <variant>
#include <vector>

#include "doctest.h"
#include "kadapt/arrangement.hpp"
#include "kadapt/errors.hpp"
#include "kadapt/generators.hpp"

using namespace kadapt;
using VecList = std::vector<std::vector<long long>>;

namespace {

const AffineInstance& regions_example() {
  static const AffineInstance inst =
      std::get<AffineInstance>(builtin_example("recourse-regions"));
  return inst;
}

}  // namespace

TEST_CASE("hyperplanes of the regions example") {
  const auto& inst = regions_example();
  auto planes = hyperplanes_for(inst, {0});
  REQUIRE(planes.size() == 2);
  // canonical order: xi2 = 1, then xi1 - xi2 = 0
  CHECK(planes[0].normal == std::vector<Int>{0, 1});
  CHECK(planes[0].offset == 1);
  CHECK(planes[1].normal == std::vector<Int>{1, -1});
  CHECK(planes[1].offset == 0);
  CHECK_THROWS_AS(hyperplanes_for(inst, {5}), std::invalid_argument);
}

TEST_CASE("region enumeration and feasible sets match the worked example") {
  const auto& inst = regions_example();
  auto planes = hyperplanes_for(inst, {0});
  auto regions = enumerate_regions(planes, inst.u_box);
  REQUIRE(regions.size() == 3);

  CHECK(regions[0].signs == "++");  // xi2 > 1, xi1 > xi2
  CHECK(regions[1].signs == "+-");  // xi2 > 1, xi1 < xi2
  CHECK(regions[2].signs == "-+");  // xi2 < 1

  auto d2 = feasible_set_on_region(inst, {0}, regions[0], planes, true);
  auto d1 = feasible_set_on_region(inst, {0}, regions[1], planes, true);
  auto d3 = feasible_set_on_region(inst, {0}, regions[2], planes, true);
  CHECK(d1 == VecList{{1, 1}});
  CHECK(d2 == VecList{{0, 1}, {1, 1}});
  CHECK(d3 == VecList{{0, 1}, {1, 0}, {1, 1}});

  for (const auto& r : regions) {
    CHECK(verify_recourse_stability(inst, {0}, r, planes));
    // witnesses live strictly inside U
    CHECK(r.witness[0] > inst.u_box.lower[0]);
    CHECK(r.witness[0] < inst.u_box.upper[0]);
    CHECK(r.witness[1] > inst.u_box.lower[1]);
    CHECK(r.witness[1] < inst.u_box.upper[1]);
  }

  CHECK(empirical_R(inst, {0}) == 3);
}

TEST_CASE("a region spanning a dropped plane is not recourse-stable") {
  const auto& inst = regions_example();
  auto planes = hyperplanes_for(inst, {0});
  std::vector<Hyperplane> only_first{planes[0]};
  auto regions = enumerate_regions(only_first, inst.u_box);
  REQUIRE(regions.size() == 2);
  CHECK(regions[0].signs == "+");
  // xi2 > 1 straddles the xi1 = xi2 plane, so some row changes sign there
  CHECK(!verify_recourse_stability(inst, {0}, regions[0], only_first));
  CHECK(verify_recourse_stability(inst, {0}, regions[1], only_first));
}

TEST_CASE("coincident planes merge their provenance") {
  auto inst = std::get<AffineInstance>(builtin_example("cardinality-band-affine(2)"));
  auto planes = hyperplanes_for(inst, {0});
  REQUIRE(planes.size() == 3);  // xi = 0, 1, 2 inside U = [0, 2]
  for (size_t i = 0; i < planes.size(); ++i) {
    CHECK(planes[i].normal == std::vector<Int>{1});
    CHECK(planes[i].offset == Int(static_cast<long>(i)));
  }
  // xi = 1 arises from sum(y) = 1 in the lower band and sum(y) = 0 in the upper
  CHECK(planes[1].provenance.size() == 3);
  CHECK(planes[0].provenance.size() == 1);

  // sign-lex order puts the middle band (1, 2) before (0, 1)
  auto regions = enumerate_regions(planes, inst.u_box);
  REQUIRE(regions.size() == 2);
  CHECK(regions[0].signs == "++-");
  CHECK(regions[1].signs == "+--");
  CHECK(feasible_set_on_region(inst, {0}, regions[0], planes) ==
        VecList{{0, 1}, {1, 0}});
  CHECK(feasible_set_on_region(inst, {0}, regions[1], planes) == VecList{{0, 0}});
  CHECK(empirical_R(inst, {0}) == 2);
}

TEST_CASE("band arrangement counts in one dimension") {
  auto inst = std::get<AffineInstance>(builtin_example("cardinality-band-affine(3)"));
  auto planes = hyperplanes_for(inst, {0});
  CHECK(planes.size() == 4);
  CHECK(empirical_R(inst, {0}) == 3);
}

TEST_CASE("two generic lines split a box into four cells") {
  std::vector<Hyperplane> planes{{{Int(1), Int(0)}, Int(0), {}},
                                 {{Int(0), Int(1)}, Int(0), {}}};
  UBox u;
  u.lower = {rat_of(-1), rat_of(-1)};
  u.upper = {rat_of(1), rat_of(1)};
  auto regions = enumerate_regions(planes, u);
  REQUIRE(regions.size() == 4);
  CHECK(regions[0].signs == "++");
  CHECK(regions[3].signs == "--");
}

TEST_CASE("degenerate uncertainty sets are rejected") {
  UBox flat;
  flat.lower = {rat_of(0), rat_of(1)};
  flat.upper = {rat_of(1), rat_of(1)};
  CHECK_THROWS_AS(enumerate_regions({}, flat), std::invalid_argument);
}

TEST_CASE("guards on plane count and dimension") {
  UBox u;
  u.lower = {rat_of(0)};
  u.upper = {rat_of(100)};
  std::vector<Hyperplane> many;
  for (int i = 0; i < 25; ++i) many.push_back({{Int(1)}, Int(i), {}});
  CHECK_THROWS_AS(enumerate_regions(many, u), GuardExceeded);

  auto inst = regions_example();
  inst.n_xi = 4;  // not even valid; the guard fires before validation matters
  CHECK_THROWS_AS(hyperplanes_for(inst, {0}), GuardExceeded);
}

TEST_CASE("no planes leaves a single region covering U") {
  auto regions = enumerate_regions({}, regions_example().u_box);
  REQUIRE(regions.size() == 1);
  CHECK(regions[0].signs.empty());
  CHECK(regions[0].witness.size() == 2);
}
