#include <stdexcept>

#include "doctest.h"
#include "kadapt/rational.hpp"

using namespace kadapt;

TEST_CASE("rational parsing round-trips") {
  CHECK(rat_from_string("3/4") == rat_of(3, 4));
  CHECK(rat_from_string("-7/2") == rat_of(-7, 2));
  CHECK(rat_from_string("5") == rat_of(5));
  CHECK(rat_from_string("-0") == 0);
  CHECK(rat_from_string("6/4") == rat_of(3, 2));  // canonicalized
  CHECK(rat_to_string(rat_of(-3, 9)) == "-1/3");
  CHECK(rat_to_string(rat_of(8, 4)) == "2");
}

TEST_CASE("rational parsing rejects malformed input") {
  CHECK_THROWS_AS(rat_from_string("1/0"), std::exception);
  CHECK_THROWS_AS(rat_from_string("1/2/3"), std::exception);
  CHECK_THROWS_AS(rat_from_string("1.5"), std::exception);
  CHECK_THROWS_AS(rat_from_string(""), std::exception);
  CHECK_THROWS_AS(rat_from_string("a"), std::exception);
  CHECK_THROWS_AS(rat_from_string("1/"), std::exception);
}

TEST_CASE("floor and ceil at negative rationals") {
  CHECK(rat_floor(rat_of(-3, 2)) == -2);
  CHECK(rat_ceil(rat_of(-3, 2)) == -1);
  CHECK(rat_floor(rat_of(7, 2)) == 3);
  CHECK(rat_ceil(rat_of(7, 2)) == 4);
  CHECK(rat_floor(rat_of(4)) == 4);
  CHECK(rat_ceil(rat_of(4)) == 4);
}

TEST_CASE("to_int64 range checking") {
  CHECK(to_int64(int_of(-9223372036854775807LL - 1)) == -9223372036854775807LL - 1);
  CHECK(to_int64(int_of(9223372036854775807LL)) == 9223372036854775807LL);
  Int big = int_of(9223372036854775807LL) + 1;
  CHECK_THROWS_AS(to_int64(big), std::exception);
}

TEST_CASE("value lattice orders infinity above every rational") {
  Value inf = Value::infinity();
  Value half(rat_of(1, 2));
  CHECK(inf.is_infinite());
  CHECK(half < inf);
  CHECK(inf > half);
  CHECK(inf == Value::infinity());
  CHECK(inf != half);
  CHECK(half <= Value(rat_of(1, 2)));
  CHECK(half.finite() == rat_of(1, 2));
  CHECK_THROWS_AS(inf.finite(), std::exception);
  CHECK(inf.str() == "+inf");
  CHECK(half.str() == "1/2");
}
