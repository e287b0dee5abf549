#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "expr.hpp"
#include "floq/errors.hpp"

using floq::cli::parse_scalar;
using floq::cli::split_params;

TEST_SUITE("cli") {
  TEST_CASE("symbolic tokens hit the intended doubles") {
    CHECK(parse_scalar("sqrt(12)") == std::sqrt(12.0));
    CHECK(parse_scalar("pi/2") == std::numbers::pi / 2);
    CHECK(parse_scalar("4*pi") == 4 * std::numbers::pi);
    CHECK(parse_scalar("pi") == std::numbers::pi);
    CHECK(parse_scalar(" -3 ") == -3.0);
    CHECK(parse_scalar("2*(1+0.5)") == 3.0);
    CHECK(parse_scalar("--2") == 2.0);
    CHECK(std::isinf(parse_scalar("inf")));
  }

  TEST_CASE("malformed expressions are rejected") {
    for (const char* bad : {"", "sqrt", "sqrt(2", "1+", "2**3", "pie", "1 2", "(1))"}) {
      CAPTURE(bad);
      CHECK_THROWS_AS(parse_scalar(bad), floq::InvalidInput);
    }
  }

  TEST_CASE("parameter lists split on top-level commas") {
    const auto p = split_params("V=sqrt(12),tau=pi/2");
    REQUIRE(p.size() == 2);
    CHECK(p.at("V") == "sqrt(12)");
    CHECK(p.at("tau") == "pi/2");
    CHECK(split_params("V=sqrt((1,2))").at("V") == "sqrt((1,2))");
    CHECK_THROWS_AS(split_params("V=1,V=2"), floq::InvalidInput);
    CHECK_THROWS_AS(split_params("=1"), floq::InvalidInput);
    CHECK_THROWS_AS(split_params("V"), floq::InvalidInput);
  }
}
