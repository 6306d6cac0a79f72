#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include "vwp/numeric_core.hpp"
TEST_CASE("smoke") {
  CHECK(vwp::pochhammer(vwp::Rational(1), 4) == vwp::Rational(24));
}
