#include <doctest.h>

#include "bubbledyn/complex_parse.hpp"

using namespace bubbledyn;

TEST_CASE("complex literals") {
  CHECK(parse_complex("0.16+0i") == Complex{0.16, 0.0});
  CHECK(parse_complex("-0-1i") == Complex{0.0, -1.0});
  CHECK(parse_complex("0.25") == Complex{0.25, 0.0});
  CHECK(parse_complex("-1i") == Complex{0.0, -1.0});
  CHECK(parse_complex("i") == Complex{0.0, 1.0});
  CHECK(parse_complex("-i") == Complex{0.0, -1.0});
  CHECK(parse_complex("2i") == Complex{0.0, 2.0});
  CHECK(parse_complex("1-i") == Complex{1.0, -1.0});
  CHECK(parse_complex("1e-3+2.5e1i") == Complex{1e-3, 25.0});
  CHECK(parse_complex(".5-.25i") == Complex{0.5, -0.25});
  CHECK(parse_complex("  0.2722+0i ") == Complex{0.2722, 0.0});
}

TEST_CASE("malformed complex literals") {
  for (const char* bad : {"", "abc", "1+", "1+2", "1 + 2i", "1+2ii", "23i4", "nan", "inf", "1e400"}) {
    CAPTURE(bad);
    CHECK_FALSE(parse_complex(bad));
  }
}

TEST_CASE("scalar parsing") {
  CHECK(parse_double("0.16") == 0.16);
  CHECK(parse_double("-1e-2") == -0.01);
  CHECK(parse_double("+3") == 3.0);
  CHECK_FALSE(parse_double("1.5x"));
  CHECK_FALSE(parse_double(""));
  CHECK_FALSE(parse_double("nan"));
  CHECK(parse_int("42") == 42);
  CHECK_FALSE(parse_int("4.2"));
  CHECK_FALSE(parse_int("99999999999"));
}
