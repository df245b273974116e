#include <doctest.h>

#include "cbd/error.hpp"
#include "cbd/label_set.hpp"
#include "cbd/rational.hpp"

using namespace cbd;

TEST_CASE("rational strings parse exactly") {
  CHECK(parse_rational("7/10") == ratio(7, 10));
  CHECK(parse_rational("0.25") == ratio(1, 4));
  CHECK(parse_rational(".5") == ratio(1, 2));
  CHECK(parse_rational("2/4") == ratio(1, 2));
  CHECK(parse_rational("-1/2") == ratio(-1, 2));
  CHECK(parse_rational("1e-3") == ratio(1, 1000));
  CHECK(parse_rational("0.1") + parse_rational("0.2") == parse_rational("0.3"));
  CHECK(parse_rational(" 3 ") == 3);
}

TEST_CASE("malformed rationals are ParseError") {
  for (const char* bad : {"", "1/0", "abc", "1/2/3", "0.1.2", "1e", "--1", "1/-2"}) {
    CAPTURE(bad);
    try {
      parse_rational(bad);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
    }
  }
}

TEST_CASE("output is canonical and reduced") {
  CHECK(to_string(parse_rational("0.50")) == "1/2");
  CHECK(to_string(ratio(6, 3)) == "2");
  CHECK(to_string(Rational(0)) == "0");
  CHECK(to_string(parse_rational(to_string(ratio(3, 7)))) == "3/7");
}

TEST_CASE("label sets") {
  auto s = LabelSet::of({0, 2, 5});
  CHECK(s.size() == 3);
  CHECK(s.contains(2));
  CHECK_FALSE(s.contains(1));
  CHECK(s.lowest() == 0);
  CHECK(s.indices() == std::vector<std::size_t>{0, 2, 5});
  CHECK((s - LabelSet::single(0)) == LabelSet::of({2, 5}));
  CHECK(LabelSet::full(64).size() == 64);
  CHECK(LabelSet::of({2}).subset_of(s));
}
