#include "doctest.h"

#include "basics.hpp"
#include "support/checks.hpp"

#include <random>

using namespace clo;
using clo::testing::thrown_kind;

TEST_CASE("binomial and falling factorial") {
  CHECK(binomial(6, 3) == 20);
  CHECK(binomial(10, 5) == 252);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(4, 7) == 0);
  CHECK(binomial(100, 3) == 161700);
  CHECK(falling_factorial(4, 2) == 12);
  CHECK(falling_factorial(2, 2) == 2);
  CHECK(falling_factorial(3, 0) == 1);
  CHECK(falling_factorial(2, 3) == 0);
  CHECK(integer_pow(BigInt(3), 0) == 1);
  CHECK(integer_pow(BigInt(2), 70) == BigInt("1180591620717411303424"));
}

TEST_CASE("partition counts") {
  // Stirling numbers S(4,2) = 7, S(6,2..5) = 31 + 90 + 65 + 15.
  CHECK(partition_count(4, 2, 2) == 7);
  CHECK(partition_count(6, 2, 2) == 31);
  CHECK(partition_count(6, 2, 4) == 186);
  CHECK(partition_count(5, 1, 5) == 52);  // Bell number
  CHECK(partition_count(4, 5, 6) == 0);
}

TEST_CASE("rationals render and parse as num/den") {
  CHECK(fraction_string(make_rational(2, 14)) == "1/7");
  CHECK(fraction_string(make_rational(-2, 4)) == "-1/2");
  CHECK(fraction_string(make_rational(2, -4)) == "-1/2");
  CHECK(fraction_string(Rational(3)) == "3/1");
  CHECK(parse_fraction("729/1093") == make_rational(729, 1093));
  CHECK(parse_fraction("0.25") == make_rational(1, 4));
  CHECK(parse_fraction("-3") == Rational(-3));
  CHECK(thrown_kind([] { parse_fraction("x/y"); }) == ErrorKind::schema);
  CHECK(thrown_kind([] { make_rational(1, 0); }) == ErrorKind::invalid_argument);
}

TEST_CASE("bounded draw stays in range and hits every value") {
  std::mt19937_64 rng(42);
  std::vector<int> seen(7, 0);
  for (int i = 0; i < 2000; ++i) ++seen[bounded_draw(rng, 7)];
  for (int c : seen) CHECK(c > 0);
  CHECK(thrown_kind([&] { bounded_draw(rng, 0); }) == ErrorKind::invalid_argument);
}

TEST_CASE("mix64 depends on order and content") {
  CHECK(mix64({1, 2}) != mix64({2, 1}));
  CHECK(mix64({1, 2}) != mix64({1, 3}));
  CHECK(mix64({1, 2}) == mix64({1, 2}));
}

TEST_CASE("dynamic bitset operations") {
  DynBitset a(130), b(130);
  a.set(0);
  a.set(128);
  b.set(128);
  CHECK(a.count() == 2);
  CHECK(b.subset_of(a));
  CHECK(!a.subset_of(b));
  CHECK(a.intersects(b));
  b.set(128, false);
  CHECK(!a.intersects(b));
  CHECK(!b.any());
  DynBitset c = a;
  c |= b;
  CHECK(c == a);
  c &= b;
  CHECK(c.count() == 0);
}
