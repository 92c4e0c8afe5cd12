#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"
#include "partage/ratio.hpp"

using partage::BigInt;
using partage::Errc;
using partage::OpCount;
using partage::Ratio;
using partage::RatioOps;

TEST_CASE("ratios are stored reduced with a positive denominator") {
  const Ratio half(2, 4);
  CHECK(half.numerator() == 1);
  CHECK(half.denominator() == 2);
  CHECK(half == Ratio(1, 2));

  const Ratio negative(2, -4);
  CHECK(negative.numerator() == -1);
  CHECK(negative.denominator() == 2);

  CHECK(Ratio(0, 7) == Ratio(0));
  CHECK(Ratio(0, 7).denominator() == 1);
}

TEST_CASE("arithmetic is exact") {
  CHECK(Ratio(1, 3) + Ratio(1, 6) == Ratio(1, 2));
  CHECK(Ratio(1) - Ratio(97, 270) == Ratio(173, 270));
  CHECK(Ratio(2, 3) * Ratio(3, 2) == Ratio(1));
  CHECK(Ratio(1, 3) / Ratio(1, 6) == Ratio(2));
  CHECK(-Ratio(1, 2) == Ratio(-1, 2));

  // big intermediates stay exact: 1/50! * 50! == 1
  BigInt factorial = 1;
  for (int i = 2; i <= 50; ++i) factorial *= i;
  CHECK(Ratio(BigInt(1), factorial) * Ratio(factorial) == Ratio(1));
}

TEST_CASE("division by zero is an error, never a sentinel") {
  const auto divide = [] { return Ratio(1) / Ratio(0); };
  CHECK_THROWS_MATCHES(divide(), partage::InternalError,
                       Catch::Matchers::Predicate<partage::InternalError>(
                           [](const auto& e) { return e.code() == Errc::DivisionByZero; }));
  CHECK_THROWS_AS(Ratio(1, 0), partage::ValidationError);
}

TEST_CASE("round trip property: (a/b)*b == a") {
  std::mt19937_64 rng(20260810);
  std::uniform_int_distribution<long long> numerators(-1'000'000'000LL, 1'000'000'000LL);
  std::uniform_int_distribution<long long> denominators(1, 1'000'000'000LL);
  for (int i = 0; i < 300; ++i) {
    const Ratio a(numerators(rng), denominators(rng));
    Ratio b(numerators(rng), denominators(rng));
    if (b.is_zero()) b = Ratio(1, 7);
    CHECK((a / b) * b == a);
    CHECK((a * b) / b == a);
    CHECK(a - a == Ratio(0));
  }
}

TEST_CASE("parse accepts p, p/q and signs on p only") {
  CHECK(R("97/270") == Ratio(97, 270));
  CHECK(R("-3/9") == Ratio(-1, 3));
  CHECK(R("+7") == Ratio(7));
  CHECK(R("0") == Ratio(0));
  CHECK(R("011/2") == Ratio(11, 2));  // decimal digits, not octal
  CHECK(R("000") == Ratio(0));

  for (const char* bad : {"", "/", "1/", "/2", "1/0", "1/-2", "2/+3", "a", "1.5", "1 / 2",
                          "1//2", "-", "+", "½"}) {
    INFO("input: '" << bad << "'");
    CHECK_THROWS_MATCHES(Ratio::parse(bad), partage::ValidationError,
                         Catch::Matchers::Predicate<partage::ValidationError>(
                             [](const auto& e) { return e.code() == Errc::MalformedRatio; }));
  }
}

TEST_CASE("text form round trips and is canonical") {
  CHECK(Ratio(97, 270).str() == "97/270");
  CHECK(Ratio(4, 8).str() == "1/2");
  CHECK(Ratio(-1, 2).str() == "-1/2");
  CHECK(Ratio(5).str() == "5");
  CHECK(Ratio(0).str() == "0");
  CHECK(Ratio(7, 7).str() == "1");

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> ints(-100000, 100000);
  for (int i = 0; i < 200; ++i) {
    const Ratio r(ints(rng), ints(rng) / 2 * 2 + 1);  // odd, never zero
    CHECK(Ratio::parse(r.str()) == r);
  }
}

TEST_CASE("decimal rendering rounds half-even") {
  CHECK(Ratio(97, 270).decimal(6) == "0.359259");
  CHECK(Ratio(1, 3).decimal(4) == "0.3333");
  CHECK(Ratio(2, 3).decimal(4) == "0.6667");
  CHECK(Ratio(1).decimal(3) == "1.000");
  CHECK(Ratio(19, 27).decimal(6) == "0.703704");

  // ties go to the even digit
  CHECK(Ratio(1, 2).decimal(0) == "0");
  CHECK(Ratio(3, 2).decimal(0) == "2");
  CHECK(Ratio(5, 2).decimal(0) == "2");
  CHECK(Ratio(7, 2).decimal(0) == "4");
  CHECK(Ratio(1, 8).decimal(2) == "0.12");
  CHECK(Ratio(3, 8).decimal(2) == "0.38");

  CHECK(Ratio(-97, 270).decimal(2) == "-0.36");
  CHECK(Ratio(9999, 10000).decimal(2) == "1.00");  // carry across the point
}

TEST_CASE("op counting is explicit and per-counter") {
  OpCount count;
  const RatioOps ops(&count);
  const Ratio a(1, 3);
  const Ratio b(1, 6);
  (void)ops.add(a, b);
  (void)ops.sub(a, b);
  (void)ops.mul(a, b);
  (void)ops.div(a, b);
  CHECK(count == OpCount{2, 1, 1});

  count.reset();
  CHECK(count == OpCount{});

  const RatioOps uncounted;
  (void)uncounted.mul(a, b);
  CHECK(count == OpCount{});

  const OpCount before{5, 3, 2};
  const OpCount after{9, 3, 4};
  CHECK(after - before == OpCount{4, 0, 2});
}

TEST_CASE("pow is exact and counts its multiplications") {
  CHECK(partage::pow(Ratio(2, 3), 0) == Ratio(1));
  CHECK(partage::pow(Ratio(2, 3), 1) == Ratio(2, 3));
  CHECK(partage::pow(Ratio(2, 3), 5) == Ratio(32, 243));
  CHECK(partage::pow(Ratio(-1, 2), 3) == Ratio(-1, 8));

  OpCount count;
  const RatioOps ops(&count);
  (void)partage::pow(Ratio(2, 3), 8, ops);
  CHECK(count.multiplications > 0);
  CHECK(count.additions == 0);
  CHECK(count.divisions == 0);
}
