#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "partage/multi_mistress.hpp"
#include "partage/oracle.hpp"

using namespace partage;

namespace {

FamilyComposition two(Count l, Count n1, const char* x1, Count n2, const char* x2) {
  return validate(l, {Mistress{n1, R(x1)}, Mistress{n2, R(x2)}});
}

}  // namespace

TEST_CASE("multisum values") {
  CHECK(share_multisum(two(1, 1, "1/2", 1, "1/3")) == R("23/36"));
  CHECK(share_multisum(validate(3, {})) == R("1/3"));
  CHECK(share_multisum(validate(2, {Mistress{3, R("1/3")}})) ==
        share_series(single_line(2, 3, R("1/3"))));
}

TEST_CASE("recursive values") {
  CHECK(share_recursive(two(1, 1, "1/2", 1, "1/3")) == R("23/36"));
  CHECK(share_recursive(validate(1, {Mistress{1, R("1/3")}})) == R("5/6"));
  CHECK(share_recursive(two(4, 2, "0", 3, "0")) == R("1/4"));
}

TEST_CASE("breakdown values and conservation") {
  const FamilyComposition f = two(1, 1, "1/2", 1, "1/3");
  const ShareBreakdown b = breakdown(f, Method::Recursive);
  CHECK(b.legitimate_share == R("23/36"));
  REQUIRE(b.illegitimate_shares.size() == 2);
  CHECK(*b.illegitimate_shares[0] == R("2/9"));
  CHECK(*b.illegitimate_shares[1] == R("5/36"));
  CHECK(b.total_distributed == Ratio(1));

  const ShareBreakdown single = breakdown(validate(1, {Mistress{2, R("1/3")}}));
  CHECK(single.legitimate_share == R("19/27"));
  CHECK(*single.illegitimate_shares[0] == R("4/27"));
  CHECK(single.total_distributed == Ratio(1));

  const ShareBreakdown childless = breakdown(validate(3, {}));
  CHECK(childless.legitimate_share == R("1/3"));
  CHECK(childless.illegitimate_shares.empty());
  CHECK(childless.total_distributed == Ratio(1));
}

TEST_CASE("empty groups are no-ops and get no share") {
  const FamilyComposition f = validate(2, {Mistress{0, R("1/2")}, Mistress{3, R("1/3")}});
  CHECK(share_recursive(f) == share_recursive(validate(2, {Mistress{3, R("1/3")}})));
  CHECK(share_multisum(f) == share_multisum(validate(2, {Mistress{3, R("1/3")}})));

  const ShareBreakdown b = breakdown(f);
  CHECK_FALSE(b.illegitimate_shares[0].has_value());
  CHECK(b.illegitimate_shares[1].has_value());
  CHECK(b.total_distributed == Ratio(1));
}

TEST_CASE("multisum equals recursion equals oracle on a two-mistress grid") {
  const std::vector<Ratio> fractions = {R("0"), R("1/4"), R("1/2"), R("1")};
  for (Count l : {Count(1), Count(3), Count(6)}) {
    for (Count n1 = 0; n1 <= 4; ++n1) {
      for (Count n2 = 0; n2 <= 4; ++n2) {
        for (const Ratio& x1 : fractions) {
          for (const Ratio& x2 : fractions) {
            const FamilyComposition f{l, {Mistress{n1, x1}, Mistress{n2, x2}}};
            const Ratio recursive = share_recursive(f);
            INFO("l=" << l << " n1=" << n1 << " n2=" << n2 << " x1=" << x1 << " x2=" << x2);
            CHECK(share_multisum(f) == recursive);
            CHECK(oracle_share(f) == recursive);
            CHECK(breakdown(f).total_distributed == Ratio(1));
          }
        }
      }
    }
  }
}

TEST_CASE("three mistresses, spot-checked against the oracle") {
  const FamilyComposition f = validate(
      2, {Mistress{2, R("1/4")}, Mistress{3, R("1/2")}, Mistress{1, R("2/5")}});
  const Ratio recursive = share_recursive(f);
  CHECK(share_multisum(f) == recursive);
  CHECK(oracle_share(f) == recursive);
  CHECK(breakdown(f).total_distributed == Ratio(1));
  CHECK(breakdown(f, Method::Multisum).total_distributed == Ratio(1));
  CHECK(breakdown(f, Method::Oracle).legitimate_share == recursive);
}

TEST_CASE("m = 1 reduces to every single-line strategy") {
  for (Count l = 1; l <= 6; ++l) {
    for (Count n = 0; n <= 4; ++n) {
      for (const Ratio& x : fraction_grid()) {
        const FamilyComposition f{l, {Mistress{n, x}}};
        const SingleLine s{l, n, x};
        const Ratio reference = share_recursive(f);
        INFO("l=" << l << " n=" << n << " x=" << x);
        CHECK(share_multisum(f) == reference);
        CHECK(share_backward(s) == reference);
        CHECK(share_series(s) == reference);
        CHECK(share_closed_form(s) == reference);
        CHECK(share_incremental(s) == reference);
      }
    }
  }
}

TEST_CASE("groups with the same fraction merge") {
  for (Count l = 1; l <= 4; ++l) {
    for (Count n1 = 0; n1 <= 3; ++n1) {
      for (Count n2 = 0; n2 <= 3; ++n2) {
        for (const char* x : {"1/4", "1/3", "1/2", "1"}) {
          const FamilyComposition split = two(l, n1, x, n2, x);
          const FamilyComposition merged = validate(l, {Mistress{n1 + n2, R(x)}});
          INFO("l=" << l << " n1=" << n1 << " n2=" << n2 << " x=" << x);
          CHECK(share_recursive(split) == share_recursive(merged));
          CHECK(share_multisum(split) == share_multisum(merged));
        }
      }
    }
  }
}

TEST_CASE("mistress order never matters") {
  std::mt19937_64 rng(42);
  const FamilyComposition f = validate(
      2, {Mistress{1, R("1/4")}, Mistress{3, R("1/2")}, Mistress{2, R("2/5")}});
  const ShareBreakdown reference = breakdown(f);

  std::vector<std::size_t> order = {0, 1, 2};
  for (int trial = 0; trial < 6; ++trial) {
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Mistress> shuffled;
    for (std::size_t i : order) shuffled.push_back(f.mistresses[i]);
    const FamilyComposition permuted = validate(f.legitimate, shuffled);

    CHECK(share_recursive(permuted) == reference.legitimate_share);
    CHECK(share_multisum(permuted) == reference.legitimate_share);
    const ShareBreakdown b = breakdown(permuted);
    for (std::size_t i = 0; i < order.size(); ++i) {
      CHECK(*b.illegitimate_shares[i] == *reference.illegitimate_shares[order[i]]);
    }
  }
}

TEST_CASE("multisum accumulates exactly prod(n_i + 1) summands") {
  const auto additions = [](const FamilyComposition& f) {
    OpCount count;
    (void)share_multisum(f, &count);
    return count.additions;
  };
  CHECK(additions(validate(3, {})) == 1);
  CHECK(additions(validate(2, {Mistress{3, R("1/3")}})) == 4);
  CHECK(additions(two(1, 1, "1/2", 1, "1/3")) == 4);
  CHECK(additions(two(1, 4, "1/2", 2, "1/3")) == 15);
  CHECK(additions(validate(2, {Mistress{2, R("1/4")}, Mistress{3, R("1/2")},
                               Mistress{1, R("2/5")}})) == 24);
  CHECK(additions(validate(2, {Mistress{0, R("1/4")}})) == 1);
}

TEST_CASE("legitimate_share dispatches every strategy") {
  const FamilyComposition multi = two(1, 1, "1/2", 1, "1/3");
  CHECK(legitimate_share(multi, Method::Multisum) == R("23/36"));
  CHECK(legitimate_share(multi, Method::Recursive) == R("23/36"));
  CHECK(legitimate_share(multi, Method::Oracle) == R("23/36"));
  // pooled model on the multi estate: 1/(1 + 1/2 + 1/3) = 6/11
  CHECK(legitimate_share(multi, Method::Naive) == R("6/11"));

  for (Method m : {Method::Series, Method::Backward, Method::ClosedForm, Method::Incremental}) {
    CHECK_THROWS_MATCHES(legitimate_share(multi, m), PreconditionError,
                         Catch::Matchers::Predicate<PreconditionError>([](const auto& e) {
                           return e.code() == Errc::MethodNotApplicable;
                         }));
  }

  const FamilyComposition single = validate(2, {Mistress{3, R("1/3")}});
  for (Method m : {Method::Series, Method::Backward, Method::ClosedForm, Method::Incremental,
                   Method::Multisum, Method::Recursive, Method::Oracle}) {
    CHECK(legitimate_share(single, m) == R("97/270"));
  }
}

TEST_CASE("naive breakdown conserves on its own terms") {
  const FamilyComposition f = two(1, 1, "1/2", 1, "1/3");
  const ShareBreakdown b = breakdown(f, Method::Naive);
  CHECK(b.legitimate_share == R("6/11"));
  CHECK(*b.illegitimate_shares[0] == R("3/11"));
  CHECK(*b.illegitimate_shares[1] == R("2/11"));
  CHECK(b.total_distributed == Ratio(1));
}
