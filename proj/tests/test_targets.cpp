#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "ssmlab/targets.hpp"

using namespace ssmlab;

TEST_CASE("delay target is a unit spike at the requested position") {
    const auto series = generate(TargetSpec::delay(8, 3));
    REQUIRE(series.length() == 8);
    for (std::size_t m = 0; m < 8; ++m) {
        CHECK(series[m] == (m == 3 ? 1.0 : 0.0));
    }
    CHECK(l1_norm(series) == 1.0);
}

TEST_CASE("delay target defaults to the middle position") {
    CHECK(TargetSpec::delay(32).resolved_delay() == 15);
    CHECK(TargetSpec::delay(33).resolved_delay() == 16);
    CHECK(TargetSpec::delay(1).resolved_delay() == 0);
    const auto series = generate(TargetSpec::delay(32));
    CHECK(series[15] == 1.0);
    CHECK(l1_norm(series) == 1.0);
}

TEST_CASE("delay target beyond the horizon is flagged degenerate and all zero") {
    const auto spec = TargetSpec::delay(4, 7);
    CHECK(degenerate_delay(spec));
    CHECK_FALSE(degenerate_delay(TargetSpec::delay(4, 3)));
    const auto series = generate(spec);
    CHECK(l1_norm(series) == 0.0);
}

TEST_CASE("oscillatory target repeats 1, 0, -1, 0") {
    const auto series = generate(TargetSpec::oscillatory(10));
    const double expected[10] = {1, 0, -1, 0, 1, 0, -1, 0, 1, 0};
    for (std::size_t m = 0; m < 10; ++m) CHECK(series[m] == expected[m]);
}

TEST_CASE("alternating target flips sign every entry") {
    const auto series = generate(TargetSpec::alternating(5));
    const double expected[5] = {1, -1, 1, -1, 1};
    for (std::size_t m = 0; m < 5; ++m) CHECK(series[m] == expected[m]);
}

TEST_CASE("random target is deterministic in the seed and bounded by alpha") {
    const auto a = generate(TargetSpec::random_uniform(64, 0.5, 9));
    const auto b = generate(TargetSpec::random_uniform(64, 0.5, 9));
    const auto c = generate(TargetSpec::random_uniform(64, 0.5, 10));
    REQUIRE(a.length() == 64);
    bool identical = true;
    bool differs = false;
    for (std::size_t m = 0; m < 64; ++m) {
        identical = identical && (a[m] == b[m]);
        differs = differs || (a[m] != c[m]);
        CHECK(a[m] >= -0.5);
        CHECK(a[m] < 0.5);
    }
    CHECK(identical);
    CHECK(differs);
}

TEST_CASE("random target requires a positive scale") {
    CHECK_THROWS_AS(generate(TargetSpec::random_uniform(4, 0.0, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate(TargetSpec::random_uniform(4, -1.0, 1)),
                    std::invalid_argument);
}

TEST_CASE("custom target passes values through and validates the horizon") {
    const auto series = generate(TargetSpec::custom({0.5, -0.25, 0.0}));
    REQUIRE(series.length() == 3);
    CHECK(series[0] == 0.5);
    CHECK(series[1] == -0.25);
    CHECK(series[2] == 0.0);

    TargetSpec broken = TargetSpec::custom({1.0, 2.0});
    broken.horizon = 5;
    CHECK_THROWS_AS(generate(broken), std::invalid_argument);
}

TEST_CASE("normalized error scales by the target l1 norm") {
    const ScalarSeries target({1.0, 0.0, 0.0, 0.0});
    const ScalarSeries candidate({0.5, 0.25, 0.0, 0.0});
    CHECK(normalized_error(candidate, target) == doctest::Approx(0.75));
    CHECK(normalized_error(ScalarSeries::zeros(4), target) == doctest::Approx(1.0));
    CHECK(normalized_error(target, target) == 0.0);
}

TEST_CASE("normalized error rejects a zero target and length mismatches") {
    const ScalarSeries target({1.0, 2.0});
    CHECK_THROWS_AS(normalized_error(ScalarSeries({1.0}), target),
                    std::invalid_argument);
    CHECK_THROWS_AS(normalized_error(ScalarSeries::zeros(2), ScalarSeries::zeros(2)),
                    std::invalid_argument);
}

TEST_CASE("target kinds round-trip through their names") {
    for (const TargetKind kind :
         {TargetKind::Delay, TargetKind::RandomUniform, TargetKind::Oscillatory,
          TargetKind::Alternating, TargetKind::Custom}) {
        CHECK(target_kind_from_string(to_string(kind)) == kind);
    }
    CHECK_THROWS_AS(target_kind_from_string("nope"), std::invalid_argument);
}

TEST_CASE("series construction rejects non-finite entries") {
    CHECK_THROWS_AS(ScalarSeries({1.0, std::nan("")}), std::invalid_argument);
}
