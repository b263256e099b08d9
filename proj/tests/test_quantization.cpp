#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ssmlab/constructors.hpp"
#include "ssmlab/quantization.hpp"
#include "ssmlab/targets.hpp"

using namespace ssmlab;

namespace {

struct Setup {
    DiagonalSsm ssm;
    ScalarSeries target;
};

Setup vandermonde_setup(std::uint64_t target_seed, std::size_t t) {
    const auto target = generate(TargetSpec::random_uniform(t, 1.0, target_seed));
    auto construction = construct_real_vandermonde(target);
    return {construction.ssm, target};
}

}  // namespace

TEST_CASE("zero perturbation width is perfectly robust") {
    const auto setup = vandermonde_setup(1, 6);
    QuantizationSpec spec;
    spec.q = 0.0;
    spec.epsilon = 0.5;
    spec.target = setup.target;
    spec.samples = 1000;
    spec.seed = 3;
    const auto report = estimate_robustness(setup.ssm, spec);
    CHECK(report.empirical_robustness == 1.0);
    CHECK(report.theoretical_ceiling == 1.0);
}

TEST_CASE("tiny perturbations of a comfortable approximation stay robust") {
    const auto setup = vandermonde_setup(2, 6);
    QuantizationSpec spec;
    spec.q = 1e-9;
    spec.epsilon = 0.5;
    spec.target = setup.target;
    spec.samples = 2000;
    spec.seed = 4;
    const auto report = estimate_robustness(setup.ssm, spec);
    CHECK(report.empirical_robustness == 1.0);
    CHECK(report.theoretical_ceiling == 1.0);  // vacuous regime: 2 eps >= q max |c b|
}

TEST_CASE("wilson half width matches the closed form at the boundary") {
    const auto setup = vandermonde_setup(5, 6);
    QuantizationSpec spec;
    spec.q = 0.0;
    spec.epsilon = 0.5;
    spec.target = setup.target;
    spec.samples = 100000;
    spec.seed = 6;
    const auto report = estimate_robustness(setup.ssm, spec);
    // phat = 1, n = 1e5, z = 1.96.
    CHECK(report.wilson_halfwidth ==
          doctest::Approx(1.9207262133817868e-05).epsilon(1e-9));
}

TEST_CASE("ceiling follows the closed form in the informative regime") {
    const auto setup = vandermonde_setup(7, 8);
    double max_cb = 0.0;
    for (std::size_t j = 0; j < setup.ssm.dim(); ++j) {
        max_cb = std::max(
            max_cb, std::abs((setup.ssm.c[j] * setup.ssm.b[j]).real()));
    }
    QuantizationSpec spec;
    spec.q = 1.0;
    spec.epsilon = 0.25;
    spec.target = setup.target;
    spec.samples = 100;
    spec.seed = 8;
    const auto report = estimate_robustness(setup.ssm, spec);
    const double expected = std::min(1.0, 2.0 * spec.epsilon / (spec.q * max_cb));
    CHECK(report.theoretical_ceiling == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("estimates are deterministic and order-independent in the seed") {
    const auto setup = vandermonde_setup(9, 6);
    QuantizationSpec spec;
    spec.q = 0.5;
    spec.epsilon = 0.3;
    spec.target = setup.target;
    spec.samples = 20000;
    spec.seed = 10;
    const auto first = estimate_robustness(setup.ssm, spec);
    const auto second = estimate_robustness(setup.ssm, spec);
    CHECK(first.empirical_robustness == second.empirical_robustness);
    CHECK(first.wilson_halfwidth == second.wilson_halfwidth);
}

TEST_CASE("robustness decays as the perturbation widens") {
    const auto setup = vandermonde_setup(11, 8);
    auto run = [&](double q) {
        QuantizationSpec spec;
        spec.q = q;
        spec.epsilon = 0.4;
        spec.target = setup.target;
        spec.samples = 20000;
        spec.seed = 12;
        return estimate_robustness(setup.ssm, spec);
    };
    const auto narrow = run(0.05);
    const auto wide = run(1.5);
    CHECK(narrow.empirical_robustness + 2.0 * (narrow.wilson_halfwidth +
                                               wide.wilson_halfwidth) >=
          wide.empirical_robustness);
}

TEST_CASE("estimator validates its inputs") {
    const auto setup = vandermonde_setup(13, 6);
    QuantizationSpec good;
    good.q = 0.5;
    good.epsilon = 0.4;
    good.target = setup.target;
    good.samples = 10;
    good.seed = 1;

    auto spec = good;
    spec.q = -0.1;
    CHECK_THROWS_AS(estimate_robustness(setup.ssm, spec), std::invalid_argument);
    spec = good;
    spec.q = 2.5;
    CHECK_THROWS_AS(estimate_robustness(setup.ssm, spec), std::invalid_argument);
    spec = good;
    spec.epsilon = 0.0;
    CHECK_THROWS_AS(estimate_robustness(setup.ssm, spec), std::invalid_argument);
    spec = good;
    spec.samples = 0;
    CHECK_THROWS_AS(estimate_robustness(setup.ssm, spec), std::invalid_argument);

    const auto complex_ssm =
        DiagonalSsm::complex({{0.5, 0.1}}, {{1, 0}}, {{1, 0}});
    spec = good;
    spec.target = ScalarSeries({1.0});
    CHECK_THROWS_AS(estimate_robustness(complex_ssm, spec), std::invalid_argument);
}

TEST_CASE("estimator rejects a base system that misses the target") {
    const auto ssm = DiagonalSsm::real({0.5}, {0.0}, {1.0});  // zero response
    QuantizationSpec spec;
    spec.q = 0.5;
    spec.epsilon = 0.1;
    spec.target = generate(TargetSpec::delay(6, 2));  // l1 distance 1 > 0.1
    spec.samples = 10;
    spec.seed = 1;
    CHECK_THROWS_AS(estimate_robustness(ssm, spec), std::invalid_argument);
}
