#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "thetasum/theta.hpp"
#include "thetasum/verify.hpp"

using namespace thetasum;
using namespace thetasum::verify;

TEST_SUITE("verify") {

TEST_CASE("oracle spot values") {
    CHECK(std::abs(oracle_eval(0.0, 1.0) - 1.772637204826652153) <= 2e-15);
    CHECK(oracle_eval(0.0, 0.0) == 1.0);
    CHECK(oracle_eval(0.5, 0.0) == 0.0);
    CHECK(std::abs(oracle_eval(0.5, 0.45) - 0.58195080840574891) <= 1e-12);
    CHECK(std::abs(oracle_eval(0.25, 0.7) - 1.240717685781822618) <= 1e-12);
    CHECK(std::abs(oracle_eval(0.0, 2.0) - 3.5449077018110321053) <= 1e-12);
    CHECK(std::abs(oracle_deficit(0.4) - 0.70512063206197514) <= 1e-12);
    CHECK(std::abs(oracle_diff0_half(0.48) - 0.35019444820347574) <= 1e-12);
}

TEST_CASE("oracle validates its inputs") {
    CHECK_THROWS_AS(oracle_eval(0.7, 1.0), std::domain_error);
    CHECK_THROWS_AS(oracle_eval(0.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(oracle_transformed(0.0, 0.0), std::domain_error);
}

TEST_CASE("oracle representations agree where both run") {
    for (const double s : {2.1, 3.0, 5.0, 8.0, 12.0, 20.0})
        for (const double a : {0.0, 0.25, 0.5}) {
            const double d = oracle_direct(a, s);
            const double t = oracle_transformed(a, s);
            CHECK(std::abs(d - t) <= 1e-13 * (1.0 + std::abs(d)));
        }
}

TEST_CASE("functional equation check") {
    const CheckReport rep =
        check_functional_equation(GridSpec::log_count(0.05, 20.0, 60), 1e-12);
    CHECK(rep.passed);
    CHECK(rep.worst_residual <= 1e-12);
    CHECK(rep.threshold == 1e-12);
}

TEST_CASE("poisson identity check") {
    const CheckReport rep =
        check_poisson_identity(0.25, GridSpec::log_count(0.1, 10.0, 40), 1e-12);
    CHECK(rep.passed);

    const EvalReport d = eval_direct({0.5, 0.5, 1e-14});
    const EvalReport t = eval_transformed({0.5, 0.5, 1e-14});
    CHECK(std::abs(d.value - t.value) <=
          1e-12 + d.truncation_bound + t.truncation_bound);
}

TEST_CASE("bounds check is strict across (0, 10]") {
    const CheckReport rep = check_bounds(GridSpec::linear_step(0.01, 10.0, 0.01));
    CHECK(rep.passed);
    CHECK(rep.worst_residual == 0.0);

    const double margin_at_1 = eval_auto({0.0, 1.0, 1e-14}).value - poisson_integral(1.0);
    CHECK(margin_at_1 == doctest::Approx(1.8335392113612249e-4).epsilon(1e-9));
    const double margin_small = eval_auto({0.0, 0.01, 1e-14}).value - poisson_integral(0.01);
    CHECK(margin_small == doctest::Approx(1.0 - 0.017724538509055160).epsilon(1e-12));
}

TEST_CASE("limit checks at the proxy points") {
    const CheckReport rep = check_limits();
    CHECK(rep.passed);
    CHECK(rep.threshold == 1.0);

    CHECK(std::abs(deficit(0.4, 1e-14) / (kSqrtPi * 0.4) - 1.0) ==
          doctest::Approx(0.0054457106150589).epsilon(1e-6));
    CHECK(std::abs(deficit(0.8, 1e-14) - 1.0) ==
          doctest::Approx(0.0051221641758958).epsilon(1e-6));
    CHECK(std::abs(eval_auto({0.0, 0.05, 1e-14}).value - 1.0) == 0.0);
}

TEST_CASE("full default suite") {
    const auto reports = run_all_checks(1e-12);
    REQUIRE(reports.size() == 7);
    for (const auto& r : reports) {
        CAPTURE(r.name);
        CHECK(r.passed);
        CHECK(r.passed == (r.worst_residual <= r.threshold));
    }
}

TEST_CASE("unattainable tolerance fails the suite") {
    const auto reports = run_all_checks(1e-30);
    bool any_failed = false;
    for (const auto& r : reports) {
        CHECK(r.passed == (r.worst_residual <= r.threshold));
        any_failed = any_failed || !r.passed;
    }
    CHECK(any_failed);
}

}  // TEST_SUITE
