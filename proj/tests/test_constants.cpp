#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "torusnorms/constants.hpp"
#include "torusnorms/rng.hpp"

using namespace torusnorms;

TEST_CASE("gamma function against classical values") {
    REQUIRE(gamma_fn(0.5) == Catch::Approx(std::sqrt(kPi)).epsilon(1e-13));
    REQUIRE(gamma_fn(1.0) == Catch::Approx(1.0).epsilon(1e-14));
    REQUIRE(gamma_fn(5.0) == Catch::Approx(24.0).epsilon(1e-13));
    REQUIRE(log_gamma_fn(101.0) ==
            Catch::Approx(std::lgamma(101.0)).epsilon(1e-13));
    // functional equation Gamma(x+1) = x Gamma(x) off the integers
    for (double x : {0.31, 1.77, 6.42, 23.9}) {
        REQUIRE(gamma_fn(x + 1.0) == Catch::Approx(x * gamma_fn(x)).epsilon(1e-12));
        // digamma consistency: d/dx log Gamma via central difference
        double h = 1e-6;
        double numeric = (log_gamma_fn(x + h) - log_gamma_fn(x - h)) / (2.0 * h);
        REQUIRE(digamma_fn(x) == Catch::Approx(numeric).margin(1e-8));
    }
}

TEST_CASE("golden section minimizer on a parabola") {
    auto f = [](double x) { return (x - 2.0) * (x - 2.0) + 1.0; };
    double x = golden_section_minimize(f, 0.0, 5.0, 1e-12);
    REQUIRE(x == Catch::Approx(2.0).margin(1e-6));
}

TEST_CASE("gamma minimizer location") {
    double x = gamma_argmin();
    REQUIRE(x == Catch::Approx(1.4616321449683623).margin(1e-12));
    REQUIRE(x == Catch::Approx(1.4616321451).margin(1e-8));
    // stationarity and local minimality
    REQUIRE(std::abs(digamma_fn(x)) < 1e-12);
    REQUIRE(gamma_fn(x) < gamma_fn(x - 1e-4));
    REQUIRE(gamma_fn(x) < gamma_fn(x + 1e-4));
}

TEST_CASE("norm constant closed forms") {
    REQUIRE(arestov_lambda(1.0, 1).gamma_form == Catch::Approx(4.0 / kPi).epsilon(1e-12));
    REQUIRE(arestov_lambda(2.0, 2).gamma_form ==
            Catch::Approx(std::sqrt(6.0)).epsilon(1e-12));
    REQUIRE(arestov_lambda(1.0, 2).gamma_form == Catch::Approx(2.0).epsilon(1e-12));
    REQUIRE(std::pow(arestov_lambda(2.0, 3).gamma_form, 2.0) ==
            Catch::Approx(20.0).epsilon(1e-12));
    REQUIRE(arestov_lambda(1.0 / 3.0, 3).gamma_form ==
            Catch::Approx(64.0 / (kPi * kPi * kPi)).epsilon(1e-12));
    REQUIRE(arestov_lambda(0.5, 1).gamma_form ==
            Catch::Approx(1.1636049136346840).epsilon(1e-12));
    // degree zero collapses to 1 for every exponent
    for (double p : {0.5, 1.0, 2.0, 7.3}) {
        LambdaValue v = arestov_lambda(p, 0);
        REQUIRE(v.gamma_form == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("gamma and integral forms of the constant agree") {
    for (double p : {0.5, 1.0, 2.0, 3.0}) {
        for (int m : {1, 2, 4, 8}) {
            LambdaValue v = arestov_lambda(p, m);
            REQUIRE(v.integral_converged);
            REQUIRE(v.consistency_gap < 1e-8);
        }
    }
}

TEST_CASE("squared constant at p = 2 is the central binomial coefficient") {
    for (int m = 0; m <= 15; ++m) {
        LambdaValue v = arestov_lambda(2.0, m);
        double want = static_cast<double>(central_binomial(m));
        REQUIRE(std::exp(2.0 * v.log_gamma_form) == Catch::Approx(want).epsilon(1e-11));
    }
}

TEST_CASE("constant grows monotonically with the degree") {
    for (double p : {0.5, 1.0, 2.0}) {
        double prev = 0.0;
        for (int m = 0; m <= 10; ++m) {
            double cur = arestov_lambda(p, m).log_gamma_form;
            REQUIRE(cur > prev - 1e-13);
            prev = cur;
        }
    }
}

TEST_CASE("asymptotic form is close at large degree") {
    // |log Lambda - log asymptotic| relative to log Lambda under 1%
    for (auto [p, m] : {std::pair<double, int>{2.0, 100}, {1.0, 200}}) {
        double exact = arestov_lambda(p, m).log_gamma_form;
        double asym = arestov_lambda_asymptotic_log(p, m);
        REQUIRE(std::abs(exact - asym) < 0.01 * std::abs(exact));
    }
}

TEST_CASE("fractional-exponent bound margin stays positive") {
    // Lambda(k/m, m) < 2^m for every 1 <= k, m <= 10
    for (int m = 1; m <= 10; ++m)
        for (int k = 1; k <= 10; ++k) REQUIRE(lambda_power_bound_margin(k, m) > 0.0);
}

TEST_CASE("central binomial coefficients") {
    REQUIRE(central_binomial(0) == 1ULL);
    REQUIRE(central_binomial(1) == 2ULL);
    REQUIRE(central_binomial(5) == 252ULL);
    REQUIRE(central_binomial(15) == 155117520ULL);
    REQUIRE_THROWS_AS(central_binomial(32), std::invalid_argument);
}

TEST_CASE("comparison constants order correctly") {
    ComparisonBounds b = comparison_constants(1.0, 2.0);
    REQUIRE(b.lower == Catch::Approx(std::sqrt(2.0)).epsilon(1e-14));
    REQUIRE(b.upper == Catch::Approx(std::sqrt(2.0)).epsilon(1e-14));
    ComparisonBounds c = comparison_constants(3.0, 4.0);
    REQUIRE(c.lower == Catch::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-14));
    REQUIRE(c.upper == Catch::Approx(std::sqrt(2.0)).epsilon(1e-14));
    REQUIRE(c.lower <= c.upper);
    REQUIRE_THROWS_AS(comparison_constants(2.0, 1.0), std::invalid_argument);
}

TEST_CASE("moment growth bounds bracket and order") {
    // lower bound below upper bound for all m, via the gamma-ratio form
    for (int m = 1; m <= 50; ++m) {
        double lo = kwapien_lower_log(2.0, 4.0, m);
        double hi = kwapien_upper_log(2.0, 4.0, m);
        REQUIRE(lo <= hi + 1e-13);
    }
    // Stirling surrogate tracks the exact lower bound at large degree
    for (int m : {20, 50, 100, 200}) {
        double exact = kwapien_lower_log(2.0, 4.0, m);
        double stirling = kwapien_lower_stirling_log(2.0, 4.0, m);
        REQUIRE(std::abs(exact - stirling) < 0.05 * std::abs(exact));
    }
}

TEST_CASE("stirling bracket strictly contains the factorial") {
    Rng rng(616);
    for (int trial = 0; trial < 200; ++trial) {
        double x = 1e-3 + 59.999 * rng.uniform01();
        StirlingBracket b = stirling_bracket(x);
        double lg = log_gamma_fn(x + 1.0);
        REQUIRE(b.log_lower < lg);
        REQUIRE(lg < b.log_upper);
    }
}

TEST_CASE("interpolation constant values and range") {
    REQUIRE(interpolation_constant(0.5) == Catch::Approx(2.0).epsilon(1e-14));
    REQUIRE(interpolation_constant(0.0) == 1.0);
    REQUIRE(interpolation_constant(1.0) == 1.0);
    for (double t = 0.05; t < 1.0; t += 0.05) {
        double c = interpolation_constant(t);
        REQUIRE(c >= 1.0);
        REQUIRE(c <= 2.0 + 1e-15);
    }
    REQUIRE_THROWS_AS(interpolation_constant(-0.1), std::invalid_argument);
    REQUIRE_THROWS_AS(interpolation_constant(1.1), std::invalid_argument);
}

TEST_CASE("cosine power means at exactly solvable exponents") {
    bool conv = false;
    // mean over the circle of |cos|^2 = 1/2
    REQUIRE(constdetail::cos_power_mean(2.0, 1e-12, conv) ==
            Catch::Approx(0.5).epsilon(1e-10));
    REQUIRE(conv);
    // mean of |cos| = 2/pi
    REQUIRE(constdetail::cos_power_mean(1.0, 1e-12, conv) ==
            Catch::Approx(2.0 / kPi).epsilon(1e-10));
    REQUIRE(conv);
}
