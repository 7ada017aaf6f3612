#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "torusnorms/norms.hpp"
#include "torusnorms/polynomial.hpp"
#include "torusnorms/rng.hpp"
#include "torusnorms/symmetric.hpp"

using namespace torusnorms;

TEST_CASE("factorials") {
    REQUIRE(factorial_ll(0) == 1);
    REQUIRE(factorial_ll(6) == 720);
    REQUIRE(factorial_ll(20) == 2432902008176640000LL);
    REQUIRE_THROWS_AS(factorial_ll(21), std::invalid_argument);
}

TEST_CASE("elementary symmetric polynomials") {
    REQUIRE(elementary_symmetric(0, 3) == Polynomial::constant(3, Complex(1.0, 0.0)));
    // e_2 in 4 variables has C(4,2) = 6 square-free monomials, coefficient 1
    Polynomial e = elementary_symmetric(2, 4);
    REQUIRE(e.term_count() == 6);
    for (const auto& [alpha, c] : e.terms()) {
        REQUIRE(c == Complex(1.0, 0.0));
        REQUIRE(index_weight(alpha) == 2);
        for (int a : alpha) REQUIRE(a <= 1);
    }
    REQUIRE_THROWS_AS(elementary_symmetric(5, 4), std::invalid_argument);
}

TEST_CASE("power sums evaluate as advertised") {
    Polynomial p3 = power_sum(3, 2);
    std::vector<Complex> z = {Complex(0.3, 0.7), Complex(-1.1, 0.2)};
    Complex want = std::pow(z[0], 3) + std::pow(z[1], 3);
    REQUIRE(std::abs(p3.evaluate(z) - want) < 1e-13);
}

TEST_CASE("partition expansion reconstructs the symmetric polynomial") {
    // k! e_k = sum over partitions of k of (coef) prod_i p_i, exactly
    for (int k = 2; k <= 6; ++k) {
        NewtonDecomposition d = newton_decompose(k);
        // the all-ones partition always enters with coefficient +1
        REQUIRE(d.terms.at(std::vector<int>(static_cast<std::size_t>(k), 1)) == 1);
        for (int n = k; n <= k + 2; ++n) {
            Polynomial lhs = elementary_symmetric(k, n).scaled(
                Complex(static_cast<double>(factorial_ll(k)), 0.0));
            Polynomial rhs = Polynomial::zero(n);
            for (const auto& [part, coef] : d.terms) {
                Polynomial prod = Polynomial::constant(n, Complex(static_cast<double>(coef), 0.0));
                for (int i : part) prod = prod * power_sum(i, n);
                rhs = rhs + prod;
            }
            REQUIRE(approx_equal(lhs, rhs, 1e-13));
        }
    }
}

TEST_CASE("known small decompositions") {
    // 2 e_2 = p_1^2 - p_2
    NewtonDecomposition d2 = newton_decompose(2);
    REQUIRE(d2.terms.size() == 2);
    REQUIRE(d2.terms.at({1, 1}) == 1);
    REQUIRE(d2.terms.at({2}) == -1);
    // 6 e_3 = p_1^3 - 3 p_1 p_2 + 2 p_3
    NewtonDecomposition d3 = newton_decompose(3);
    REQUIRE(d3.terms.at({1, 1, 1}) == 1);
    REQUIRE(d3.terms.at({1, 2}) == -3);
    REQUIRE(d3.terms.at({3}) == 2);
}

TEST_CASE("scaled symmetric family basics") {
    // m = n = 2 collapses to the single monomial z1 z2
    REQUIRE(u_mn(2, 2) == Polynomial::monomial(2, {1, 1}, Complex(1.0, 0.0)));
    REQUIRE_THROWS_AS(u_mn(3, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(u_mn(0, 2), std::invalid_argument);

    // ||u_{2,n}||_2^2 = 2 (n-1) / n
    for (int n : {2, 3, 8, 32, 128}) {
        double v = lp_norm(2.0, u_mn(2, n)).value;
        REQUIRE(v * v == Catch::Approx(2.0 * (n - 1) / n).epsilon(1e-12));
    }
}

TEST_CASE("fast evaluator matches the expanded polynomial") {
    Rng rng(37);
    for (auto [m, n] : {std::pair<int, int>{1, 4}, {2, 5}, {3, 6}, {4, 4}}) {
        Polynomial u = u_mn(m, n);
        UmnEvaluator f(m, n);
        REQUIRE(f.variables() == n);
        REQUIRE(f.degree() == m);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Complex> z(static_cast<std::size_t>(n));
            for (auto& x : z) x = rng.steinhaus();
            REQUIRE(std::abs(f(z) - u.evaluate(z)) < 1e-12);
        }
    }
}

TEST_CASE("fourth moment of the degree-one family") {
    // mean |sum z_i / sqrt(n)|^4 = 2 - 1/n
    for (int n : {2, 4, 16}) {
        Polynomial u = u_mn(1, n);
        NormResult r = lp_norm(4.0, u);
        REQUIRE(std::pow(r.value, 4.0) == Catch::Approx(2.0 - 1.0 / n).epsilon(1e-12));
    }
}

TEST_CASE("monte carlo moments are deterministic and calibrated") {
    const int m = 2, n = 8;
    UmnEvaluator f(m, n);
    McMoment a = steinhaus_moment_mc(4.0, f, n, 20000, 99);
    McMoment b = steinhaus_moment_mc(4.0, f, n, 20000, 99);
    REQUIRE(a.norm == b.norm);
    REQUIRE(a.std_error == b.std_error);
    REQUIRE(a.samples == 20000);

    McMoment c = steinhaus_moment_mc(4.0, f, n, 20000, 100);
    REQUIRE(a.norm != c.norm);

    double exact = lp_norm(4.0, u_mn(m, n)).value;
    REQUIRE(std::abs(a.norm - exact) <= 5.0 * a.std_error);

    // polynomial overload routes through the same machinery
    McMoment d = steinhaus_moment_mc(4.0, u_mn(m, n), 20000, 99);
    REQUIRE(d.norm == Catch::Approx(a.norm).epsilon(1e-12));
}

TEST_CASE("monte carlo input validation") {
    UmnEvaluator f(1, 2);
    REQUIRE_THROWS_AS(steinhaus_moment_mc(0.0, f, 2, 1000, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(steinhaus_moment_mc(2.0, f, 2, 50, 1, 100), std::invalid_argument);
}
