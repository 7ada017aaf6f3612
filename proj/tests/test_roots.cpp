#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>

#include "torusnorms/norms.hpp"
#include "torusnorms/polynomial.hpp"
#include "torusnorms/rng.hpp"
#include "torusnorms/roots.hpp"

using namespace torusnorms;

namespace {

Polynomial from_roots(const std::vector<Complex>& roots, Complex lead = Complex(1.0, 0.0)) {
    Polynomial p = Polynomial::constant(1, lead);
    for (Complex r : roots) {
        Polynomial factor =
            Polynomial::build(1, {{{0}, -r}, {{1}, Complex(1.0, 0.0)}});
        p = p * factor;
    }
    return p;
}

bool contains_root(const RootsResult& rr, Complex want, double tol) {
    return std::any_of(rr.roots.begin(), rr.roots.end(),
                       [&](Complex got) { return std::abs(got - want) < tol; });
}

}  // namespace

TEST_CASE("simple roots of a cubic") {
    std::vector<Complex> want = {Complex(2.0, 0.0), Complex(-1.0, 1.0), Complex(0.25, -0.5)};
    Polynomial p = from_roots(want, Complex(0.0, 3.0));
    RootsResult rr = roots_univariate(p);
    REQUIRE(rr.converged);
    REQUIRE(rr.roots.size() == 3);
    REQUIRE(std::abs(rr.leading - Complex(0.0, 3.0)) < 1e-12);
    for (Complex w : want) REQUIRE(contains_root(rr, w, 1e-9));
}

TEST_CASE("multiple root is reported as one cluster") {
    Polynomial p = Polynomial::build(
        1, {{{0}, Complex(1.0, 0.0)}, {{1}, Complex(1.0, 0.0)}}).pow(8);
    RootsResult rr = roots_univariate(p);
    REQUIRE(rr.converged);
    REQUIRE(rr.clusters.size() == 1);
    REQUIRE(rr.clusters[0].multiplicity == 8);
    REQUIRE(std::abs(rr.clusters[0].center - Complex(-1.0, 0.0)) < 1e-8);
}

TEST_CASE("zero roots are deflated exactly") {
    // z^3 (z - 2) = z^4 - 2 z^3
    Polynomial p = Polynomial::build(
        1, {{{4}, Complex(1.0, 0.0)}, {{3}, Complex(-2.0, 0.0)}});
    RootsResult rr = roots_univariate(p);
    REQUIRE(rr.converged);
    REQUIRE(rr.clusters.size() == 2);
    REQUIRE(rr.clusters[0].center == Complex(0.0, 0.0));
    REQUIRE(rr.clusters[0].multiplicity == 3);
    REQUIRE(std::abs(rr.clusters[1].center - Complex(2.0, 0.0)) < 1e-10);
}

TEST_CASE("constant and zero inputs are rejected") {
    REQUIRE_THROWS_AS(roots_univariate(Polynomial::constant(1, Complex(2.0, 0.0))),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(roots_univariate(Polynomial::zero(1)), std::invalid_argument);
    REQUIRE_THROWS_AS(roots_univariate(Polynomial::zero(2)), std::invalid_argument);
}

TEST_CASE("measure of a degree-one binomial") {
    // M(2z - 1): the root 1/2 is inside the circle, so M = |2| = 2
    Polynomial p = Polynomial::build(
        1, {{{1}, Complex(2.0, 0.0)}, {{0}, Complex(-1.0, 0.0)}});
    NormResult m = mahler_univariate(p);
    REQUIRE(m.value == Catch::Approx(2.0).epsilon(1e-12));
    REQUIRE(m.method == NormMethod::exact_roots);
}

TEST_CASE("binomial powers have measure one") {
    Polynomial base = Polynomial::build(
        1, {{{0}, Complex(1.0, 0.0)}, {{1}, Complex(1.0, 0.0)}});
    for (int m = 1; m <= 8; ++m) {
        NormResult res = mahler_univariate(base.pow(m));
        REQUIRE(res.value == Catch::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("classical degree-ten measure value") {
    // z^10 + z^9 - z^7 - z^6 - z^5 - z^4 - z^3 + z + 1
    Polynomial p = Polynomial::build(1, {
        {{10}, Complex(1.0, 0.0)}, {{9}, Complex(1.0, 0.0)},
        {{7}, Complex(-1.0, 0.0)}, {{6}, Complex(-1.0, 0.0)},
        {{5}, Complex(-1.0, 0.0)}, {{4}, Complex(-1.0, 0.0)},
        {{3}, Complex(-1.0, 0.0)}, {{1}, Complex(1.0, 0.0)},
        {{0}, Complex(1.0, 0.0)}});
    NormResult m = mahler_univariate(p);
    REQUIRE(m.value == Catch::Approx(1.1762808182599175).epsilon(1e-10));
}

TEST_CASE("measure is multiplicative via roots") {
    Rng rng(424242);
    for (int trial = 0; trial < 25; ++trial) {
        int dp = 1 + static_cast<int>(rng.raw() % 5);
        int dq = 1 + static_cast<int>(rng.raw() % 5);
        std::vector<Complex> rp, rq;
        for (int i = 0; i < dp; ++i) rp.push_back(rng.complex_gaussian());
        for (int i = 0; i < dq; ++i) rq.push_back(rng.complex_gaussian());
        Polynomial P = from_roots(rp, rng.steinhaus());
        Polynomial Q = from_roots(rq, rng.steinhaus());
        double mp = mahler_univariate(P).value;
        double mq = mahler_univariate(Q).value;
        double mpq = mahler_univariate(P * Q).value;
        REQUIRE(mpq == Catch::Approx(mp * mq).epsilon(1e-9));
    }
}

TEST_CASE("root hugging the unit circle raises the warning flag") {
    // one root at radius 1 + 1e-10: the max(1,.) branch choice is uncertain
    Complex near_circle = std::polar(1.0 + 1e-10, 1.0 / 3.0);
    Polynomial p = from_roots({near_circle, Complex(3.0, 0.0)});
    NormResult m = mahler_univariate(p);
    REQUIRE(m.value == Catch::Approx(3.0).epsilon(1e-8));
    REQUIRE(m.warning);

    // well-separated roots do not
    Polynomial q = from_roots({Complex(0.5, 0.0), Complex(3.0, 0.0)});
    REQUIRE_FALSE(mahler_univariate(q).warning);
}

TEST_CASE("residuals certify the computed roots") {
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Complex> c(9);
        for (auto& x : c) x = rng.complex_gaussian();
        c[8] += Complex(2.0, 0.0);  // keep the leading coefficient away from zero
        RootsResult rr = roots_from_coefficients(c);
        REQUIRE(rr.converged);
        REQUIRE(rr.roots.size() == 8);
        REQUIRE(rr.max_residual < 1e-10);
    }
}
