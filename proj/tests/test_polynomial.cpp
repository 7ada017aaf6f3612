#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <set>
#include <vector>

#include "torusnorms/corpus.hpp"
#include "torusnorms/polynomial.hpp"
#include "torusnorms/polynomial_json.hpp"
#include "torusnorms/rng.hpp"

using namespace torusnorms;

namespace {

Polynomial random_poly(int n, int deg, Rng& rng) {
    CorpusSpec spec;
    spec.n = n;
    spec.max_total_degree = deg;
    return random_polynomial(spec, rng);
}

}  // namespace

TEST_CASE("builders and accessors") {
    Polynomial z = Polynomial::zero(2);
    REQUIRE(z.is_zero());
    REQUIRE(z.variables() == 2);
    REQUIRE(z.term_count() == 0);

    Polynomial c = Polynomial::constant(3, Complex(2.0, -1.0));
    REQUIRE(c.term_count() == 1);
    REQUIRE(c.evaluate({Complex(1), Complex(1), Complex(1)}) == Complex(2.0, -1.0));

    Polynomial m = Polynomial::monomial(2, {1, 3}, Complex(0.5, 0.0));
    REQUIRE(m.degree_profile().total == 4);
    REQUIRE(m.degree_profile().per_variable == std::vector<int>{1, 3});

    // zero coefficients are dropped on build
    Polynomial b = Polynomial::build(1, {{{0}, Complex(0.0, 0.0)}, {{1}, Complex(1.0, 0.0)}});
    REQUIRE(b.term_count() == 1);

    REQUIRE_THROWS_AS(Polynomial::monomial(2, {1}, Complex(1.0, 0.0)), std::invalid_argument);
    REQUIRE_THROWS_AS(Polynomial::monomial(2, {-1, 0}, Complex(1.0, 0.0)),
                      std::invalid_argument);
}

TEST_CASE("ring laws on random polynomials") {
    Rng rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + static_cast<int>(rng.raw() % 3);
        Polynomial p = random_poly(n, 4, rng);
        Polynomial q = random_poly(n, 3, rng);
        Polynomial r = random_poly(n, 2, rng);

        REQUIRE(p + q == q + p);
        REQUIRE(approx_equal((p + q) + r, p + (q + r), 1e-12));
        REQUIRE(p - p == Polynomial::zero(n));
        REQUIRE(approx_equal(p * q, q * p, 1e-12));
        REQUIRE(approx_equal((p * q) * r, p * (q * r), 1e-12));
        REQUIRE(approx_equal(p * (q + r), p * q + p * r, 1e-12));
        REQUIRE(p * Polynomial::constant(n, Complex(1.0, 0.0)) == p);
        REQUIRE((p * Polynomial::zero(n)).is_zero());
    }
}

TEST_CASE("pow matches repeated multiplication") {
    Rng rng(7);
    Polynomial p = random_poly(2, 3, rng);
    Polynomial acc = Polynomial::constant(2, Complex(1.0, 0.0));
    for (int k = 0; k <= 4; ++k) {
        REQUIRE(approx_equal(p.pow(k), acc, 1e-12));
        acc = acc * p;
    }
    REQUIRE_THROWS_AS(p.pow(-1), std::invalid_argument);
}

TEST_CASE("degree profiles") {
    // homogeneous of total degree 3
    Polynomial h = Polynomial::build(
        2, {{{1, 2}, Complex(1.0, 0.0)}, {{3, 0}, Complex(-2.0, 1.0)}});
    DegreeProfile hp = h.degree_profile();
    REQUIRE(hp.homogeneous);
    REQUIRE(hp.total == 3);
    REQUIRE(hp.max_partial == 3);
    REQUIRE(hp.per_variable == std::vector<int>{3, 2});

    Polynomial g = h + Polynomial::constant(2, Complex(1.0, 0.0));
    REQUIRE_FALSE(g.degree_profile().homogeneous);

    REQUIRE(Polynomial::zero(2).degree_profile().is_zero_sentinel());
    REQUIRE(Polynomial::constant(2, Complex(5.0, 0.0)).degree_profile().homogeneous);
}

TEST_CASE("evaluation agrees with per-variable expansion") {
    Rng rng(99);
    Polynomial p = random_poly(3, 4, rng);
    std::vector<Complex> z = {rng.steinhaus(), rng.steinhaus(), rng.steinhaus()};

    // expand in the last variable and Horner the slice polynomials
    std::vector<Polynomial> coeffs = p.coefficients_in_variable(2);
    Complex acc(0.0, 0.0);
    for (std::size_t k = coeffs.size(); k-- > 0;)
        acc = acc * z[2] + coeffs[k].evaluate({z[0], z[1]});
    REQUIRE(std::abs(acc - p.evaluate(z)) < 1e-12);

    // partial substitution of all but the last variable gives a univariate slice
    Polynomial slice = p.partial_substitute(2, {z[0], z[1]});
    REQUIRE(slice.variables() == 1);
    REQUIRE(std::abs(slice.evaluate({z[2]}) - p.evaluate(z)) < 1e-12);
}

TEST_CASE("dilation scales coefficients by total weight") {
    Polynomial p = Polynomial::build(
        2, {{{0, 0}, Complex(1.0, 0.0)}, {{1, 1}, Complex(2.0, 0.0)}, {{0, 3}, Complex(1.0, 1.0)}});
    Polynomial d = p.dilated(0.5);
    for (const auto& [alpha, c] : d.terms()) {
        Complex orig = p.terms().at(alpha);
        REQUIRE(std::abs(c - orig * std::pow(0.5, index_weight(alpha))) < 1e-15);
    }
    std::vector<Complex> z = {Complex(0.2, 0.1), Complex(-0.3, 0.4)};
    std::vector<Complex> hz = {z[0] * 0.5, z[1] * 0.5};
    REQUIRE(std::abs(d.evaluate(z) - p.evaluate(hz)) < 1e-14);
}

TEST_CASE("coefficient functionals") {
    Polynomial p = Polynomial::build(
        1, {{{0}, Complex(3.0, 4.0)}, {{2}, Complex(0.0, -2.0)}});
    auto f = p.coefficient_functionals();
    REQUIRE(f.l1 == Catch::Approx(7.0).epsilon(1e-15));
    REQUIRE(f.max == Catch::Approx(5.0).epsilon(1e-15));
    REQUIRE(f.parseval_l2 == Catch::Approx(std::sqrt(29.0)).epsilon(1e-15));
}

TEST_CASE("dense univariate coefficients") {
    Polynomial p = Polynomial::build(1, {{{3}, Complex(2.0, 0.0)}, {{0}, Complex(-1.0, 0.0)}});
    std::vector<Complex> dense = p.dense_coefficients();
    REQUIRE(dense.size() == 4);
    REQUIRE(dense[0] == Complex(-1.0, 0.0));
    REQUIRE(dense[1] == Complex(0.0, 0.0));
    REQUIRE(dense[3] == Complex(2.0, 0.0));
}

TEST_CASE("JSON round trip is exact") {
    Rng rng(31337);
    for (int trial = 0; trial < 10; ++trial) {
        Polynomial p = random_poly(2, 5, rng);
        Polynomial back = polynomial_from_json(polynomial_to_json(p));
        REQUIRE(p == back);  // bit-exact coefficients
        REQUIRE(polynomial_content_hash(p) == polynomial_content_hash(back));
    }
    REQUIRE_THROWS(polynomial_from_json(nlohmann::json{{"n", 1}}));
}

TEST_CASE("witness ids separate distinct polynomials") {
    Rng rng(5);
    std::set<std::string> ids;
    for (int trial = 0; trial < 30; ++trial)
        ids.insert(polynomial_witness_id(random_poly(2, 4, rng)));
    REQUIRE(ids.size() == 30);
}

TEST_CASE("corpus generation is deterministic and respects its spec") {
    CorpusSpec spec;
    spec.seed = 42;
    spec.n = 2;
    spec.max_total_degree = 4;
    spec.count = 100;

    Corpus a = generate_corpus(spec);
    Corpus b = generate_corpus(spec);
    REQUIRE(a.items.size() == 100);
    for (std::size_t i = 0; i < a.items.size(); ++i) {
        REQUIRE(a.items[i] == b.items[i]);
        REQUIRE_FALSE(a.items[i].is_zero());
        REQUIRE(a.items[i].degree_profile().total <= 4);
    }

    spec.seed = 43;
    Corpus c = generate_corpus(spec);
    bool any_differ = false;
    for (std::size_t i = 0; i < c.items.size(); ++i)
        any_differ = any_differ || !(a.items[i] == c.items[i]);
    REQUIRE(any_differ);
}

TEST_CASE("corpus kinds constrain the degree profiles") {
    CorpusSpec spec;
    spec.seed = 11;
    spec.n = 3;
    spec.count = 40;

    spec.kind = "homogeneous";
    spec.max_total_degree = 3;
    for (const Polynomial& p : generate_corpus(spec).items) {
        REQUIRE(p.degree_profile().homogeneous);
        REQUIRE(p.degree_profile().total == 3);
    }

    spec.kind = "multiaffine";
    spec.max_total_degree = 2;
    for (const Polynomial& p : generate_corpus(spec).items)
        REQUIRE(p.degree_profile().max_partial <= 1);

    spec.kind = "nonsense";
    REQUIRE_THROWS_AS(generate_corpus(spec), std::invalid_argument);
}

TEST_CASE("corpus file round trip") {
    CorpusSpec spec;
    spec.seed = 9;
    spec.n = 2;
    spec.max_total_degree = 3;
    spec.count = 12;
    spec.coefficient_law = "steinhaus";
    Corpus a = generate_corpus(spec);

    std::string path = "corpus_roundtrip_test.json";
    save_corpus(a, path);
    Corpus b = load_corpus(path);
    std::remove(path.c_str());

    REQUIRE(b.spec.seed == spec.seed);
    REQUIRE(b.spec.kind == spec.kind);
    REQUIRE(b.items.size() == a.items.size());
    for (std::size_t i = 0; i < a.items.size(); ++i) REQUIRE(a.items[i] == b.items[i]);
}
