#pragma once

/*
 * Seeded random polynomial corpora.
 *
 * Every item draws from its own stream derived from (seed, index), so item i
 * is the same no matter how many items are generated or in what order.
 * Support sets: "general" fills the total-degree simplex, "homogeneous" the
 * top shell only, "multiaffine" the 0/1 exponent cube up to the requested
 * total degree.  Each candidate index enters with probability 1/2; empty
 * draws are rerolled since the zero polynomial has no norms worth comparing.
 */

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "torusnorms/polynomial.hpp"
#include "torusnorms/polynomial_json.hpp"
#include "torusnorms/rng.hpp"

namespace torusnorms {

struct CorpusSpec {
    std::uint64_t seed = 1;
    int n = 1;
    int max_total_degree = 3;
    int count = 10;
    std::string kind = "general";                   // general | homogeneous | multiaffine
    std::string coefficient_law = "complex-gaussian";  // | steinhaus | rademacher

    void validate() const {
        if (n < 1) throw std::invalid_argument("corpus: need n >= 1");
        if (count < 1) throw std::invalid_argument("corpus: need count >= 1");
        if (max_total_degree < 1) throw std::invalid_argument("corpus: need degree >= 1");
        if (kind != "general" && kind != "homogeneous" && kind != "multiaffine")
            throw std::invalid_argument("corpus: unknown kind " + kind);
        if (kind == "multiaffine" && max_total_degree > n)
            throw std::invalid_argument("corpus: multiaffine degree cannot exceed n");
        if (coefficient_law != "complex-gaussian" && coefficient_law != "steinhaus" &&
            coefficient_law != "rademacher")
            throw std::invalid_argument("corpus: unknown coefficient law " + coefficient_law);
    }
};

namespace corpusdetail {

inline void walk_simplex(int n, int budget, MultiIndex& cur, int pos,
                         std::vector<MultiIndex>& out) {
    if (pos == n) {
        out.push_back(cur);
        return;
    }
    for (int e = 0; e <= budget; ++e) {
        cur[static_cast<std::size_t>(pos)] = e;
        walk_simplex(n, budget - e, cur, pos + 1, out);
    }
    cur[static_cast<std::size_t>(pos)] = 0;
}

/// Candidate exponents for a corpus kind, in lexicographic order.
inline std::vector<MultiIndex> candidate_indices(const CorpusSpec& spec) {
    std::vector<MultiIndex> out;
    MultiIndex cur(static_cast<std::size_t>(spec.n), 0);
    walk_simplex(spec.n, spec.max_total_degree, cur, 0, out);
    if (spec.kind == "homogeneous") {
        std::vector<MultiIndex> shell;
        for (auto& a : out)
            if (index_weight(a) == spec.max_total_degree) shell.push_back(std::move(a));
        return shell;
    }
    if (spec.kind == "multiaffine") {
        std::vector<MultiIndex> cube;
        for (auto& a : out) {
            bool affine = true;
            for (int e : a) affine = affine && e <= 1;
            if (affine) cube.push_back(std::move(a));
        }
        return cube;
    }
    return out;
}

inline Complex sample_coefficient(const std::string& law, Rng& rng) {
    if (law == "steinhaus") return rng.steinhaus();
    if (law == "rademacher") return Complex(rng.rademacher(), 0.0);
    return rng.complex_gaussian();
}

}  // namespace corpusdetail

/// One random polynomial from the stream; rerolls until nonzero.
inline Polynomial random_polynomial(const CorpusSpec& spec, Rng& rng) {
    spec.validate();
    const std::vector<MultiIndex> candidates = corpusdetail::candidate_indices(spec);
    for (;;) {
        std::vector<std::pair<MultiIndex, Complex>> raw;
        for (const MultiIndex& a : candidates)
            if (rng.bernoulli(0.5))
                raw.emplace_back(a, corpusdetail::sample_coefficient(spec.coefficient_law, rng));
        if (raw.empty()) continue;
        Polynomial p = Polynomial::build(spec.n, raw);
        if (!p.is_zero()) return p;
    }
}

struct Corpus {
    CorpusSpec spec;
    std::vector<Polynomial> items;
};

inline Corpus generate_corpus(const CorpusSpec& spec) {
    spec.validate();
    Corpus c;
    c.spec = spec;
    c.items.reserve(static_cast<std::size_t>(spec.count));
    for (int i = 0; i < spec.count; ++i) {
        Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(i)));
        c.items.push_back(random_polynomial(spec, rng));
    }
    return c;
}

inline nlohmann::json corpus_spec_to_json(const CorpusSpec& s) {
    nlohmann::json j;
    j["seed"] = s.seed;
    j["n"] = s.n;
    j["max_total_degree"] = s.max_total_degree;
    j["count"] = s.count;
    j["kind"] = s.kind;
    j["coefficient_law"] = s.coefficient_law;
    return j;
}

inline CorpusSpec corpus_spec_from_json(const nlohmann::json& j) {
    CorpusSpec s;
    s.seed = j.at("seed").get<std::uint64_t>();
    s.n = j.at("n").get<int>();
    s.max_total_degree = j.at("max_total_degree").get<int>();
    s.count = j.at("count").get<int>();
    s.kind = j.at("kind").get<std::string>();
    s.coefficient_law = j.at("coefficient_law").get<std::string>();
    s.validate();
    return s;
}

inline nlohmann::json corpus_to_json(const Corpus& c) {
    nlohmann::json j;
    j["spec"] = corpus_spec_to_json(c.spec);
    nlohmann::json items = nlohmann::json::array();
    for (const Polynomial& p : c.items) {
        nlohmann::json jp = polynomial_to_json(p);
        jp["witness"] = polynomial_witness_id(p);
        items.push_back(std::move(jp));
    }
    j["items"] = std::move(items);
    return j;
}

inline Corpus corpus_from_json(const nlohmann::json& j) {
    Corpus c;
    c.spec = corpus_spec_from_json(j.at("spec"));
    for (const auto& jp : j.at("items")) c.items.push_back(polynomial_from_json(jp));
    return c;
}

inline void save_corpus(const Corpus& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write corpus file: " + path);
    out << corpus_to_json(c).dump(2) << '\n';
}

inline Corpus load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read corpus file: " + path);
    nlohmann::json j;
    in >> j;
    return corpus_from_json(j);
}

}  // namespace torusnorms
