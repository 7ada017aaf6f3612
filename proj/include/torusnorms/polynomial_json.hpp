#pragma once

/*
 * JSON form and content hashing for polynomials.
 *
 * Canonical shape: {"n": int, "terms": [{"alpha": [...], "re": d, "im": d}]}
 * with terms in the lexicographic multi-index order the term map maintains.
 * Doubles survive the round trip bit for bit (shortest-round-trip printing),
 * which is what makes repeated corpus generation byte-identical.
 */

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "torusnorms/polynomial.hpp"

namespace torusnorms {

inline nlohmann::json polynomial_to_json(const Polynomial& p) {
    nlohmann::json j;
    j["n"] = p.variables();
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [alpha, c] : p.terms()) {
        nlohmann::json t;
        t["alpha"] = alpha;
        t["re"] = c.real();
        t["im"] = c.imag();
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline Polynomial polynomial_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("terms"))
        throw std::invalid_argument("polynomial json: need an object with n and terms");
    int n = j.at("n").get<int>();
    std::vector<std::pair<MultiIndex, Complex>> raw;
    for (const auto& t : j.at("terms")) {
        MultiIndex alpha = t.at("alpha").get<MultiIndex>();
        raw.emplace_back(std::move(alpha),
                         Complex(t.at("re").get<double>(), t.at("im").get<double>()));
    }
    return Polynomial::build(n, raw);
}

/// FNV-1a, stable across runs and platforms.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t polynomial_content_hash(const Polynomial& p) {
    return fnv1a(polynomial_to_json(p).dump());
}

/// Content hash as fixed-width hex, the identifier reports carry.
inline std::string polynomial_witness_id(const Polynomial& p) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(polynomial_content_hash(p)));
    return std::string(buf);
}

}  // namespace torusnorms
