#pragma once

/*
 * Deterministic random streams.  mt19937_64 output is pinned by the C++
 * standard, and the mappings below (uniform via the top 53 bits, Gaussian via
 * Box-Muller) avoid std::*_distribution, whose streams are implementation
 * defined; a seed therefore reproduces byte-identical corpora everywhere.
 */

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace torusnorms {

inline constexpr double kPi = 3.1415926535897932384626433832795;
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// splitmix64 mix; used to derive independent stream seeds (batch b of a
/// Monte Carlo run, polynomial i of a corpus) from one master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0,1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Standard real Gaussian (Box-Muller, pairs cached).
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = kTwoPi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    /// Standard complex Gaussian, E|z|^2 = 1.
    std::complex<double> complex_gaussian() {
        const double s = 0.70710678118654752440;  // 1/sqrt(2)
        return {s * gaussian(), s * gaussian()};
    }

    /// Uniform phase on the unit circle (Steinhaus variable).
    std::complex<double> steinhaus() {
        double a = kTwoPi * uniform01();
        return {std::cos(a), std::sin(a)};
    }

    double rademacher() { return uniform01() < 0.5 ? -1.0 : 1.0; }

    bool bernoulli(double prob) { return uniform01() < prob; }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace torusnorms
