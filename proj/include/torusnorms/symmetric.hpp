#pragma once

/*
 * Symmetric polynomial families.
 *
 * Power sums, elementary symmetric functions, the Newton-Girard
 * decomposition k! e_k = p_1^k + (mixed partition terms), and the normalized
 * family u_{m,n} = m! e_m(z / sqrt(n)) whose moments witness the
 * degree-restricted comparison constants.  Monte Carlo moments run over
 * batch-means with independently derived seeds so a standard error falls out
 * of the run itself.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "torusnorms/polynomial.hpp"
#include "torusnorms/rng.hpp"

namespace torusnorms {

inline long long factorial_ll(int k) {
    if (k < 0 || k > 20) throw std::invalid_argument("factorial_ll: need 0 <= k <= 20");
    long long r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

inline Polynomial power_sum(int k, int n) {
    if (n < 1 || k < 1) throw std::invalid_argument("power_sum: need k >= 1, n >= 1");
    std::vector<std::pair<MultiIndex, Complex>> terms;
    terms.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        MultiIndex a(static_cast<std::size_t>(n), 0);
        a[static_cast<std::size_t>(i)] = k;
        terms.emplace_back(std::move(a), Complex(1.0, 0.0));
    }
    return Polynomial::build(n, terms);
}

inline Polynomial elementary_symmetric(int k, int n) {
    if (n < 1) throw std::invalid_argument("elementary_symmetric: need n >= 1");
    if (k < 0 || k > n) throw std::invalid_argument("elementary_symmetric: need 0 <= k <= n");
    if (k == 0) return Polynomial::constant(n, Complex(1.0, 0.0));
    double count = 1.0;
    for (int i = 1; i <= k; ++i) count = count * (n - k + i) / i;
    if (count > 2e6) throw std::invalid_argument("elementary_symmetric: too many monomials");
    std::vector<std::pair<MultiIndex, Complex>> terms;
    terms.reserve(static_cast<std::size_t>(count) + 1);
    std::vector<int> comb(static_cast<std::size_t>(k));
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
        MultiIndex a(static_cast<std::size_t>(n), 0);
        for (int c : comb) a[static_cast<std::size_t>(c)] = 1;
        terms.emplace_back(std::move(a), Complex(1.0, 0.0));
        int i = k - 1;
        while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++comb[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
    return Polynomial::build(n, terms);
}

/// k! e_k written in the power-sum basis: partition (ascending parts summing
/// to k) -> integer coefficient.  The all-ones partition is p_1^k with
/// coefficient 1; everything else is the correction term.
struct NewtonDecomposition {
    int k = 0;
    std::map<std::vector<int>, long long> terms;
};

inline NewtonDecomposition newton_decompose(int k) {
    if (k < 0 || k > 16) throw std::invalid_argument("newton_decompose: need 0 <= k <= 16");
    // A_k = sum_{i=1..k} (-1)^(i-1) (k-1)!/(k-i)! A_{k-i} p_i,  A_0 = 1
    std::vector<std::map<std::vector<int>, long long>> acc(static_cast<std::size_t>(k) + 1);
    acc[0][{}] = 1;
    for (int kk = 1; kk <= k; ++kk) {
        for (int i = 1; i <= kk; ++i) {
            long long c = 1;
            for (int j = kk - i + 1; j <= kk - 1; ++j) c *= j;
            if ((i - 1) & 1) c = -c;
            for (const auto& [part, coef] : acc[static_cast<std::size_t>(kk - i)]) {
                std::vector<int> np = part;
                np.insert(std::lower_bound(np.begin(), np.end(), i), i);
                acc[static_cast<std::size_t>(kk)][np] += c * coef;
            }
        }
        auto& level = acc[static_cast<std::size_t>(kk)];
        for (auto it = level.begin(); it != level.end();)
            it = (it->second == 0) ? level.erase(it) : std::next(it);
    }
    NewtonDecomposition d;
    d.k = k;
    d.terms = std::move(acc[static_cast<std::size_t>(k)]);
    return d;
}

/// u_{m,n} = m! e_m(z_1/sqrt(n), ..., z_n/sqrt(n)); every monomial carries
/// coefficient m! n^(-m/2).
inline Polynomial u_mn(int m, int n) {
    if (m < 1 || n < m) throw std::invalid_argument("u_mn: need 1 <= m <= n");
    double c = static_cast<double>(factorial_ll(m)) *
               std::pow(static_cast<double>(n), -0.5 * static_cast<double>(m));
    return elementary_symmetric(m, n).scaled(Complex(c, 0.0));
}

/// Evaluates u_{m,n} at a point in O(nm + m^2) via Newton-Girard, avoiding
/// the C(n,m) monomial expansion entirely.
class UmnEvaluator {
public:
    UmnEvaluator(int m, int n) : m_(m), n_(n) {
        if (m < 1 || n < m) throw std::invalid_argument("u_mn: need 1 <= m <= n");
        inv_sqrt_n_ = 1.0 / std::sqrt(static_cast<double>(n));
        fact_m_ = static_cast<double>(factorial_ll(m));
    }

    int variables() const { return n_; }
    int degree() const { return m_; }

    Complex operator()(const std::vector<Complex>& z) const {
        if (static_cast<int>(z.size()) != n_)
            throw std::invalid_argument("u_mn evaluation: wrong point dimension");
        std::vector<Complex> ps(static_cast<std::size_t>(m_) + 1, Complex(0.0, 0.0));
        for (int i = 0; i < n_; ++i) {
            Complex w = z[static_cast<std::size_t>(i)] * inv_sqrt_n_;
            Complex acc = w;
            for (int j = 1; j <= m_; ++j) {
                ps[static_cast<std::size_t>(j)] += acc;
                acc *= w;
            }
        }
        std::vector<Complex> e(static_cast<std::size_t>(m_) + 1, Complex(0.0, 0.0));
        e[0] = Complex(1.0, 0.0);
        for (int kk = 1; kk <= m_; ++kk) {
            Complex s(0.0, 0.0);
            double sign = 1.0;
            for (int i = 1; i <= kk; ++i) {
                s += sign * e[static_cast<std::size_t>(kk - i)] * ps[static_cast<std::size_t>(i)];
                sign = -sign;
            }
            e[static_cast<std::size_t>(kk)] = s / static_cast<double>(kk);
        }
        return fact_m_ * e[static_cast<std::size_t>(m_)];
    }

private:
    int m_, n_;
    double inv_sqrt_n_ = 1.0;
    double fact_m_ = 1.0;
};

struct McMoment {
    double norm = 0.0;              // (mean |f|^q)^(1/q)
    double moment = 0.0;            // mean |f|^q
    double std_error = 0.0;         // batch-means SE propagated to the norm
    double moment_std_error = 0.0;
    long samples = 0;
    int batches = 0;
};

/// Monte Carlo q-th moment of |f| under independent Steinhaus coordinates.
/// Batches use seeds derived from (seed, batch index), so results are
/// reproducible and independent of the batch loop order.
template <class F>
McMoment steinhaus_moment_mc(double q, F&& f, int n, long samples, std::uint64_t seed,
                             int batches = 100) {
    if (!(q > 0.0)) throw std::invalid_argument("steinhaus mc: q must be positive");
    if (n < 1) throw std::invalid_argument("steinhaus mc: need n >= 1");
    if (batches < 2 || samples < batches)
        throw std::invalid_argument("steinhaus mc: need samples >= batches >= 2");
    const long per = samples / batches;
    std::vector<Complex> z(static_cast<std::size_t>(n));
    std::vector<double> bm(static_cast<std::size_t>(batches));
    for (int b = 0; b < batches; ++b) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
        double acc = 0.0;
        for (long s = 0; s < per; ++s) {
            for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = rng.steinhaus();
            acc += std::pow(std::abs(f(z)), q);
        }
        bm[static_cast<std::size_t>(b)] = acc / static_cast<double>(per);
    }
    double mean = 0.0;
    for (double v : bm) mean += v;
    mean /= static_cast<double>(batches);
    double var = 0.0;
    for (double v : bm) var += (v - mean) * (v - mean);
    var /= static_cast<double>(batches - 1) * static_cast<double>(batches);

    McMoment r;
    r.moment = mean;
    r.moment_std_error = std::sqrt(var);
    r.samples = per * batches;
    r.batches = batches;
    if (mean > 0.0) {
        r.norm = std::pow(mean, 1.0 / q);
        r.std_error = r.norm * r.moment_std_error / (q * mean);
    }
    return r;
}

inline McMoment steinhaus_moment_mc(double q, const Polynomial& p, long samples,
                                    std::uint64_t seed, int batches = 100) {
    auto f = [&p](const std::vector<Complex>& z) { return p.evaluate(z); };
    return steinhaus_moment_mc(q, f, p.variables(), samples, seed, batches);
}

}  // namespace torusnorms
