#pragma once

/*
 * Sparse polynomials in several complex variables.
 *
 * A Polynomial is an immutable map from exponent multi-indices to complex
 * coefficients.  Canonical form: exponents are non-negative, terms are kept
 * in lexicographic order, duplicate indices are summed on construction and
 * exact-zero coefficients are dropped, so structural equality is map equality.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace torusnorms {

using Complex = std::complex<double>;
using MultiIndex = std::vector<int>;

/// |alpha| = sum of exponents.
inline int index_weight(const MultiIndex& alpha) {
    return std::accumulate(alpha.begin(), alpha.end(), 0);
}

/// Degree data of a polynomial.  The zero polynomial gets the sentinel
/// profile (total = max_partial = -1, empty per_variable, homogeneous false).
struct DegreeProfile {
    int total = -1;
    std::vector<int> per_variable;  // d_j = degree in variable j
    int max_partial = -1;           // deg_inf = max_j d_j
    bool homogeneous = false;

    bool is_zero_sentinel() const { return total < 0; }
};

class Polynomial {
public:
    using TermMap = std::map<MultiIndex, Complex>;

    Polynomial() : n_(1) {}
    explicit Polynomial(int n) : n_(check_n(n)) {}

    static Polynomial zero(int n) { return Polynomial(n); }

    static Polynomial constant(int n, Complex c) {
        Polynomial p(n);
        if (c != Complex(0.0, 0.0)) p.terms_.emplace(MultiIndex(n, 0), c);
        return p;
    }

    static Polynomial monomial(int n, MultiIndex alpha, Complex c) {
        return build(n, {{std::move(alpha), c}});
    }

    /// Canonicalizing constructor: validates index lengths and signs, sums
    /// duplicates, drops terms whose summed coefficient is exactly zero.
    static Polynomial build(int n, const std::vector<std::pair<MultiIndex, Complex>>& raw) {
        Polynomial p(n);
        for (const auto& [alpha, c] : raw) {
            if (static_cast<int>(alpha.size()) != n)
                throw std::invalid_argument("polynomial term: multi-index length " +
                                            std::to_string(alpha.size()) + " != n = " +
                                            std::to_string(n));
            for (int e : alpha)
                if (e < 0)
                    throw std::invalid_argument("polynomial term: negative exponent");
            auto [it, inserted] = p.terms_.emplace(alpha, c);
            if (!inserted) it->second += c;
        }
        p.prune();
        return p;
    }

    int variables() const { return n_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    Polynomial operator+(const Polynomial& rhs) const {
        check_same_n(rhs);
        Polynomial out(n_);
        out.terms_ = terms_;
        for (const auto& [alpha, c] : rhs.terms_) {
            auto [it, inserted] = out.terms_.emplace(alpha, c);
            if (!inserted) it->second += c;
        }
        out.prune();
        return out;
    }

    Polynomial operator-(const Polynomial& rhs) const { return *this + rhs.scaled(Complex(-1.0, 0.0)); }

    /// Coefficient convolution.  Duplicate products are accumulated through an
    /// unordered buffer and re-canonicalized.
    Polynomial operator*(const Polynomial& rhs) const {
        check_same_n(rhs);
        Polynomial out(n_);
        if (terms_.empty() || rhs.terms_.empty()) return out;
        // map insertion dominates; reserve-free std::map is fine at the term
        // counts in scope (<= a few 1e6 products)
        TermMap acc;
        MultiIndex gamma(n_);
        for (const auto& [a, ca] : terms_) {
            for (const auto& [b, cb] : rhs.terms_) {
                for (int j = 0; j < n_; ++j) gamma[j] = a[j] + b[j];
                Complex prod = ca * cb;
                auto [it, inserted] = acc.emplace(gamma, prod);
                if (!inserted) it->second += prod;
            }
        }
        out.terms_ = std::move(acc);
        out.prune();
        return out;
    }

    Polynomial scaled(Complex c) const {
        Polynomial out(n_);
        if (c == Complex(0.0, 0.0)) return out;
        out.terms_ = terms_;
        for (auto& [alpha, coef] : out.terms_) coef *= c;
        out.prune();
        return out;
    }

    /// Coefficient dilation c_alpha -> c_alpha * r^{|alpha|}; implements P(r z).
    Polynomial dilated(double r) const {
        Polynomial out(n_);
        out.terms_ = terms_;
        for (auto& [alpha, coef] : out.terms_) coef *= std::pow(r, index_weight(alpha));
        out.prune();
        return out;
    }

    Polynomial pow(int k) const {
        if (k < 0) throw std::invalid_argument("polynomial pow: negative exponent");
        Polynomial result = constant(n_, Complex(1.0, 0.0));
        Polynomial base = *this;
        while (k > 0) {
            if (k & 1) result = result * base;
            base = (k >>= 1) ? base * base : base;
        }
        return result;
    }

    /// Fix every variable except var_index (0-based) at the given values
    /// (listed in variable order, skipping var_index); returns a univariate
    /// polynomial in the remaining variable.
    Polynomial partial_substitute(int var_index, const std::vector<Complex>& values) const {
        if (var_index < 0 || var_index >= n_)
            throw std::out_of_range("partial_substitute: variable index out of range");
        if (static_cast<int>(values.size()) != n_ - 1)
            throw std::invalid_argument("partial_substitute: expected n-1 values");
        Polynomial out(1);
        for (const auto& [alpha, c] : terms_) {
            Complex w = c;
            int vi = 0;
            for (int j = 0; j < n_; ++j) {
                if (j == var_index) continue;
                w *= ipow(values[static_cast<std::size_t>(vi++)], alpha[j]);
            }
            MultiIndex key{alpha[var_index]};
            auto [it, inserted] = out.terms_.emplace(std::move(key), w);
            if (!inserted) it->second += w;
        }
        out.prune();
        return out;
    }

    Complex evaluate(const std::vector<Complex>& z) const {
        if (static_cast<int>(z.size()) != n_)
            throw std::invalid_argument("evaluate: wrong point dimension");
        Complex s(0.0, 0.0);
        for (const auto& [alpha, c] : terms_) {
            Complex w = c;
            for (int j = 0; j < n_; ++j) w *= ipow(z[static_cast<std::size_t>(j)], alpha[j]);
            s += w;
        }
        return s;
    }

    DegreeProfile degree_profile() const {
        DegreeProfile d;
        if (terms_.empty()) return d;
        d.per_variable.assign(static_cast<std::size_t>(n_), 0);
        d.total = 0;
        int min_total = index_weight(terms_.begin()->first);
        for (const auto& [alpha, c] : terms_) {
            (void)c;
            int w = index_weight(alpha);
            d.total = std::max(d.total, w);
            min_total = std::min(min_total, w);
            for (int j = 0; j < n_; ++j)
                d.per_variable[static_cast<std::size_t>(j)] =
                    std::max(d.per_variable[static_cast<std::size_t>(j)], alpha[j]);
        }
        d.max_partial = *std::max_element(d.per_variable.begin(), d.per_variable.end());
        d.homogeneous = (min_total == d.total);
        return d;
    }

    struct CoefficientFunctionals {
        double l1 = 0.0;          // L(P) = sum |c_alpha|
        double max = 0.0;         // H(P) = max |c_alpha|
        double parseval_l2 = 0.0; // (sum |c_alpha|^2)^{1/2} = ||P||_2
    };

    CoefficientFunctionals coefficient_functionals() const {
        CoefficientFunctionals f;
        double sq = 0.0;
        for (const auto& [alpha, c] : terms_) {
            (void)alpha;
            double a = std::abs(c);
            f.l1 += a;
            f.max = std::max(f.max, a);
            sq += a * a;
        }
        f.parseval_l2 = std::sqrt(sq);
        return f;
    }

    /// Dense ascending coefficient vector; univariate only.
    std::vector<Complex> dense_coefficients() const {
        if (n_ != 1) throw std::logic_error("dense_coefficients: univariate only");
        if (terms_.empty()) return {};
        int deg = terms_.rbegin()->first[0];
        std::vector<Complex> c(static_cast<std::size_t>(deg) + 1, Complex(0.0, 0.0));
        for (const auto& [alpha, coef] : terms_) c[static_cast<std::size_t>(alpha[0])] = coef;
        return c;
    }

    /// View in variable `var` (0-based): P = sum_d Q_d(z') z_var^d with Q_d in
    /// the remaining n-1 variables, ascending in d.
    std::vector<Polynomial> coefficients_in_variable(int var) const {
        if (var < 0 || var >= n_) throw std::out_of_range("coefficients_in_variable: index");
        if (n_ < 2) throw std::logic_error("coefficients_in_variable: needs n >= 2");
        int dmax = 0;
        for (const auto& [alpha, c] : terms_) {
            (void)c;
            dmax = std::max(dmax, alpha[var]);
        }
        std::vector<Polynomial> out(static_cast<std::size_t>(dmax) + 1, Polynomial(n_ - 1));
        if (terms_.empty()) return {Polynomial(n_ - 1)};
        MultiIndex rest(static_cast<std::size_t>(n_) - 1);
        for (const auto& [alpha, c] : terms_) {
            int vi = 0;
            for (int j = 0; j < n_; ++j)
                if (j != var) rest[static_cast<std::size_t>(vi++)] = alpha[j];
            auto& q = out[static_cast<std::size_t>(alpha[var])];
            auto [it, inserted] = q.terms_.emplace(rest, c);
            if (!inserted) it->second += c;
        }
        return out;
    }

    static Complex ipow(Complex z, int e) {
        Complex r(1.0, 0.0);
        while (e > 0) {
            if (e & 1) r *= z;
            z *= z;
            e >>= 1;
        }
        return r;
    }

private:
    static int check_n(int n) {
        if (n < 1) throw std::invalid_argument("polynomial: need n >= 1 variables");
        return n;
    }
    void check_same_n(const Polynomial& rhs) const {
        if (n_ != rhs.n_) throw std::invalid_argument("polynomial arithmetic: dimension mismatch");
    }
    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (std::abs(it->second) == 0.0)
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    int n_;
    TermMap terms_;
};

/// Termwise comparison with relative tolerance on coefficients; indices must
/// match exactly up to terms whose coefficients are below the absolute floor.
inline bool approx_equal(const Polynomial& a, const Polynomial& b, double rel_tol = 1e-12,
                         double abs_floor = 1e-300) {
    if (a.variables() != b.variables()) return false;
    auto scale = [](const Polynomial& p) {
        double m = 0.0;
        for (const auto& [alpha, c] : p.terms()) {
            (void)alpha;
            m = std::max(m, std::abs(c));
        }
        return m;
    };
    double tol = rel_tol * std::max(scale(a), scale(b)) + abs_floor;
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    while (ia != a.terms().end() || ib != b.terms().end()) {
        if (ia != a.terms().end() && (ib == b.terms().end() || ia->first < ib->first)) {
            if (std::abs(ia->second) > tol) return false;
            ++ia;
        } else if (ib != b.terms().end() && (ia == a.terms().end() || ib->first < ia->first)) {
            if (std::abs(ib->second) > tol) return false;
            ++ib;
        } else {
            if (std::abs(ia->second - ib->second) > tol) return false;
            ++ia;
            ++ib;
        }
    }
    return true;
}

}  // namespace torusnorms
