#pragma once

/*
 * L^p norms, Mahler measures and Luxemburg norms on the n-torus.
 *
 * Dispatch: p = 2 is Parseval, other even integer p applies Parseval to
 * P^(p/2) (exact up to rounding), anything else integrates |P|^p on doubling
 * tensor grids.  The univariate Mahler measure is a root product; in several
 * variables it splits against the last variable as
 *   log M(P) = log M(lc) + mean_{theta'} sum_i log max(1, |alpha_i(theta')|)
 * with lc the leading coefficient polynomial and alpha_i the roots of the
 * one-variable slice, so every factor is either recursive or root-exact.
 * The split stays accurate where a raw log|P| quadrature stalls, namely when
 * P vanishes somewhere on the torus.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "torusnorms/norm_result.hpp"
#include "torusnorms/polynomial.hpp"
#include "torusnorms/quadrature.hpp"
#include "torusnorms/roots.hpp"

namespace torusnorms {

/// ||P||_p for even integer p via Parseval applied to P^(p/2).
inline NormResult lp_norm_exact_even(const Polynomial& p, int even_p) {
    if (even_p < 2 || (even_p & 1) != 0)
        throw std::invalid_argument("lp_norm_exact_even: p must be an even integer >= 2");
    NormResult res;
    res.method = (even_p == 2) ? NormMethod::exact_parseval : NormMethod::exact_even_convolution;
    double l2 = p.pow(even_p / 2).coefficient_functionals().parseval_l2;
    res.value = std::pow(l2, 2.0 / static_cast<double>(even_p));
    res.error_estimate = 8.0 * std::numeric_limits<double>::epsilon() * res.value;
    res.converged = true;
    return res;
}

namespace normdetail {

/// P^half stays small enough for the convolution path, judged either by the
/// dense coefficient box or by the raw count of term-by-term products (the
/// latter admits sparse polynomials in many variables).
inline bool even_power_feasible(const Polynomial& p, int half) {
    DegreeProfile prof = p.degree_profile();
    if (prof.is_zero_sentinel()) return true;
    long double dense = 1.0L;
    for (int d : prof.per_variable) {
        dense *= static_cast<long double>(d) * half + 1.0L;
        if (dense > static_cast<long double>(1 << 22)) break;
    }
    if (dense <= static_cast<long double>(1 << 22)) return true;
    long double products = 1.0L;
    for (int i = 0; i < half; ++i) {
        products *= static_cast<long double>(p.term_count());
        if (products > static_cast<long double>(1 << 23)) return false;
    }
    return true;
}

}  // namespace normdetail

inline NormResult lp_norm(double p, const Polynomial& poly, const QuadratureSpec& spec) {
    if (!(p > 0.0)) throw std::invalid_argument("lp_norm: p must be positive");
    if (poly.is_zero()) {
        NormResult res;
        res.method = NormMethod::exact_parseval;
        res.converged = true;
        return res;
    }
    double r = std::round(p);
    bool integral = std::abs(p - r) < 1e-12;
    if (integral && r == 2.0) {
        NormResult res;
        res.method = NormMethod::exact_parseval;
        res.value = poly.coefficient_functionals().parseval_l2;
        res.error_estimate = 4.0 * std::numeric_limits<double>::epsilon() * res.value;
        res.converged = true;
        return res;
    }
    if (integral && r >= 4.0 && r <= 16.0 && static_cast<long>(r) % 2 == 0 &&
        normdetail::even_power_feasible(poly, static_cast<int>(r) / 2))
        return lp_norm_exact_even(poly, static_cast<int>(r));

    PowerIntegrand f(p);
    NormResult res = adaptive_mean(poly, f, spec, 0.5);
    double mean = res.value;
    if (!(mean > 0.0)) {
        res.value = 0.0;
        return res;
    }
    double rel_mean = res.error_estimate / mean;
    res.value = std::pow(mean, 1.0 / p);
    res.error_estimate = res.value * rel_mean / p;
    return res;
}

inline NormResult lp_norm(double p, const Polynomial& poly) {
    return lp_norm(p, poly, QuadratureSpec::defaults_for(poly.variables()));
}

/// exp of the mean of log|P|; direct quadrature, adequate only when P stays
/// away from zero on the torus (kept as an independent cross-check).
inline NormResult mahler_log_quadrature(const Polynomial& p, const QuadratureSpec& spec) {
    if (p.is_zero()) throw std::invalid_argument("mahler measure: zero polynomial");
    LogIntegrand li;
    NormResult q = adaptive_mean(p, li, spec, 0.5, 1.0);
    NormResult res;
    res.method = NormMethod::quadrature;
    res.value = std::exp(q.value);
    res.error_estimate = res.value * q.error_estimate;
    res.converged = q.converged;
    res.clamped_nodes = li.clamped;
    res.warning = !q.converged;
    return res;
}

inline NormResult mahler_log_quadrature(const Polynomial& p) {
    return mahler_log_quadrature(p, QuadratureSpec::defaults_for(p.variables()));
}

/// M(P) = |lc| prod max(1, |alpha_i|)^mult from the root clusters.
inline NormResult mahler_univariate(const Polynomial& p, double root_tol = 1e-10) {
    if (p.variables() != 1) throw std::invalid_argument("mahler_univariate: univariate only");
    if (p.is_zero()) throw std::invalid_argument("mahler measure: zero polynomial");
    std::vector<Complex> c = p.dense_coefficients();
    if (c.size() == 1) {
        NormResult res;
        res.method = NormMethod::exact_roots;
        res.value = std::abs(c[0]);
        res.error_estimate = 2.0 * std::numeric_limits<double>::epsilon() * res.value;
        res.converged = true;
        return res;
    }
    RootsResult rr = roots_from_coefficients(c, root_tol);
    if (!rr.converged) {
        QuadratureSpec fallback{256, 1 << 18, 1e-9};
        NormResult res = mahler_log_quadrature(p, fallback);
        res.warning = true;
        return res;
    }
    NormResult res;
    res.method = NormMethod::exact_roots;
    double logm = std::log(std::abs(rr.leading));
    int deg = 0;
    for (const RootCluster& cl : rr.clusters) {
        double rad = std::abs(cl.center);
        double dist = std::abs(rad - 1.0);
        // a root resolvably close to (but not on) the unit circle makes the
        // max(1, .) branch choice uncertain at the root-accuracy scale
        if (dist != 0.0 && dist < 1e-9) res.warning = true;
        if (rad > 1.0) logm += cl.multiplicity * std::log(rad);
        deg += cl.multiplicity;
    }
    res.value = std::exp(logm);
    res.error_estimate =
        res.value * deg * (rr.max_residual + 8.0 * std::numeric_limits<double>::epsilon());
    res.converged = true;
    return res;
}

namespace normdetail {

/// Mean over the outer torus of sum_i log max(1, |alpha_i(theta')|), the
/// alpha_i being roots of the last-variable slice with coefficient
/// polynomials `coeffs`.  Midpoint grids keep coefficient zeros off nodes;
/// the integrand has integrable -log singularities where the leading
/// coefficient vanishes, so convergence is judged on an absolute scale.
inline NormResult outer_log_root_mean(const std::vector<Polynomial>& coeffs,
                                      const QuadratureSpec& spec) {
    spec.validate();
    const int n_outer = coeffs[0].variables();
    NormResult res;
    res.method = NormMethod::iterated_mixed;
    double prev = 0.0;
    bool have_prev = false;
    for (int npts = spec.base_points_per_dim;; npts *= 2) {
        std::vector<int> pts(static_cast<std::size_t>(n_outer), npts);
        std::vector<std::vector<Complex>> cvals;
        cvals.reserve(coeffs.size());
        for (const Polynomial& q : coeffs) cvals.push_back(grid_evaluate(q, pts, 0.5));
        const std::size_t total = cvals[0].size();

        std::vector<double> node_vals(total, 0.0);
        long clamped = 0;
        std::vector<Complex> slice(coeffs.size());
        for (std::size_t t = 0; t < total; ++t) {
            for (std::size_t j = 0; j < coeffs.size(); ++j) slice[j] = cvals[j][t];
            std::size_t top = slice.size();
            while (top > 0 && std::abs(slice[top - 1]) == 0.0) --top;
            if (top <= 1) {
                // slice degenerates to degree <= 0: no roots contribute
                if (top == 0) ++clamped;
                continue;
            }
            std::vector<Complex> sc(slice.begin(), slice.begin() + static_cast<std::ptrdiff_t>(top));
            RootsResult rr = roots_from_coefficients(std::move(sc), 1e-10);
            if (!rr.converged) ++clamped;
            double s = 0.0;
            for (const RootCluster& cl : rr.clusters) {
                double rad = std::abs(cl.center);
                if (rad > 1.0) s += cl.multiplicity * std::log(rad);
            }
            node_vals[t] = s;
        }
        double est = pairwise_sum(node_vals) / static_cast<double>(total);
        res.clamped_nodes = clamped;
        if (have_prev) {
            double gap = std::abs(est - prev);
            res.value = est;
            res.error_estimate = gap;
            if (gap <= spec.rel_tol * std::max(std::abs(est), 1.0)) {
                res.converged = true;
                return res;
            }
        } else {
            res.value = est;
        }
        prev = est;
        have_prev = true;
        if (npts * 2 > spec.max_points_per_dim) {
            res.converged = false;
            if (res.error_estimate == 0.0) res.error_estimate = std::max(std::abs(est), 1e-3);
            return res;
        }
    }
}

}  // namespace normdetail

/// Mahler measure in any dimension.  Univariate polynomials go through the
/// root product; otherwise the measure splits against the last variable into
/// a recursive leading-coefficient factor and an outer mean of inner root
/// products (see the header comment).
inline NormResult mahler_measure(const Polynomial& p, const QuadratureSpec& spec) {
    if (p.is_zero()) throw std::invalid_argument("mahler measure: zero polynomial");
    const int n = p.variables();
    if (n == 1) return mahler_univariate(p);
    std::vector<Polynomial> coeffs = p.coefficients_in_variable(n - 1);
    if (coeffs.size() == 1) return mahler_measure(coeffs[0], spec);

    NormResult lead = mahler_measure(coeffs.back(), spec);
    NormResult outer = normdetail::outer_log_root_mean(coeffs, spec);
    NormResult res;
    res.method = NormMethod::iterated_mixed;
    res.value = lead.value * std::exp(outer.value);
    double rel = outer.error_estimate;
    if (lead.value > 0.0) rel += lead.error_estimate / lead.value;
    res.error_estimate = res.value * rel;
    res.converged = lead.converged && outer.converged;
    res.clamped_nodes = lead.clamped_nodes + outer.clamped_nodes;
    res.warning = lead.warning || outer.warning;
    return res;
}

inline NormResult mahler_measure(const Polynomial& p) {
    return mahler_measure(p, QuadratureSpec::defaults_for(p.variables()));
}

struct OrliczSpec {
    double alpha = 1.0;  // Young function exp(t^alpha) - 1
    double rel_tol = 1e-6;
    int base_points_per_dim = 0;  // 0: take the dimension defaults
    int max_points_per_dim = 0;

    void validate() const {
        if (!(alpha > 0.0) || alpha > 1.0)
            throw std::invalid_argument("orlicz: alpha must lie in (0, 1]");
        if (!(rel_tol > 0.0)) throw std::invalid_argument("orlicz: rel_tol must be positive");
    }
};

/// Luxemburg norm inf{ lambda > 0 : mean(exp((|P|/lambda)^alpha) - 1) <= 1 }.
/// Bisection runs over stored |P| grid values per refinement level; the
/// returned lambda is the certified upper bracket end, so its modular is <= 1.
inline NormResult orlicz_luxemburg_norm(const Polynomial& p, const OrliczSpec& ospec) {
    ospec.validate();
    NormResult res;
    res.method = NormMethod::quadrature;
    if (p.is_zero()) {
        res.converged = true;
        return res;
    }
    const int n = p.variables();
    const QuadratureSpec dims = QuadratureSpec::defaults_for(n);
    const int base = ospec.base_points_per_dim > 0 ? ospec.base_points_per_dim
                                                   : dims.base_points_per_dim;
    const int maxp = ospec.max_points_per_dim > 0 ? ospec.max_points_per_dim
                                                  : dims.max_points_per_dim;
    if (base < 8 || maxp < base) throw std::invalid_argument("orlicz: bad grid bounds");

    const double inf = std::numeric_limits<double>::infinity();
    // t = (v/lambda)^alpha; the grids get large, so dodge pow for the
    // exponents 1, 1/2, 1/3, 1/4 the checks actually use
    enum class Root { one, half, third, quarter, general };
    Root root = Root::general;
    if (ospec.alpha == 1.0) root = Root::one;
    else if (ospec.alpha == 0.5) root = Root::half;
    else if (std::abs(ospec.alpha - 1.0 / 3.0) < 1e-15) root = Root::third;
    else if (ospec.alpha == 0.25) root = Root::quarter;
    auto arg_power = [&](double u) -> double {
        switch (root) {
            case Root::one: return u;
            case Root::half: return std::sqrt(u);
            case Root::third: return std::cbrt(u);
            case Root::quarter: return std::sqrt(std::sqrt(u));
            case Root::general: return std::pow(u, ospec.alpha);
        }
        return 0.0;
    };
    auto modular = [&](const std::vector<double>& vals, double lambda) -> double {
        double inv = 1.0 / lambda;
        std::vector<double> parts;
        parts.reserve(vals.size() / 256 + 2);
        double chunk = 0.0;
        std::size_t fill = 0;
        for (double v : vals) {
            double t = arg_power(v * inv);
            if (t > 700.0) return inf;  // exp overflow: modular certainly > 1
            chunk += std::expm1(t);
            if (++fill == 256) {
                parts.push_back(chunk);
                chunk = 0.0;
                fill = 0;
            }
        }
        parts.push_back(chunk);
        return pairwise_sum(parts) / static_cast<double>(vals.size());
    };

    // hint > 0 warm-starts the bracket from the previous refinement level
    auto level_norm = [&](const std::vector<double>& vals, double hint) -> double {
        double vmax = *std::max_element(vals.begin(), vals.end());
        if (vmax == 0.0) return 0.0;
        double mean = pairwise_sum(vals) / static_cast<double>(vals.size());
        double hi = std::max(mean, vmax / std::pow(700.0, 1.0 / ospec.alpha));
        if (hint > 0.0) hi = std::max(hi, 1.01 * hint);
        int guard = 0;
        double ghi = modular(vals, hi) - 1.0;
        while (ghi > 0.0 && guard++ < 400) {
            hi *= 2.0;
            ghi = modular(vals, hi) - 1.0;
        }
        double lo = hint > 0.0 && 0.99 * hint < hi ? 0.99 * hint : 0.5 * hi;
        double glo = modular(vals, lo) - 1.0;
        guard = 0;
        while (lo > 1e-300 && glo <= 0.0 && guard++ < 400) {
            hi = lo;
            ghi = glo;
            lo *= 0.5;
            glo = modular(vals, lo) - 1.0;
        }
        // Illinois false position on modular(lambda) - 1: monotone decreasing
        // in lambda, so the bracket keeps glo > 0 > ghi.  Falls back to
        // bisection while the low end still overflows.  The returned value is
        // the feasible (hi) end, so its modular stays <= 1.
        int side = 0;
        for (int it = 0; it < 200 && hi - lo > 0.05 * ospec.rel_tol * hi; ++it) {
            double mid;
            if (std::isfinite(glo) && ghi < glo)
                mid = hi - ghi * (hi - lo) / (ghi - glo);
            else
                mid = 0.5 * (lo + hi);
            double w = 0.01 * (hi - lo);
            mid = std::min(std::max(mid, lo + w), hi - w);
            double gm = modular(vals, mid) - 1.0;
            if (gm <= 0.0) {
                hi = mid;
                ghi = gm;
                if (side == -1 && std::isfinite(glo)) glo *= 0.5;
                side = -1;
            } else {
                lo = mid;
                glo = gm;
                if (side == 1) ghi *= 0.5;
                side = 1;
            }
        }
        return hi;
    };

    // grids are stored densely for the bisection, so cap the total size in
    // addition to the per-dimension cap (2^24 doubles = 128 MiB)
    auto level_fits = [&](int npts) {
        double total = 1.0;
        for (int j = 0; j < n; ++j) total *= static_cast<double>(npts);
        return npts <= maxp && total <= static_cast<double>(std::size_t{1} << 24);
    };

    double prev = 0.0;
    bool have_prev = false;
    for (int npts = base;; npts *= 2) {
        std::vector<int> pts(static_cast<std::size_t>(n), npts);
        std::vector<double> vals = grid_abs_values(p, pts, 0.5);
        double lam = level_norm(vals, have_prev ? prev : 0.0);
        if (have_prev) {
            double gap = std::abs(lam - prev);
            res.value = lam;
            res.error_estimate = gap + 0.05 * ospec.rel_tol * lam;
            if (gap <= ospec.rel_tol * std::max(lam, 1e-300)) {
                res.converged = true;
                return res;
            }
        } else {
            res.value = lam;
        }
        prev = lam;
        have_prev = true;
        if (!level_fits(npts * 2)) {
            res.converged = false;
            if (res.error_estimate == 0.0) res.error_estimate = lam;
            return res;
        }
    }
}

}  // namespace torusnorms
