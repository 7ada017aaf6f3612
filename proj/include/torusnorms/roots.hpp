#pragma once

/*
 * Univariate complex root finding.
 *
 * Aberth-Ehrlich simultaneous iteration with Newton-polygon initial radii and
 * deterministic restarts.  The published contract is the scaled residual
 *   |P(a_i)| / (|lc| * max(1,|a_i|)^deg) < tol.
 *
 * A post-pass groups root clusters and replaces each validated cluster by its
 * multiplicity-aware center (Newton-polished on P^(k-1)).  Bare double
 * precision leaves an m-fold root smeared over a disk of radius ~eps^(1/m),
 * which is fatal for Mahler products when the root sits on the unit circle;
 * the polished center is accurate to roundoff.  A merge is committed only
 * when the lower Taylor coefficients vanish at the center to within
 * coefficient rounding, so genuinely separated roots are never disturbed.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "torusnorms/polynomial.hpp"

namespace torusnorms {

struct RootCluster {
    Complex center;
    int multiplicity = 1;
};

struct RootsResult {
    std::vector<Complex> roots;  // degree entries, clusters expanded
    std::vector<RootCluster> clusters;
    Complex leading{1.0, 0.0};
    double max_residual = 0.0;
    bool converged = false;
    int iterations = 0;
};

namespace rootdetail {

inline Complex horner(const std::vector<Complex>& c, Complex z) {
    Complex acc = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * z + c[i];
    return acc;
}

inline void horner_pair(const std::vector<Complex>& c, Complex z, Complex& p, Complex& dp) {
    p = c.back();
    dp = Complex(0.0, 0.0);
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[i];
    }
}

inline std::vector<Complex> derivative(const std::vector<Complex>& c) {
    if (c.size() <= 1) return {Complex(0.0, 0.0)};
    std::vector<Complex> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = static_cast<double>(i) * c[i];
    return d;
}

/// Initial guesses on annuli taken from the upper convex hull of
/// (i, log|c_i|); standard staggered phases break symmetry.
inline std::vector<Complex> initial_points(const std::vector<Complex>& c, double scale,
                                           double phase) {
    int m = static_cast<int>(c.size()) - 1;
    std::vector<int> hull;  // indices of hull vertices, ascending
    std::vector<double> logc(c.size(), -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < c.size(); ++i)
        if (std::abs(c[i]) > 0.0) logc[i] = std::log(std::abs(c[i]));
    for (int i = 0; i <= m; ++i) {
        if (logc[static_cast<std::size_t>(i)] == -std::numeric_limits<double>::infinity() &&
            i != 0 && i != m)
            continue;
        while (hull.size() >= 2) {
            int a = hull[hull.size() - 2], b = hull[hull.size() - 1];
            double la = logc[static_cast<std::size_t>(a)], lb = logc[static_cast<std::size_t>(b)];
            double li = logc[static_cast<std::size_t>(i)];
            // keep b only if it lies strictly above chord a->i
            if ((lb - la) * (i - a) > (li - la) * (b - a) + 1e-30) break;
            hull.pop_back();
        }
        hull.push_back(i);
    }
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(m));
    int ring = 0;
    for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
        int i1 = hull[e], i2 = hull[e + 1];
        double l1 = logc[static_cast<std::size_t>(i1)], l2 = logc[static_cast<std::size_t>(i2)];
        double r;
        if (l1 == -std::numeric_limits<double>::infinity())
            r = 1e-8;  // exact zero roots are deflated before this point
        else
            r = std::exp((l1 - l2) / static_cast<double>(i2 - i1));
        r = std::min(std::max(r * scale, 1e-12), 1e12);
        int cnt = i2 - i1;
        for (int q = 0; q < cnt; ++q) {
            double ang = kTwoPi * (static_cast<double>(q) + 0.5 * ring) / static_cast<double>(cnt) +
                         0.43 + phase;
            pts.emplace_back(r * std::cos(ang), r * std::sin(ang));
        }
        ++ring;
    }
    while (static_cast<int>(pts.size()) < m) pts.emplace_back(1.0, 0.1);
    return pts;
}

inline double scaled_residual(const std::vector<Complex>& full, Complex lead, int deg, Complex a) {
    double grow = std::pow(std::max(1.0, std::abs(a)), deg);
    return std::abs(horner(full, a)) / (std::abs(lead) * grow);
}

}  // namespace rootdetail

/// All complex roots of the ascending coefficient vector; needs degree >= 1
/// after dropping exact-zero leading entries.
inline RootsResult roots_from_coefficients(std::vector<Complex> c, double tol = 1e-10) {
    while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
    if (c.size() < 2)
        throw std::invalid_argument("roots: need degree >= 1 with nonzero leading coefficient");
    RootsResult res;
    res.leading = c.back();
    int deg_full = static_cast<int>(c.size()) - 1;
    const std::vector<Complex> full = c;

    // deflate exact zero roots
    int zero_roots = 0;
    while (std::abs(c[static_cast<std::size_t>(zero_roots)]) == 0.0) ++zero_roots;
    std::vector<Complex> a(c.begin() + zero_roots, c.end());
    for (auto& v : a) v /= res.leading;  // monic
    int m = static_cast<int>(a.size()) - 1;

    std::vector<Complex> roots;
    roots.reserve(static_cast<std::size_t>(m));
    if (m == 1) {
        roots.push_back(-a[0]);
    } else if (m == 2) {
        Complex b = a[1], c0 = a[0];
        Complex d = std::sqrt(b * b - 4.0 * c0);
        if (std::real(std::conj(b) * d) < 0.0) d = -d;
        Complex q = -0.5 * (b + d);
        roots.push_back(q);
        roots.push_back(std::abs(q) > 0.0 ? c0 / q : -b);
    } else if (m > 0) {
        double best_res = std::numeric_limits<double>::infinity();
        std::vector<Complex> best;
        for (int attempt = 0; attempt < 3 && best_res >= tol; ++attempt) {
            std::vector<Complex> z = rootdetail::initial_points(
                a, std::pow(1.9, attempt), 0.77 * attempt);
            int iters = 0;
            for (; iters < 300; ++iters) {
                double max_step = 0.0;
                for (int i = 0; i < m; ++i) {
                    Complex p, dp;
                    rootdetail::horner_pair(a, z[static_cast<std::size_t>(i)], p, dp);
                    if (std::abs(p) == 0.0) continue;
                    Complex nw;
                    if (std::abs(dp) == 0.0)
                        nw = Complex(0.001, 0.002) * (1.0 + std::abs(z[static_cast<std::size_t>(i)]));
                    else
                        nw = p / dp;
                    Complex s(0.0, 0.0);
                    for (int j = 0; j < m; ++j) {
                        if (j == i) continue;
                        Complex diff = z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
                        if (std::abs(diff) < 1e-290) diff = Complex(1e-290, 0.0);
                        s += 1.0 / diff;
                    }
                    Complex denom = 1.0 - nw * s;
                    Complex w = (std::abs(denom) > 1e-12) ? nw / denom : nw;
                    double lim = 0.5 * (1.0 + std::abs(z[static_cast<std::size_t>(i)]));
                    if (std::abs(w) > lim) w *= lim / std::abs(w);
                    z[static_cast<std::size_t>(i)] -= w;
                    max_step = std::max(max_step,
                                        std::abs(w) / (1.0 + std::abs(z[static_cast<std::size_t>(i)])));
                }
                if (max_step < 5e-15) break;
                if ((iters & 7) == 7) {
                    double mr = 0.0;
                    for (const auto& r : z)
                        mr = std::max(mr, rootdetail::scaled_residual(full, res.leading, deg_full, r));
                    if (mr < std::max(1e-12, 0.01 * tol)) break;
                }
            }
            res.iterations += iters;
            double mr = 0.0;
            for (const auto& r : z)
                mr = std::max(mr, rootdetail::scaled_residual(full, res.leading, deg_full, r));
            if (mr < best_res) {
                best_res = mr;
                best = z;
            }
        }
        roots = std::move(best);
    }

    // ---- cluster pass -----------------------------------------------------
    // Double precision smears a k-fold root over a stall disk of radius about
    // r* = (noise/|c_k|)^(1/k), useless for Mahler products when the root sits
    // on the unit circle.  Candidate components are linked at the stall scale
    // for each hypothesised multiplicity (largest first); a component is
    // committed only if its spread is consistent with r* and every Taylor
    // coefficient below k vanishes at the polished center to within
    // coefficient-rounding noise, so genuinely separated roots never merge.
    double coeff_l1 = 0.0;
    for (const auto& v : a) coeff_l1 += std::abs(v);
    const double eps = std::numeric_limits<double>::epsilon();
    const double noise = 64.0 * eps * std::max(1.0, coeff_l1);

    struct Group {
        Complex center;
        int mult;
    };
    std::vector<Group> final_groups;
    const int nroots = static_cast<int>(roots.size());
    std::vector<char> assigned(roots.size(), 0);

    auto binom_d = [](int nn, int kk) {
        double r = 1.0;
        for (int i = 1; i <= kk; ++i) r *= static_cast<double>(nn - kk + i) / static_cast<double>(i);
        return r;
    };
    auto taylor_at = [&](Complex mu, int upto) {
        std::vector<double> t(static_cast<std::size_t>(upto) + 1, 0.0);
        std::vector<Complex> dj = a;
        double fact = 1.0;
        for (int j = 0; j <= upto; ++j) {
            t[static_cast<std::size_t>(j)] = std::abs(rootdetail::horner(dj, mu)) / fact;
            if (j < upto) dj = rootdetail::derivative(dj);
            fact *= static_cast<double>(j + 1);
        }
        return t;
    };

    auto try_cluster = [&](const std::vector<int>& idx) -> bool {
        const int k = static_cast<int>(idx.size());
        Complex centroid(0.0, 0.0);
        for (int i : idx) centroid += roots[static_cast<std::size_t>(i)];
        centroid /= static_cast<double>(k);
        double radius = 0.0;
        for (int i : idx)
            radius = std::max(radius, std::abs(roots[static_cast<std::size_t>(i)] - centroid));
        const double scale = std::max(1.0, std::abs(centroid));
        const double local_noise = noise * std::pow(scale, m);

        std::vector<double> tay = taylor_at(centroid, k);
        double ck = std::max(tay[static_cast<std::size_t>(k)], local_noise);
        double rstar = std::pow(local_noise / ck, 1.0 / static_cast<double>(k));
        if (rstar > 0.1 * scale) return false;   // multiplicity not resolvable here
        if (radius > 8.0 * rstar) return false;  // spread is real structure

        // Newton on P^(k-1): a k-fold root of P is a simple root there
        std::vector<Complex> dkm1 = a;
        for (int j = 0; j < k - 1; ++j) dkm1 = rootdetail::derivative(dkm1);
        Complex mu = centroid;
        for (int it = 0; it < 60; ++it) {
            Complex p, dp;
            rootdetail::horner_pair(dkm1, mu, p, dp);
            if (std::abs(dp) == 0.0) break;
            Complex step = p / dp;
            mu -= step;
            if (std::abs(step) < 1e-16 * (1.0 + std::abs(mu))) break;
        }
        if (std::abs(mu - centroid) > std::max(2.0 * radius, 4.0 * rstar)) mu = centroid;

        // a true k-fold center leaves only rounding in the lower Taylor terms
        tay = taylor_at(mu, k);
        for (int j = 0; j < k; ++j) {
            double gate = 256.0 * eps * std::max(1.0, coeff_l1) * binom_d(m, j) *
                          std::pow(scale, m - j);
            if (tay[static_cast<std::size_t>(j)] > gate) return false;
        }
        for (int i : idx) assigned[static_cast<std::size_t>(i)] = 1;
        final_groups.push_back({mu, k});
        return true;
    };

    std::vector<int> parent(roots.size());
    std::set<std::vector<int>> tested;
    for (int k_hyp = std::min(m, 32); k_hyp >= 2; --k_hyp) {
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x) {
                parent[static_cast<std::size_t>(x)] =
                    parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
                x = parent[static_cast<std::size_t>(x)];
            }
            return x;
        };
        for (int i = 0; i < nroots; ++i) {
            if (assigned[static_cast<std::size_t>(i)]) continue;
            for (int j = i + 1; j < nroots; ++j) {
                if (assigned[static_cast<std::size_t>(j)]) continue;
                double s = std::max(1.0, 0.5 * (std::abs(roots[static_cast<std::size_t>(i)]) +
                                                std::abs(roots[static_cast<std::size_t>(j)])));
                double tau = std::min(
                    4.0 * std::pow(noise * std::pow(s, m), 1.0 / static_cast<double>(k_hyp)),
                    0.1 * s);
                if (std::abs(roots[static_cast<std::size_t>(i)] -
                             roots[static_cast<std::size_t>(j)]) <= tau)
                    parent[static_cast<std::size_t>(find(i))] = find(j);
            }
        }
        std::map<int, std::vector<int>> comps;
        for (int i = 0; i < nroots; ++i)
            if (!assigned[static_cast<std::size_t>(i)]) comps[find(i)].push_back(i);
        for (auto& [rep, idx] : comps) {
            (void)rep;
            if (static_cast<int>(idx.size()) < 2) continue;
            if (!tested.insert(idx).second) continue;  // same component seen at a larger scale
            try_cluster(idx);
        }
    }

    for (int i = 0; i < nroots; ++i) {
        if (assigned[static_cast<std::size_t>(i)]) continue;
        // Newton touch-up, kept only if the residual improves
        Complex zc = roots[static_cast<std::size_t>(i)];
        for (int it = 0; it < 3; ++it) {
            Complex p, dp;
            rootdetail::horner_pair(a, zc, p, dp);
            if (std::abs(dp) == 0.0) break;
            Complex step = p / dp;
            if (std::abs(step) > 0.1 * (1.0 + std::abs(zc))) break;
            zc -= step;
        }
        Complex orig = roots[static_cast<std::size_t>(i)];
        if (rootdetail::scaled_residual(full, res.leading, deg_full, zc) >
            rootdetail::scaled_residual(full, res.leading, deg_full, orig))
            zc = orig;
        final_groups.push_back({zc, 1});
    }

    res.roots.clear();
    res.clusters.clear();
    if (zero_roots > 0) {
        res.clusters.push_back({Complex(0.0, 0.0), zero_roots});
        res.roots.insert(res.roots.end(), static_cast<std::size_t>(zero_roots), Complex(0.0, 0.0));
    }
    std::sort(final_groups.begin(), final_groups.end(), [](const Group& x, const Group& y) {
        if (std::real(x.center) != std::real(y.center))
            return std::real(x.center) < std::real(y.center);
        return std::imag(x.center) < std::imag(y.center);
    });
    for (const auto& g : final_groups) {
        res.clusters.push_back({g.center, g.mult});
        res.roots.insert(res.roots.end(), static_cast<std::size_t>(g.mult), g.center);
    }

    res.max_residual = 0.0;
    for (const auto& g : res.clusters) {
        // residual of a polished k-fold center is evaluation noise; report the
        // worst over distinct centers
        res.max_residual = std::max(
            res.max_residual, rootdetail::scaled_residual(full, res.leading, deg_full, g.center));
    }
    res.converged = res.max_residual < tol;
    return res;
}

inline RootsResult roots_univariate(const Polynomial& p, double tol = 1e-10) {
    if (p.variables() != 1) throw std::invalid_argument("roots: univariate only");
    auto c = p.dense_coefficients();
    if (c.size() < 2) throw std::invalid_argument("roots: need degree >= 1");
    return roots_from_coefficients(std::move(c), tol);
}

}  // namespace torusnorms
