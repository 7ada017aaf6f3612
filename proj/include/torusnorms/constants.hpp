#pragma once

/*
 * Gamma-family special functions and the sharp comparison constants.
 *
 * The norm/measure ratio constant lambda(p, m) is computed two independent
 * ways: a closed gamma form and a direct quadrature of |cos|^(mp) with one
 * Richardson step at the known singular order.  Everything overflow-prone is
 * carried in log space; linear values are exposed where they fit a double.
 */

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "torusnorms/rng.hpp"

namespace torusnorms {

/// log Gamma(x) for x > 0, Lanczos approximation (g = 607/128, 15 terms),
/// relative accuracy around 1e-14 over the whole positive axis.
inline double log_gamma_fn(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("log_gamma_fn: needs x > 0");
    static const double g = 607.0 / 128.0;
    static const double coef[15] = {
        0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
        14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
        0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
        -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
        0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
    };
    double s = coef[0];
    for (int k = 1; k < 15; ++k) s += coef[k] / (x - 1.0 + k);
    double t = x + g - 0.5;
    return 0.5 * std::log(2.0 * kPi) + (x - 0.5) * std::log(t) - t + std::log(s);
}

inline double gamma_fn(double x) { return std::exp(log_gamma_fn(x)); }

/// Digamma psi(x) = d/dx log Gamma(x) for x > 0, differentiated Lanczos form.
inline double digamma_fn(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("digamma_fn: needs x > 0");
    static const double g = 607.0 / 128.0;
    static const double coef[15] = {
        0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
        14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
        0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
        -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
        0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
    };
    double s = coef[0], ds = 0.0;
    for (int k = 1; k < 15; ++k) {
        double d = x - 1.0 + k;
        s += coef[k] / d;
        ds -= coef[k] / (d * d);
    }
    double t = x + g - 0.5;
    return std::log(t) + (x - 0.5) / t - 1.0 + ds / s;
}

/// Golden-section minimizer for a unimodal function on [a, b].
template <class F>
double golden_section_minimize(F&& f, double a, double b, double tol = 1e-10) {
    if (!(a < b)) throw std::invalid_argument("golden_section_minimize: need a < b");
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

/// Location of the positive minimum of Gamma.  Golden section brackets the
/// minimum, but Gamma is flat to machine precision within ~3e-8 of it, so
/// value comparisons go blind before 1e-8; inside the bracket the digamma
/// root is well conditioned and bisects cleanly to full precision.
inline double gamma_argmin() {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 1.0, b = 2.0;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = gamma_fn(x1), f2 = gamma_fn(x2);
    while (b - a > 1e-3) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = gamma_fn(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = gamma_fn(x2);
        }
    }
    double lo = a - 1e-3, hi = b + 1e-3;  // re-pad: the sign change must be inside
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        double mid = 0.5 * (lo + hi);
        (digamma_fn(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct LambdaValue {
    double log_gamma_form = 0.0;
    double log_integral_form = 0.0;
    double gamma_form = 0.0;     // exp(log...), +inf when it does not fit
    double integral_form = 0.0;
    double consistency_gap = 0.0;  // |log gamma form - log integral form|
    bool integral_converged = false;
};

namespace constdetail {

/// Mean over [0, 2pi) of |cos(theta/2)|^s by midpoint trapezoid with one
/// Richardson step at order q = min(2, 1+s), the order forced by the |t|^s
/// singularity of the integrand at theta = pi.
inline double cos_power_mean(double s, double rel_tol, bool& converged) {
    double q = std::min(2.0, 1.0 + s);
    double weight = std::pow(2.0, q) - 1.0;
    double prev_plain = 0.0, prev_rich = 0.0;
    bool have_plain = false, have_rich = false;
    converged = false;
    for (int npts = 64; npts <= (1 << 21); npts *= 2) {
        double sum = 0.0;
        for (int k = 0; k < npts; ++k) {
            double theta = kTwoPi * (k + 0.5) / npts;
            double c = std::abs(std::cos(0.5 * theta));
            sum += (c == 0.0 && s == 0.0) ? 1.0 : std::pow(c, s);
        }
        double plain = sum / npts;
        if (have_plain) {
            double rich = plain + (plain - prev_plain) / weight;
            if (have_rich && std::abs(rich - prev_rich) <= rel_tol * std::abs(rich)) {
                converged = true;
                return rich;
            }
            prev_rich = rich;
            have_rich = true;
        }
        prev_plain = plain;
        have_plain = true;
    }
    return prev_rich;
}

}  // namespace constdetail

/// Sharp constant lambda(p, m) = 2^m pi^{-1/(2p)}
/// (Gamma((mp+1)/2) / Gamma((mp+2)/2))^{1/p}, equal to the p-mean of
/// |1+z|^m over the circle; both forms are returned with their gap.
inline LambdaValue arestov_lambda(double p, int m, double rel_tol = 1e-10) {
    if (!(p > 0.0)) throw std::invalid_argument("arestov_lambda: p must be positive");
    if (m < 0) throw std::invalid_argument("arestov_lambda: m must be >= 0");
    double s = static_cast<double>(m) * p;
    LambdaValue v;
    v.log_gamma_form = m * std::log(2.0) - std::log(kPi) / (2.0 * p) +
                       (log_gamma_fn((s + 1.0) / 2.0) - log_gamma_fn((s + 2.0) / 2.0)) / p;
    double mean = constdetail::cos_power_mean(s, rel_tol, v.integral_converged);
    v.log_integral_form = m * std::log(2.0) + std::log(mean) / p;
    v.gamma_form = std::exp(v.log_gamma_form);
    v.integral_form = std::exp(v.log_integral_form);
    v.consistency_gap = std::abs(v.log_gamma_form - v.log_integral_form);
    return v;
}

/// Leading-order form (2/(pi p))^{1/(2p)} 2^m m^{-1/(2p)} of lambda(p, m),
/// in log space.
inline double arestov_lambda_asymptotic_log(double p, int m) {
    if (!(p > 0.0) || m < 1) throw std::invalid_argument("lambda asymptotic: p > 0, m >= 1");
    return m * std::log(2.0) + (std::log(2.0 / (kPi * p)) - std::log(static_cast<double>(m))) /
                                   (2.0 * p);
}

/// Strict bound lambda(k/m, m) < 2^m, i.e. the p-mean of |cos|^(mp) is < 1.
/// Returns the positive log-space margin m log 2 - log lambda(k/m, m).
inline double lambda_power_bound_margin(int k, int m) {
    if (k < 1 || m < 1) throw std::invalid_argument("lambda_power_bound_margin: k, m >= 1");
    double p = static_cast<double>(k) / static_cast<double>(m);
    double s = static_cast<double>(k);  // m * p
    double log_lambda_minus_mlog2 =
        -std::log(kPi) / (2.0 * p) +
        (log_gamma_fn((s + 1.0) / 2.0) - log_gamma_fn((s + 2.0) / 2.0)) / p;
    return -log_lambda_minus_mlog2;
}

/// C(2m, m) exactly; fits unsigned long long for m <= 31.
inline unsigned long long central_binomial(int m) {
    if (m < 0 || m > 31) throw std::invalid_argument("central_binomial: need 0 <= m <= 31");
    unsigned long long r = 1;
    for (int i = 1; i <= m; ++i) r = r * static_cast<unsigned long long>(m + i) /
                                     static_cast<unsigned long long>(i);
    return r;
}

struct ComparisonBounds {
    double lower = 1.0;  // sqrt(q/p)
    double upper = 1.0;  // sqrt(q/min(p,2))
};

/// Two-sided bounds on the best constant in ||P||_q <= C ||P||_p over all
/// dimensions, for 0 < p < q.
inline ComparisonBounds comparison_constants(double p, double q) {
    if (!(p > 0.0) || !(q > p))
        throw std::invalid_argument("comparison_constants: need 0 < p < q");
    ComparisonBounds b;
    b.lower = std::sqrt(q / p);
    b.upper = std::sqrt(q / std::min(p, 2.0));
    return b;
}

/// log-space lower bound Gamma(qm/2+1)^{1/q} / Gamma(pm/2+1)^{1/p} for the
/// best constant restricted to degree-m homogeneous parts, and its sqrt(q/p)^m
/// upper companion.
inline double kwapien_lower_log(double p, double q, int m) {
    if (!(p > 0.0) || !(q > p) || m < 0)
        throw std::invalid_argument("kwapien bounds: need 0 < p < q, m >= 0");
    return log_gamma_fn(q * m / 2.0 + 1.0) / q - log_gamma_fn(p * m / 2.0 + 1.0) / p;
}

inline double kwapien_upper_log(double p, double q, int m) {
    if (!(p > 0.0) || !(q > p) || m < 0)
        throw std::invalid_argument("kwapien bounds: need 0 < p < q, m >= 0");
    return 0.5 * m * std::log(q / p);
}

/// Same lower bound with each Gamma replaced by its Stirling main term
/// sqrt(2 pi x) (x/e)^x for Gamma(x+1); useful as an independent cross-check.
inline double kwapien_lower_stirling_log(double p, double q, int m) {
    if (!(p > 0.0) || !(q > p) || m < 1)
        throw std::invalid_argument("kwapien stirling: need 0 < p < q, m >= 1");
    auto log_stirling = [](double x) { return 0.5 * std::log(2.0 * kPi * x) + x * (std::log(x) - 1.0); };
    return log_stirling(q * m / 2.0) / q - log_stirling(p * m / 2.0) / p;
}

struct StirlingBracket {
    double log_lower = 0.0;  // log of sqrt(2 pi x) (x/e)^x
    double log_upper = 0.0;  // log_lower + 1/(12x)
};

/// Two-sided bracket sqrt(2 pi x)(x/e)^x <= Gamma(x+1) <= ... e^{1/(12x)}.
inline StirlingBracket stirling_bracket(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("stirling_bracket: needs x > 0");
    StirlingBracket b;
    b.log_lower = 0.5 * std::log(2.0 * kPi * x) + x * (std::log(x) - 1.0);
    b.log_upper = b.log_lower + 1.0 / (12.0 * x);
    return b;
}

/// 1 / (theta^theta (1-theta)^(1-theta)) on [0, 1] with the 0 log 0 = 0
/// convention; equals 2 at theta = 1/2 and 1 at the endpoints.
inline double interpolation_constant(double theta) {
    if (theta < 0.0 || theta > 1.0)
        throw std::invalid_argument("interpolation_constant: theta in [0, 1]");
    auto xlogx = [](double t) { return t > 0.0 ? t * std::log(t) : 0.0; };
    return std::exp(-(xlogx(theta) + xlogx(1.0 - theta)));
}

}  // namespace torusnorms
