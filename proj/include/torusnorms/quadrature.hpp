#pragma once

/*
 * Equispaced tensor-product quadrature on the n-torus.
 *
 * The grid mean of a trigonometric polynomial is exact once the per-dimension
 * node count exceeds its bandwidth, so trapezoid sums on doubling grids give
 * spectral accuracy for smooth integrands and a usable gap-based error
 * estimate otherwise.  Polynomial evaluation is dimension-by-dimension
 * (contract one coefficient axis per grid dimension), so a full grid sweep
 * costs O(#nodes * sum_j d_j) and never materializes the value tensor.
 * Accumulation is chunked-pairwise in a fixed order: results are
 * bit-identical for a given grid regardless of threading above this layer.
 */

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "torusnorms/norm_result.hpp"
#include "torusnorms/polynomial.hpp"
#include "torusnorms/rng.hpp"  // kTwoPi

namespace torusnorms {

struct QuadratureSpec {
    int base_points_per_dim = 64;
    int max_points_per_dim = 4096;  // refinement doubles until this cap
    double rel_tol = 1e-8;

    static QuadratureSpec defaults_for(int n) {
        if (n <= 2) return {64, 4096, 1e-8};
        return {64, 512, 1e-6};
    }

    void validate() const {
        if (base_points_per_dim < 8) throw std::invalid_argument("quadrature: base < 8");
        if (max_points_per_dim < base_points_per_dim)
            throw std::invalid_argument("quadrature: max < base");
        if (!(rel_tol > 0.0)) throw std::invalid_argument("quadrature: rel_tol must be > 0");
    }
};

/// Axis-aligned box, per-dimension [a_j, b_j) within [0, 2pi).
struct BoxSubset {
    std::vector<std::pair<double, double>> intervals;

    static BoxSubset full_torus(int n) {
        BoxSubset b;
        b.intervals.assign(static_cast<std::size_t>(n), {0.0, kTwoPi});
        return b;
    }

    int dimensions() const { return static_cast<int>(intervals.size()); }

    /// Normalized measure, in [0, 1].
    double measure() const {
        double m = 1.0;
        for (const auto& [a, b] : intervals) m *= (b - a) / kTwoPi;
        return m;
    }

    void validate(int n) const {
        if (dimensions() != n) throw std::invalid_argument("box: dimension mismatch");
        for (const auto& [a, b] : intervals) {
            if (!(a >= 0.0) || !(b <= kTwoPi * (1.0 + 1e-15)) || !(b > a))
                throw std::invalid_argument("box: need 0 <= a < b <= 2pi with positive length");
        }
    }
};

/// Dense coefficient tensor, row-major with the last variable fastest.
struct CoeffTensor {
    std::vector<int> dims;  // d_j + 1 per variable
    std::vector<Complex> data;
};

inline CoeffTensor to_coeff_tensor(const Polynomial& p) {
    CoeffTensor t;
    int n = p.variables();
    t.dims.assign(static_cast<std::size_t>(n), 1);
    for (const auto& [alpha, c] : p.terms()) {
        (void)c;
        for (int j = 0; j < n; ++j)
            t.dims[static_cast<std::size_t>(j)] =
                std::max(t.dims[static_cast<std::size_t>(j)], alpha[j] + 1);
    }
    std::size_t total = 1;
    for (int d : t.dims) total *= static_cast<std::size_t>(d);
    if (total > (std::size_t{1} << 26))
        throw std::invalid_argument("coefficient tensor too large to densify");
    t.data.assign(total, Complex(0.0, 0.0));
    for (const auto& [alpha, c] : p.terms()) {
        std::size_t idx = 0;
        for (int j = 0; j < n; ++j)
            idx = idx * static_cast<std::size_t>(t.dims[static_cast<std::size_t>(j)]) +
                  static_cast<std::size_t>(alpha[j]);
        t.data[idx] = c;
    }
    return t;
}

/// Unit-circle nodes e^{i 2pi (k+offset)/count}; offset 0.5 gives the midpoint
/// grid (no node at an angle hit by the offset-0 grid of any size).
inline std::vector<Complex> torus_nodes(int count, double offset = 0.0) {
    std::vector<Complex> v(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        double a = kTwoPi * (static_cast<double>(k) + offset) / static_cast<double>(count);
        v[static_cast<std::size_t>(k)] = Complex(std::cos(a), std::sin(a));
    }
    return v;
}

/// Midpoint nodes of [a, b) as unit-circle points.
inline std::vector<Complex> box_nodes(double a, double b, int count) {
    std::vector<Complex> v(static_cast<std::size_t>(count));
    double h = (b - a) / static_cast<double>(count);
    for (int k = 0; k < count; ++k) {
        double t = a + h * (static_cast<double>(k) + 0.5);
        v[static_cast<std::size_t>(k)] = Complex(std::cos(t), std::sin(t));
    }
    return v;
}

inline double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

inline Complex pairwise_sum(const Complex* v, std::size_t n) {
    if (n <= 8) {
        Complex s(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

/// Plain average of precomputed grid values.
inline Complex mean_on_grid(const std::vector<Complex>& values) {
    if (values.empty()) throw std::invalid_argument("mean_on_grid: empty grid");
    return pairwise_sum(values.data(), values.size()) / static_cast<double>(values.size());
}

namespace detail {

/// One axis-contraction sweep of the evaluation; see header comment.
template <class F>
class TensorGridReducer {
public:
    TensorGridReducer(const CoeffTensor& ct, const std::vector<std::vector<Complex>>& nodes, F& f)
        : ct_(ct), nodes_(nodes), f_(f) {
        std::size_t m = ct.dims.size();
        scratch_.resize(m);
        std::size_t rest = 1;
        for (std::size_t d = m; d-- > 0;) {
            scratch_[d].assign(rest, Complex(0.0, 0.0));
            rest *= static_cast<std::size_t>(ct.dims[d]);
        }
        // scratch_[d] holds the tensor contracted through axis d, i.e. the
        // coefficients over axes d+1..m-1 at a fixed node tuple of 0..d.
    }

    double run() {
        leaf_sums_.clear();
        chunk_ = 0.0;
        chunk_fill_ = 0;
        descend(0, ct_.data.data());
        flush_chunk();
        double total = pairwise_sum(leaf_sums_);
        double count = 1.0;
        for (const auto& nd : nodes_) count *= static_cast<double>(nd.size());
        return total / count;
    }

private:
    void descend(std::size_t d, const Complex* src) {
        std::size_t m = ct_.dims.size();
        std::size_t deg = static_cast<std::size_t>(ct_.dims[d]);
        if (d + 1 == m) {
            // Horner over the last coefficient axis, one value per node.
            for (const Complex& z : nodes_[d]) {
                Complex acc = src[deg - 1];
                for (std::size_t a = deg - 1; a-- > 0;) acc = acc * z + src[a];
                chunk_ += f_(std::abs(acc));
                if (++chunk_fill_ == kChunk) flush_chunk();
            }
            return;
        }
        std::size_t rest = scratch_[d].size();
        for (const Complex& z : nodes_[d]) {
            Complex* dst = scratch_[d].data();
            // dst[r] = sum_a src[a*rest + r] * z^a, power accumulated in w
            for (std::size_t r = 0; r < rest; ++r) dst[r] = src[r];
            Complex w(1.0, 0.0);
            for (std::size_t a = 1; a < deg; ++a) {
                w *= z;
                const Complex* row = src + a * rest;
                for (std::size_t r = 0; r < rest; ++r) dst[r] += w * row[r];
            }
            descend(d + 1, dst);
        }
    }

    void flush_chunk() {
        if (chunk_fill_ > 0) {
            leaf_sums_.push_back(chunk_);
            chunk_ = 0.0;
            chunk_fill_ = 0;
        }
    }

    static constexpr std::size_t kChunk = 256;
    const CoeffTensor& ct_;
    const std::vector<std::vector<Complex>>& nodes_;
    F& f_;
    std::vector<std::vector<Complex>> scratch_;
    std::vector<double> leaf_sums_;
    double chunk_ = 0.0;
    std::size_t chunk_fill_ = 0;
};

template <class F>
concept GridAwareIntegrand = requires(F f) { f.begin_grid(); };

template <class F>
void notify_new_grid(F& f) {
    if constexpr (GridAwareIntegrand<F>) f.begin_grid();
}

}  // namespace detail

/// Mean of f(|P|) over the tensor grid described by per-dimension node lists.
template <class F>
double tensor_grid_mean(const CoeffTensor& ct, const std::vector<std::vector<Complex>>& nodes,
                        F& f) {
    if (nodes.size() != ct.dims.size())
        throw std::invalid_argument("tensor_grid_mean: node list dimension mismatch");
    for (const auto& nd : nodes)
        if (nd.empty()) throw std::invalid_argument("tensor_grid_mean: empty node list");
    detail::TensorGridReducer<F> red(ct, nodes, f);
    return red.run();
}

/// Nested Horner evaluation of the dense tensor at one point.
inline Complex horner_point(const CoeffTensor& ct, const std::vector<Complex>& z,
                            std::size_t d = 0, std::size_t off = 0) {
    std::size_t deg = static_cast<std::size_t>(ct.dims[d]);
    std::size_t rest = 1;
    for (std::size_t j = d + 1; j < ct.dims.size(); ++j)
        rest *= static_cast<std::size_t>(ct.dims[j]);
    Complex acc(0.0, 0.0);
    for (std::size_t a = deg; a-- > 0;) {
        Complex v = (d + 1 == ct.dims.size()) ? ct.data[off + a]
                                              : horner_point(ct, z, d + 1, off + a * rest);
        acc = acc * z[d] + v;
    }
    return acc;
}

/// Materialized values of P on the (offset-0) tensor grid, row-major with the
/// last dimension fastest; theta_k = 2pi k / N_j per dimension.
inline std::vector<Complex> grid_evaluate(const Polynomial& p, const std::vector<int>& points,
                                          double offset = 0.0) {
    if (static_cast<int>(points.size()) != p.variables())
        throw std::invalid_argument("grid_evaluate: dimension count mismatch");
    std::size_t total = 1;
    for (int np : points) {
        if (np < 1) throw std::invalid_argument("grid_evaluate: need >= 1 point per dim");
        total *= static_cast<std::size_t>(np);
    }
    if (total > (std::size_t{1} << 26)) throw std::invalid_argument("grid_evaluate: grid too large");
    CoeffTensor ct = to_coeff_tensor(p);
    std::vector<std::vector<Complex>> nodes;
    nodes.reserve(points.size());
    for (int np : points) nodes.push_back(torus_nodes(np, offset));

    std::vector<Complex> out;
    out.reserve(total);
    std::vector<std::size_t> idx(points.size(), 0);
    std::vector<Complex> z(points.size());
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (std::size_t d = points.size(); d-- > 0;) {
            idx[d] = rem % static_cast<std::size_t>(points[d]);
            rem /= static_cast<std::size_t>(points[d]);
        }
        for (std::size_t d = 0; d < points.size(); ++d) z[d] = nodes[d][idx[d]];
        out.push_back(horner_point(ct, z));
    }
    return out;
}

/// |P| at every node of the offset grid, row-major; used where an integrand
/// family is re-evaluated over fixed moduli (Luxemburg bisection).
inline std::vector<double> grid_abs_values(const Polynomial& p, const std::vector<int>& points,
                                           double offset = 0.0) {
    std::size_t total = 1;
    for (int np : points) total *= static_cast<std::size_t>(np);
    if (total > (std::size_t{1} << 25))
        throw std::invalid_argument("grid_abs_values: grid too large to store");
    CoeffTensor ct = to_coeff_tensor(p);
    std::vector<std::vector<Complex>> nodes;
    nodes.reserve(points.size());
    for (int np : points) nodes.push_back(torus_nodes(np, offset));
    std::vector<double> vals;
    vals.reserve(total);
    struct Collect {
        std::vector<double>* sink;
        double operator()(double t) {
            sink->push_back(t);
            return 0.0;
        }
    } f{&vals};
    tensor_grid_mean(ct, nodes, f);
    return vals;
}

/// t -> t^p with fast paths for the exponents the norms actually use.
struct PowerIntegrand {
    explicit PowerIntegrand(double p) : p_(p) {
        double r = std::round(p);
        if (std::abs(p - r) < 1e-12 && r >= 0.0 && r <= 64.0) {
            ipart_ = static_cast<int>(r);
            mode_ = Mode::integer;
        } else if (std::abs(p - (std::floor(p) + 0.5)) < 1e-12 && p > 0.0 && p < 64.0) {
            ipart_ = static_cast<int>(std::floor(p));
            mode_ = Mode::half_integer;
        } else {
            mode_ = Mode::general;
        }
    }

    double operator()(double t) const {
        switch (mode_) {
            case Mode::integer: return powi(t, ipart_);
            case Mode::half_integer: return powi(t, ipart_) * std::sqrt(t);
            case Mode::general: return std::pow(t, p_);
        }
        return 0.0;
    }

    static double powi(double t, int e) {
        double r = 1.0;
        while (e > 0) {
            if (e & 1) r *= t;
            t *= t;
            e >>= 1;
        }
        return r;
    }

private:
    enum class Mode { integer, half_integer, general };
    double p_;
    int ipart_ = 0;
    Mode mode_ = Mode::general;
};

/// t -> log(max(t, floor)), counting floor hits on the current grid.
struct LogIntegrand {
    double floor = 1e-300;
    long clamped = 0;

    void begin_grid() { clamped = 0; }

    double operator()(double t) {
        if (t < floor) {
            ++clamped;
            t = floor;
        }
        return std::log(t);
    }
};

/// Grid mean of f(|P|), refined by doubling every dimension until successive
/// estimates agree to rel_tol (error_estimate = last gap) or the cap is hit.
/// conv_scale_floor widens the convergence scale for means that legitimately
/// sit near zero, e.g. logarithmic ones where absolute accuracy is the point.
template <class F>
NormResult adaptive_mean(const Polynomial& p, F&& f, const QuadratureSpec& spec,
                         double offset = 0.0, double conv_scale_floor = 1e-300) {
    spec.validate();
    CoeffTensor ct = to_coeff_tensor(p);
    int n = p.variables();
    NormResult res;
    res.method = NormMethod::quadrature;
    double prev = 0.0;
    bool have_prev = false;
    for (int npts = spec.base_points_per_dim;; npts *= 2) {
        std::vector<std::vector<Complex>> nodes;
        nodes.reserve(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) nodes.push_back(torus_nodes(npts, offset));
        detail::notify_new_grid(f);
        double est = tensor_grid_mean(ct, nodes, f);
        if (have_prev) {
            double gap = std::abs(est - prev);
            res.value = est;
            res.error_estimate = gap;
            if (gap <= spec.rel_tol * std::max(std::abs(est), conv_scale_floor)) {
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
            if (res.error_estimate == 0.0) res.error_estimate = std::abs(est);
            return res;
        }
    }
}

/// Integral of f(|P|) over a box (normalized measure, NOT divided by the box
/// measure).  Midpoint nodes per dimension, count proportional to length.
template <class F>
NormResult mean_on_box(const Polynomial& p, F&& f, const BoxSubset& box,
                       const QuadratureSpec& spec, double conv_scale_floor = 1e-300) {
    spec.validate();
    box.validate(p.variables());
    double frac = box.measure();
    CoeffTensor ct = to_coeff_tensor(p);
    NormResult res;
    res.method = NormMethod::quadrature;
    double prev = 0.0;
    bool have_prev = false;
    for (int npts = spec.base_points_per_dim;; npts *= 2) {
        std::vector<std::vector<Complex>> nodes;
        for (const auto& [a, b] : box.intervals) {
            double len = b - a;
            int cnt = std::max(1, static_cast<int>(std::llround(npts * len / kTwoPi)));
            nodes.push_back(box_nodes(a, b, cnt));
        }
        detail::notify_new_grid(f);
        double est = frac * tensor_grid_mean(ct, nodes, f);
        if (have_prev) {
            double gap = std::abs(est - prev);
            res.value = est;
            res.error_estimate = gap;
            if (gap <= spec.rel_tol * std::max(std::abs(est), conv_scale_floor)) {
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
            if (res.error_estimate == 0.0) res.error_estimate = std::abs(est);
            return res;
        }
    }
}

}  // namespace torusnorms
