#pragma once

#include <cmath>

namespace torusnorms {

/// How a norm/measure value was produced.  exact_* paths carry roundoff-level
/// error estimates; quadrature/iterated/MC estimates come from refinement gaps
/// or batch statistics.
enum class NormMethod {
    exact_parseval,
    exact_even_convolution,
    exact_roots,
    quadrature,
    iterated_mixed,
    monte_carlo,
};

inline const char* to_string(NormMethod m) {
    switch (m) {
        case NormMethod::exact_parseval: return "exact-parseval";
        case NormMethod::exact_even_convolution: return "exact-even-convolution";
        case NormMethod::exact_roots: return "exact-roots";
        case NormMethod::quadrature: return "quadrature";
        case NormMethod::iterated_mixed: return "iterated-mixed";
        case NormMethod::monte_carlo: return "monte-carlo";
    }
    return "?";
}

struct NormResult {
    double value = 0.0;
    NormMethod method = NormMethod::quadrature;
    double error_estimate = 0.0;  // absolute
    bool converged = true;
    long clamped_nodes = 0;  // log-integrand floor hits on the final grid
    bool warning = false;    // e.g. root within 1e-9 of the unit circle

    double relative_error() const {
        double scale = value != 0.0 ? std::abs(value) : 1.0;
        return error_estimate / scale;
    }
};

}  // namespace torusnorms
