#pragma once

// Adaptive Gauss-Kronrod (7/15) integration on finite and semi-infinite ranges.

#include <functional>

namespace gkcs::quadrature {

using Integrand = std::function<double(double)>;

enum class TailCutoff {
    ExponentialDecayBound,  ///< locate the cutoff from the decay of |x f(x)|
    UserUpperLimit,         ///< integrate up to QuadratureConfig::upper_limit
};

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_subdivisions = 4000;
    TailCutoff tail_cutoff = TailCutoff::ExponentialDecayBound;
    double upper_limit = 0.0;
    /// Split point between the sqrt-substituted head [0, c] and the logarithmic tail.
    double split = 1.0;
    bool throw_on_failure = true;

    /// Throws DomainError when the fields are inconsistent (rel_tol < 1e-14 etc.).
    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

QuadratureResult integrate_finite(const Integrand& f, double a, double b, const QuadratureConfig& cfg = {});

/// Integral of f over [0, inf). f may have an integrable x^{-1/2}-type singularity at 0.
QuadratureResult integrate_semi_infinite(const Integrand& f, const QuadratureConfig& cfg = {});

}  // namespace gkcs::quadrature
