#pragma once

#include <string>

#include "gkcs/quadrature.hpp"

namespace gkcs {

/// Outcome of one numeric identity check.
struct VerificationReport {
    std::string label;
    double target = 0.0;
    double computed = 0.0;
    double abs_err = 0.0;
    /// abs_err / |target|, or abs_err itself when the target is zero.
    double rel_err = 0.0;
    quadrature::QuadratureResult quadrature{};

    [[nodiscard]] bool passed(double tol) const { return rel_err <= tol; }
};

VerificationReport make_report(std::string label, double target, double computed,
                               const quadrature::QuadratureResult& quad = {});

}  // namespace gkcs
