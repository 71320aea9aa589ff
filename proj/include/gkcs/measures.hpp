#pragma once

// Weight densities lambda(J) solving the moment problems int J^k lambda(J) dJ = rho(k),
// and the quadrature checks built on them. The phase average over alpha is done
// analytically: for distinct energies it is a Kronecker delta.

#include <string_view>
#include <vector>

#include "gkcs/coherent.hpp"
#include "gkcs/quadrature.hpp"
#include "gkcs/sequence.hpp"
#include "gkcs/verification.hpp"

namespace gkcs {

enum class WeightForm {
    GammaType,           ///< fixed-n family: J^{g-1} e^{-J/2B} / ((2B)^g Gamma(g))
    KontorovichLebedev,  ///< fixed-m family: Bessel K of imaginary order
    HalfGauss,           ///< Landau levels B(2m+1): sqrt(J / (2 pi B^3)) e^{-J/2B}
    BesselK0,            ///< layer modes (pi(n+1)/d)^2: (2 d^4 J / pi^4) K_0(2 d sqrt(J) / pi)
    ExpShifted,          ///< shifted Landau levels 2Bm: e^{-J/2B} / (2B)
    MeijerG,             ///< shifted layer modes: (d^2 / 2 pi^2) G^{20}_{02}(d^2 J / pi^2 | 2, 0)
};

struct WeightSpec {
    WeightForm form = WeightForm::GammaType;
    LayerParams params;
    /// Fixed n for GammaType, fixed m for KontorovichLebedev; unused otherwise.
    int index = 0;
};

namespace measures {

std::string_view to_string(WeightForm form);

/// Sequence whose rho(k) the weight reproduces as its k-th moment.
EnergySequence moment_sequence(const WeightSpec& w);

/// Bare density lambda(J). Throws DomainError for J <= 0.
double weight_density(const WeightSpec& w, double J);
/// lambda(J) N(J)^2, the J-part of the resolution measure.
double full_density(const WeightSpec& w, double J);

/// Weights of each J-variable of a class. Nested classes use the fixed-m weight
/// of row `row_m` for J2.
std::vector<WeightSpec> weights_for(const CSClass& cls, const LayerParams& p, int row_m = 0);

/// int_0^inf J^k lambda(J) dJ against rho(k).
VerificationReport moment_check(const WeightSpec& w, int k, const quadrature::QuadratureConfig& cfg = {});

/// Gamma-type moment from the Gamma integral, divided by rho(k); equals 1.
double gamma_moment_analytic(const WeightSpec& w, int k);

/// Sign of the density on a log-spaced grid; reports the smallest value found.
struct PositivityReport {
    double min_value = 0.0;
    double at_J = 0.0;
    int negative_points = 0;
    int points = 0;
};
PositivityReport positivity_scan(const WeightSpec& w, double J_lo, double J_hi, int points);

/// For each basis index k <= basis_range: int |<psi_k|J,alpha>|^2 dmu = 1. Two-degree
/// classes report the (m, n) diagonal as the product of the two one-variable checks.
/// Throws DegenerateSpectrum when an averaged phase has coinciding energies.
std::vector<VerificationReport> resolution_diagonal_check(const CSClass& cls, int basis_range,
                                                          const quadrature::QuadratureConfig& cfg,
                                                          const LayerParams& p);

}  // namespace measures
}  // namespace gkcs
