#pragma once

// Spectrum and eigenfunctions of the free magnetic Schroedinger operator in a
// layer of width d, in units e = hbar = 2M = c = 1.

#include <optional>
#include <utility>
#include <vector>

#include "gkcs/quadrature.hpp"
#include "gkcs/specfun.hpp"
#include "gkcs/verification.hpp"

namespace gkcs {

struct LayerParams {
    double B = 1.0;  ///< magnetic intensity |B|
    double d = 3.14159265358979323846;  ///< layer width

    /// Throws DomainError unless B and d are finite and positive.
    void validate() const;
    /// Transverse energy scale (pi/d)^2.
    [[nodiscard]] double q() const;
};

struct QuantumNumbers {
    int m = 0;  ///< radial (Landau) index, >= 0
    int l = 0;  ///< angular momentum
    int n = 0;  ///< layer mode, >= 0
};

struct LevelPair {
    int m = 0;
    int n = 0;
    friend bool operator==(const LevelPair&, const LevelPair&) = default;
};

struct DegeneracyReport {
    double ratio = 0.0;  ///< pi^2 / (B d^2)
    std::optional<std::pair<long long, long long>> rational;  ///< (p, q) when detected
    std::vector<std::pair<LevelPair, LevelPair>> collisions;
};

namespace spectrum {

inline constexpr double kCollisionTol = 1e-9;
inline constexpr long long kDefaultQMax = 1000000;

/// E(m, l, n) = B(2m + l + |l| + 1) + (pi (n+1) / d)^2.
double energy_full(const QuantumNumbers& qn, const LayerParams& p);

/// E(m, n) = B(2m + 1) + (pi (n+1) / d)^2.
double energy_mn(int m, int n, const LayerParams& p);

/// Laguerre polynomial L_m^{(alpha)}(x) by the three-term recurrence.
double laguerre(int m, double alpha, double x);

/// 1F1(-m; b; x) as the exact polynomial m!/(b)_m L_m^{(b-1)}(x).
double kummer_polynomial(int m, double b, double x);

/// Squared normalization of the radial-angular factor.
double radial_norm_sq(int m, int l, double B);

/// Psi_{m l n}(r, theta, z).
Complex eigenfunction(const QuantumNumbers& qn, const LayerParams& p, double r, double theta, double z);

/// <Psi_{q1} | Psi_{q2}> with the angle and layer integrals done exactly and the
/// radial integral by quadrature. Target is the Kronecker delta.
VerificationReport orthonormality_check(const QuantumNumbers& q1, const QuantumNumbers& q2, const LayerParams& p,
                                        const quadrature::QuadratureConfig& cfg = {});

/// Collisions among E(m, n), m <= m_max, n <= n_max, and continued-fraction
/// rationality detection for pi^2 / (B d^2).
DegeneracyReport degeneracy_probe(const LayerParams& p, int m_max, int n_max, double tol = kCollisionTol,
                                  long long q_max = kDefaultQMax);

/// Best rational p/q (q <= q_max) within floating resolution of x, if any.
std::optional<std::pair<long long, long long>> detect_rational(double x, long long q_max = kDefaultQMax);

}  // namespace spectrum
}  // namespace gkcs
