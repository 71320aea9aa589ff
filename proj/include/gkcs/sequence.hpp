#pragma once

// Energy sequences e_0, e_1, ... that drive every coherent-state family.
// Two shapes occur:
//   Landau-type  e_k = b k + omega,        rho(k) = b^k (gamma)_k,        gamma = 1 + omega/b
//   Layer-type   e_k = p + q (k+1)^2,      rho(k) = q^k (beta1)_k (beta2)_k,
//                beta1,2 = 2 +- sqrt(-p/q)  (complex conjugates for p > 0)
// In both cases rho(k) = e_1 e_2 ... e_k.

#include <string>

#include "gkcs/specfun.hpp"
#include "gkcs/spectrum.hpp"

namespace gkcs {

class EnergySequence {
public:
    enum class Kind { Landau, Layer };

    static EnergySequence landau(double b, double omega);
    static EnergySequence layer(double q, double p);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] double energy(int k) const;
    /// rho(k) from the Pochhammer closed form.
    [[nodiscard]] double rho(int k) const;
    /// rho(k) as the running product e_1 ... e_k.
    [[nodiscard]] double rho_product(int k) const;
    /// N(J)^2 = sum_k J^k / rho(k) from its closed form.
    [[nodiscard]] double norm_sq(double J, double tol = specfun::kSeriesTol) const;
    /// The same sum evaluated term by term.
    [[nodiscard]] double norm_sq_series(double J, double tol = specfun::kSeriesTol) const;
    /// Name of the closed form used by norm_sq.
    [[nodiscard]] std::string closed_form_name() const;

    /// Landau-type slope b and offset omega.
    [[nodiscard]] double slope() const noexcept { return a_; }
    [[nodiscard]] double offset() const noexcept { return c_; }
    /// Landau-type gamma = 1 + omega / b.
    [[nodiscard]] double gamma() const;
    /// Layer-type scale q, offset p and the pair (beta1, beta2).
    [[nodiscard]] double scale() const noexcept { return a_; }
    [[nodiscard]] Complex beta1() const;
    [[nodiscard]] Complex beta2() const;
    /// e_0 == 0 exactly (the backward-shifted sequences).
    [[nodiscard]] bool is_shifted() const noexcept { return shifted_; }

private:
    EnergySequence(Kind kind, double a, double c, bool shifted) : kind_(kind), a_(a), c_(c), shifted_(shifted) {}

    Kind kind_;
    double a_;  // b (Landau) or q (Layer)
    double c_;  // omega (Landau) or p (Layer)
    bool shifted_;
};

namespace sequences {

/// e_m = E(m, n) at fixed n.
EnergySequence fixed_n(int n, const LayerParams& p);
/// e_n = E(m, n) at fixed m.
EnergySequence fixed_m(int m, const LayerParams& p);
/// e_m = 2 B m.
EnergySequence fixed_n_shifted(const LayerParams& p);
/// e_n = (pi/d)^2 n (n + 2).
EnergySequence fixed_m_shifted(const LayerParams& p);
/// Landau levels e_m = B (2m + 1).
EnergySequence landau(const LayerParams& p);
/// Layer modes eps_n = (pi (n+1) / d)^2.
EnergySequence layer(const LayerParams& p);

}  // namespace sequences
}  // namespace gkcs
