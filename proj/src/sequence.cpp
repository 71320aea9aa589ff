#include "gkcs/sequence.hpp"

#include <cmath>

#include "gkcs/errors.hpp"

namespace gkcs {

namespace {
constexpr int kMaxSeriesIndex = 100000;
}

EnergySequence EnergySequence::landau(double b, double omega) {
    if (!(b > 0.0) || !(omega >= 0.0)) throw DomainError("landau sequence: need b > 0 and omega >= 0");
    return EnergySequence(Kind::Landau, b, omega, omega == 0.0);
}

EnergySequence EnergySequence::layer(double q, double p) {
    if (!(q > 0.0) || !(p >= -q)) throw DomainError("layer sequence: need q > 0 and p >= -q");
    return EnergySequence(Kind::Layer, q, p, p == -q);
}

double EnergySequence::energy(int k) const {
    if (k < 0) throw DomainError("energy: negative index");
    if (kind_ == Kind::Landau) return a_ * k + c_;
    if (shifted_) return a_ * k * (k + 2.0);
    return c_ + a_ * (k + 1.0) * (k + 1.0);
}

double EnergySequence::gamma() const {
    if (kind_ != Kind::Landau) throw UnsupportedClass("gamma: not a Landau-type sequence");
    return 1.0 + c_ / a_;
}

Complex EnergySequence::beta1() const {
    if (kind_ != Kind::Layer) throw UnsupportedClass("beta: not a Layer-type sequence");
    const double r = c_ / a_;
    return r >= 0.0 ? Complex(2.0, std::sqrt(r)) : Complex(2.0 + std::sqrt(-r), 0.0);
}

Complex EnergySequence::beta2() const {
    if (kind_ != Kind::Layer) throw UnsupportedClass("beta: not a Layer-type sequence");
    const double r = c_ / a_;
    return r >= 0.0 ? Complex(2.0, -std::sqrt(r)) : Complex(2.0 - std::sqrt(-r), 0.0);
}

double EnergySequence::rho(int k) const {
    if (k < 0) throw DomainError("rho: negative index");
    if (kind_ == Kind::Landau) return std::pow(a_, k) * specfun::pochhammer(gamma(), k);
    const Complex pr = specfun::pochhammer(beta1(), k) * specfun::pochhammer(beta2(), k);
    return std::pow(a_, k) * pr.real();
}

double EnergySequence::rho_product(int k) const {
    if (k < 0) throw DomainError("rho: negative index");
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r *= energy(j);
    return r;
}

double EnergySequence::norm_sq(double J, double tol) const {
    if (!(J >= 0.0)) throw DomainError("norm_sq: J must be nonnegative");
    if (J == 0.0) return 1.0;
    if (kind_ == Kind::Landau) {
        if (shifted_) return std::exp(J / a_);
        return specfun::hyp1f1(1.0, gamma(), J / a_, tol).value.real();
    }
    const double x = J / a_;
    if (shifted_) {
        // 1F2(1; 1, 3; x) = 0F1(; 3; x) = 2 I_2(2 sqrt x) / x
        return 2.0 * specfun::bessel_i(2, 2.0 * std::sqrt(x), tol) / x;
    }
    return specfun::hyp1f2(1.0, beta1(), beta2(), x, tol).value.real();
}

double EnergySequence::norm_sq_series(double J, double tol) const {
    if (!(J >= 0.0)) throw DomainError("norm_sq_series: J must be nonnegative");
    double term = 1.0;
    double sum = 1.0;
    int small_run = 0;
    for (int k = 1; k < kMaxSeriesIndex; ++k) {
        const double e = energy(k);
        term *= J / e;
        sum += term;
        small_run = (term <= tol * sum && e > J) ? small_run + 1 : 0;
        if (small_run >= 3 || term == 0.0) return sum;
    }
    throw NonConvergence("norm_sq_series: index cap reached");
}

std::string EnergySequence::closed_form_name() const {
    if (kind_ == Kind::Landau) return shifted_ ? "exp(J/b)" : "1F1(1;gamma;J/b)";
    return shifted_ ? "2 I2(2 sqrt(J/q)) q/J" : "1F2(1;beta,conj(beta);J/q)";
}

namespace sequences {

EnergySequence fixed_n(int n, const LayerParams& p) {
    p.validate();
    if (n < 0) throw DomainError("fixed_n: n must be nonnegative");
    return EnergySequence::landau(2.0 * p.B, spectrum::energy_mn(0, n, p));
}

EnergySequence fixed_m(int m, const LayerParams& p) {
    p.validate();
    if (m < 0) throw DomainError("fixed_m: m must be nonnegative");
    return EnergySequence::layer(p.q(), p.B * (2.0 * m + 1.0));
}

EnergySequence fixed_n_shifted(const LayerParams& p) {
    p.validate();
    return EnergySequence::landau(2.0 * p.B, 0.0);
}

EnergySequence fixed_m_shifted(const LayerParams& p) {
    p.validate();
    return EnergySequence::layer(p.q(), -p.q());
}

EnergySequence landau(const LayerParams& p) {
    p.validate();
    return EnergySequence::landau(2.0 * p.B, p.B);
}

EnergySequence layer(const LayerParams& p) {
    p.validate();
    return EnergySequence::layer(p.q(), 0.0);
}

}  // namespace sequences
}  // namespace gkcs
