#include "gkcs/measures.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "gkcs/errors.hpp"
#include "gkcs/specfun.hpp"

namespace gkcs::measures {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double J) {
    if (!(J > 0.0)) throw DomainError("weight density: J must be positive");
}

/// Gamma(beta) Gamma(conj beta) for the fixed-m pair.
double gamma_pair(const EnergySequence& seq) {
    return std::exp((specfun::ln_gamma(seq.beta1()) + specfun::ln_gamma(seq.beta2())).real());
}

std::string axis_label(const WeightSpec& w, int k) {
    return std::string(to_string(w.form)) + " k=" + std::to_string(k);
}

/// int (J^k / (rho(k) N^2)) lambda N^2 dJ, the one-variable resolution diagonal.
VerificationReport diagonal_1d(const WeightSpec& w, int k, const quadrature::QuadratureConfig& cfg) {
    const EnergySequence seq = moment_sequence(w);
    const double rho = seq.rho(k);
    const auto integrand = [&](double J) {
        if (J <= 0.0) return 0.0;
        const double n2 = seq.norm_sq(J);
        const double prob = std::exp(k * std::log(J) - std::log(rho)) / n2;
        return prob * full_density(w, J);
    };
    const auto quad = quadrature::integrate_semi_infinite(integrand, cfg);
    return make_report("diagonal " + axis_label(w, k), 1.0, quad.value, quad);
}

/// Phases averaged over one alpha variable must have pairwise distinct energies.
void require_distinct(const std::vector<double>& energies, const char* axis) {
    for (std::size_t i = 0; i < energies.size(); ++i) {
        for (std::size_t j = i + 1; j < energies.size(); ++j) {
            const double scale = 1.0 + std::max(std::abs(energies[i]), std::abs(energies[j]));
            if (std::abs(energies[i] - energies[j]) <= spectrum::kCollisionTol * scale) {
                throw DegenerateSpectrum(std::string("resolution check: coinciding energies on the ") + axis +
                                         " phase");
            }
        }
    }
}

}  // namespace

std::string_view to_string(WeightForm form) {
    switch (form) {
        case WeightForm::GammaType: return "gamma-type";
        case WeightForm::KontorovichLebedev: return "kontorovich-lebedev";
        case WeightForm::HalfGauss: return "half-gauss";
        case WeightForm::BesselK0: return "bessel-k0";
        case WeightForm::ExpShifted: return "exp-shifted";
        case WeightForm::MeijerG: return "meijer-g";
    }
    return "unknown";
}

EnergySequence moment_sequence(const WeightSpec& w) {
    switch (w.form) {
        case WeightForm::GammaType: return sequences::fixed_n(w.index, w.params);
        case WeightForm::KontorovichLebedev: return sequences::fixed_m(w.index, w.params);
        case WeightForm::HalfGauss: return sequences::landau(w.params);
        case WeightForm::BesselK0: return sequences::layer(w.params);
        case WeightForm::ExpShifted: return sequences::fixed_n_shifted(w.params);
        case WeightForm::MeijerG: return sequences::fixed_m_shifted(w.params);
    }
    throw DomainError("moment_sequence: unknown weight form");
}

double weight_density(const WeightSpec& w, double J) {
    require_positive(J);
    w.params.validate();
    const double B = w.params.B;
    const double d = w.params.d;
    switch (w.form) {
        case WeightForm::GammaType: {
            const double g = moment_sequence(w).gamma();
            return std::exp((g - 1.0) * std::log(J) - J / (2.0 * B) - g * std::log(2.0 * B) - std::lgamma(g));
        }
        case WeightForm::KontorovichLebedev: {
            const EnergySequence seq = moment_sequence(w);
            const Complex order = seq.beta1() - seq.beta2();
            const double pref = 2.0 * std::pow(d / kPi, 4) * J / gamma_pair(seq);
            return pref * specfun::bessel_k(order, 2.0 * d * std::sqrt(J) / kPi);
        }
        case WeightForm::HalfGauss: return std::sqrt(J / (2.0 * kPi * B * B * B)) * std::exp(-J / (2.0 * B));
        case WeightForm::BesselK0:
            return 2.0 * std::pow(d / kPi, 4) * J * specfun::bessel_k(0.0, 2.0 * d * std::sqrt(J) / kPi);
        case WeightForm::ExpShifted: return std::exp(-J / (2.0 * B)) / (2.0 * B);
        case WeightForm::MeijerG: {
            const double r = d * d / (kPi * kPi);
            return 0.5 * r * specfun::meijer_g2002(r * J, 2.0, 0.0);
        }
    }
    throw DomainError("weight_density: unknown weight form");
}

double full_density(const WeightSpec& w, double J) {
    return weight_density(w, J) * moment_sequence(w).norm_sq(J);
}

std::vector<WeightSpec> weights_for(const CSClass& cls, const LayerParams& p, int row_m) {
    cls.validate();
    switch (cls.tag) {
        case CSTag::FixedN: return {{WeightForm::GammaType, p, *cls.fixed_index}};
        case CSTag::FixedM: return {{WeightForm::KontorovichLebedev, p, *cls.fixed_index}};
        case CSTag::FixedNShifted: return {{WeightForm::ExpShifted, p, 0}};
        case CSTag::FixedMShifted: return {{WeightForm::MeijerG, p, 0}};
        case CSTag::Product: return {{WeightForm::HalfGauss, p, 0}, {WeightForm::BesselK0, p, 0}};
        case CSTag::ProductShifted: return {{WeightForm::ExpShifted, p, 0}, {WeightForm::MeijerG, p, 0}};
        case CSTag::Nested:
        case CSTag::NestedAltPhase:
            return {{WeightForm::HalfGauss, p, 0}, {WeightForm::KontorovichLebedev, p, row_m}};
        case CSTag::NestedAltPhaseShifted: return {{WeightForm::HalfGauss, p, 0}, {WeightForm::MeijerG, p, 0}};
    }
    throw DomainError("weights_for: unknown class");
}

VerificationReport moment_check(const WeightSpec& w, int k, const quadrature::QuadratureConfig& cfg) {
    if (k < 0) throw DomainError("moment_check: k must be nonnegative");
    const double target = moment_sequence(w).rho(k);
    const auto integrand = [&](double J) { return J <= 0.0 ? 0.0 : std::pow(J, k) * weight_density(w, J); };
    const auto quad = quadrature::integrate_semi_infinite(integrand, cfg);
    return make_report("moment " + axis_label(w, k), target, quad.value, quad);
}

double gamma_moment_analytic(const WeightSpec& w, int k) {
    if (w.form != WeightForm::GammaType) throw UnsupportedClass("gamma_moment_analytic: not a Gamma-type weight");
    const EnergySequence seq = moment_sequence(w);
    const double g = seq.gamma();
    const double b = seq.slope();
    // int J^{k+g-1} e^{-J/b} dJ = Gamma(k+g) b^{k+g}
    const double moment = std::exp(std::lgamma(k + g) - std::lgamma(g) + k * std::log(b));
    return moment / seq.rho(k);
}

PositivityReport positivity_scan(const WeightSpec& w, double J_lo, double J_hi, int points) {
    if (!(J_lo > 0.0 && J_hi > J_lo) || points < 2) throw DomainError("positivity_scan: invalid grid");
    PositivityReport rep;
    rep.points = points;
    rep.min_value = std::numeric_limits<double>::infinity();
    const double step = std::log(J_hi / J_lo) / (points - 1);
    for (int i = 0; i < points; ++i) {
        const double J = J_lo * std::exp(step * i);
        const double v = weight_density(w, J);
        if (v < 0.0) ++rep.negative_points;
        if (v < rep.min_value) {
            rep.min_value = v;
            rep.at_J = J;
        }
    }
    return rep;
}

std::vector<VerificationReport> resolution_diagonal_check(const CSClass& cls, int basis_range,
                                                          const quadrature::QuadratureConfig& cfg,
                                                          const LayerParams& p) {
    cls.validate();
    p.validate();
    if (basis_range < 0 || basis_range > 12) throw DomainError("resolution_diagonal_check: basis_range must be 0..12");

    std::vector<VerificationReport> out;
    const auto ws0 = weights_for(cls, p, 0);
    if (is_one_degree(cls.tag)) {
        std::vector<double> energies;
        const EnergySequence seq = moment_sequence(ws0[0]);
        for (int k = 0; k <= basis_range; ++k) energies.push_back(seq.energy(k));
        require_distinct(energies, "alpha");
        for (int k = 0; k <= basis_range; ++k) out.push_back(diagonal_1d(ws0[0], k, cfg));
        return out;
    }

    // Each alpha variable is averaged separately; check both phase ladders.
    std::vector<double> e1;
    for (int m = 0; m <= basis_range; ++m) e1.push_back(coherent::phase(cls, CSLabel::two(0, 0, 1, 0), p, m, 0));
    require_distinct(e1, "alpha1");
    for (int m = 0; m <= basis_range; ++m) {
        std::vector<double> e2;
        for (int n = 0; n <= basis_range; ++n) e2.push_back(coherent::phase(cls, CSLabel::two(0, 0, 0, 1), p, m, n));
        require_distinct(e2, "alpha2");
    }

    std::vector<VerificationReport> axis1;
    for (int m = 0; m <= basis_range; ++m) axis1.push_back(diagonal_1d(ws0[0], m, cfg));
    std::map<int, std::vector<VerificationReport>> axis2;  // keyed by the row whose weight applies
    const bool row_dependent = cls.tag == CSTag::Nested || cls.tag == CSTag::NestedAltPhase;
    for (int m = 0; m <= (row_dependent ? basis_range : 0); ++m) {
        const WeightSpec w2 = weights_for(cls, p, m)[1];
        auto& col = axis2[m];
        for (int n = 0; n <= basis_range; ++n) col.push_back(diagonal_1d(w2, n, cfg));
    }
    for (int m = 0; m <= basis_range; ++m) {
        const auto& col = axis2.at(row_dependent ? m : 0);
        for (int n = 0; n <= basis_range; ++n) {
            const VerificationReport& r1 = axis1[static_cast<std::size_t>(m)];
            const VerificationReport& r2 = col[static_cast<std::size_t>(n)];
            quadrature::QuadratureResult q;
            q.value = r1.computed * r2.computed;
            q.error_estimate = std::abs(r1.computed) * r2.quadrature.error_estimate +
                               std::abs(r2.computed) * r1.quadrature.error_estimate;
            q.evaluations = r1.quadrature.evaluations + r2.quadrature.evaluations;
            q.converged = r1.quadrature.converged && r2.quadrature.converged;
            out.push_back(make_report("diagonal (m,n)=(" + std::to_string(m) + "," + std::to_string(n) + ")", 1.0,
                                      q.value, q));
        }
    }
    return out;
}

}  // namespace gkcs::measures
