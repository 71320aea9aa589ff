#include "gkcs/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gkcs/errors.hpp"

namespace gkcs {

namespace {

constexpr int kMaxRetained = 100000;

struct TagName {
    CSTag tag;
    std::string_view name;
};

constexpr TagName kTagNames[] = {
    {CSTag::FixedN, "fixed-n"},
    {CSTag::FixedM, "fixed-m"},
    {CSTag::FixedNShifted, "fixed-n-shifted"},
    {CSTag::FixedMShifted, "fixed-m-shifted"},
    {CSTag::Product, "product"},
    {CSTag::ProductShifted, "product-shifted"},
    {CSTag::Nested, "nested"},
    {CSTag::NestedAltPhase, "nested-alt-phase"},
    {CSTag::NestedAltPhaseShifted, "nested-alt-phase-shifted"},
};

bool is_nested(CSTag tag) {
    return tag == CSTag::Nested || tag == CSTag::NestedAltPhase || tag == CSTag::NestedAltPhaseShifted;
}

bool is_product(CSTag tag) { return tag == CSTag::Product || tag == CSTag::ProductShifted; }

/// Amplitudes sqrt(J^k / rho(k)) / N for k = 0..K with the certified tail 2 t_{K+1} / N^2.
struct Axis {
    std::vector<double> amp;
    double norm_sq = 1.0;
    double tail = 0.0;
};

Axis truncate_axis(const EnergySequence& seq, double J, double eps) {
    if (!(J >= 0.0)) throw DomainError("coherent state: J must be nonnegative");
    Axis ax;
    ax.norm_sq = seq.norm_sq(J);
    ax.amp.push_back(1.0 / std::sqrt(ax.norm_sq));
    if (J == 0.0) return ax;
    double t = 1.0;
    for (int k = 1;; ++k) {
        if (k > kMaxRetained) throw NonConvergence("coherent state: truncation cap reached before tail bound");
        const double e = seq.energy(k);
        const double next = t * J / e;
        // Past e_k > 2J every further ratio is below 1/2, so the tail is at most 2 t_k.
        if (e > 2.0 * J && 2.0 * next / ax.norm_sq <= eps) {
            ax.tail = 2.0 * next / ax.norm_sq;
            return ax;
        }
        t = next;
        ax.amp.push_back(std::sqrt(t / ax.norm_sq));
    }
}

/// u_m = J1^m / (rho_2(m) N_2(J2, m)^2) summed over m, with the N_2 >= 1 majorant for the tail.
struct NestedAxis {
    std::vector<double> weight;  // u_m for the retained rows
    double norm_sq = 1.0;        // N_1^2 summed to full precision
    double tail = 0.0;           // bound on the neglected row mass
};

double row_norm_sq(CSTag tag, int m, double J2, const LayerParams& p) {
    return coherent::nested_row_sequence(tag, m, p).norm_sq(J2);
}

NestedAxis nested_axis(CSTag tag, double J1, double J2, const LayerParams& p, double eps, double tol) {
    if (!(J1 >= 0.0) || !(J2 >= 0.0)) throw DomainError("coherent state: J must be nonnegative");
    const EnergySequence m_seq = coherent::m_axis_sequence(tag, p);
    NestedAxis ax;
    double t = 1.0;  // J1^m / rho_2(m), majorant of u_m
    double sum = 1.0 / row_norm_sq(tag, 0, J2, p);
    std::vector<double> u{sum};
    int retained = -1;
    double tail_at_retained = 0.0;
    for (int m = 1;; ++m) {
        if (m > kMaxRetained) throw NonConvergence("nested state: row cap reached");
        const double e = m_seq.energy(m);
        const double next = t * J1 / e;
        if (e > 2.0 * J1) {
            if (retained < 0 && 2.0 * next <= eps * sum) {
                retained = m - 1;
                tail_at_retained = 2.0 * next;
            }
            if (2.0 * next <= std::min(tol, eps) * sum || next == 0.0) break;
        }
        t = next;
        const double um = t / row_norm_sq(tag, m, J2, p);
        sum += um;
        u.push_back(um);
    }
    if (retained < 0) retained = static_cast<int>(u.size()) - 1;  // J1 == 0: the loop stops at m = 1
    ax.norm_sq = sum;
    ax.weight.assign(u.begin(), u.begin() + retained + 1);
    ax.tail = tail_at_retained / sum;
    return ax;
}

}  // namespace

std::string_view to_string(CSTag tag) {
    for (const auto& tn : kTagNames) {
        if (tn.tag == tag) return tn.name;
    }
    return "unknown";
}

CSTag parse_tag(std::string_view name) {
    for (const auto& tn : kTagNames) {
        if (tn.name == name) return tn.tag;
    }
    throw DomainError("unknown coherent-state class '" + std::string(name) + "'");
}

bool is_one_degree(CSTag tag) {
    return tag == CSTag::FixedN || tag == CSTag::FixedM || tag == CSTag::FixedNShifted ||
           tag == CSTag::FixedMShifted;
}

void CSClass::validate() const {
    if (is_one_degree(tag) != fixed_index.has_value()) {
        throw DomainError(std::string("class ") + std::string(to_string(tag)) +
                          (fixed_index ? " takes no fixed index" : " requires a fixed index"));
    }
    if (fixed_index && *fixed_index < 0) throw DomainError("fixed index must be nonnegative");
}

double TruncatedState::norm_sq() const {
    double s = 0.0;
    for (const auto& row : coeffs) {
        for (const Complex c : row) s += std::norm(c);
    }
    return s;
}

std::size_t TruncatedState::size() const {
    std::size_t n = 0;
    for (const auto& row : coeffs) n += row.size();
    return n;
}

namespace coherent {

double rho_fixed_n(int m, int n_fixed, const LayerParams& p) { return sequences::fixed_n(n_fixed, p).rho(m); }

double rho_fixed_m(int n, int m_fixed, const LayerParams& p) { return sequences::fixed_m(m_fixed, p).rho(n); }

EnergySequence one_degree_sequence(const CSClass& cls, const LayerParams& p) {
    cls.validate();
    switch (cls.tag) {
        case CSTag::FixedN: return sequences::fixed_n(*cls.fixed_index, p);
        case CSTag::FixedM: return sequences::fixed_m(*cls.fixed_index, p);
        case CSTag::FixedNShifted: return sequences::fixed_n_shifted(p);
        case CSTag::FixedMShifted: return sequences::fixed_m_shifted(p);
        default: throw UnsupportedClass("not a one-degree class: " + std::string(to_string(cls.tag)));
    }
}

EnergySequence nested_row_sequence(CSTag tag, int m, const LayerParams& p) {
    if (tag == CSTag::NestedAltPhaseShifted) return sequences::fixed_m_shifted(p);
    if (tag == CSTag::Nested || tag == CSTag::NestedAltPhase) return sequences::fixed_m(m, p);
    throw UnsupportedClass("not a nested class: " + std::string(to_string(tag)));
}

EnergySequence m_axis_sequence(CSTag tag, const LayerParams& p) {
    if (tag == CSTag::ProductShifted) return sequences::fixed_n_shifted(p);
    if (tag == CSTag::Product || is_nested(tag)) return sequences::landau(p);
    throw UnsupportedClass("not a two-degree class: " + std::string(to_string(tag)));
}

EnergySequence n_axis_sequence(CSTag tag, const LayerParams& p) {
    if (tag == CSTag::ProductShifted) return sequences::fixed_m_shifted(p);
    if (tag == CSTag::Product || tag == CSTag::Nested) return sequences::layer(p);
    throw UnsupportedClass("no independent n-axis sequence for " + std::string(to_string(tag)));
}

namespace {

/// Energies (E1 of the alpha1 phase, E2 of the alpha2 phase) at basis index (i, j).
std::pair<double, double> phase_energies(const CSClass& cls, const LayerParams& p, int i, int j) {
    if (is_one_degree(cls.tag)) return {one_degree_sequence(cls, p).energy(j), 0.0};
    const double em = m_axis_sequence(cls.tag, p).energy(i);
    switch (cls.tag) {
        case CSTag::Product:
        case CSTag::ProductShifted:
        case CSTag::Nested: return {em, n_axis_sequence(cls.tag, p).energy(j)};
        case CSTag::NestedAltPhase: return {em, spectrum::energy_mn(i, j, p)};
        case CSTag::NestedAltPhaseShifted: return {em, sequences::fixed_m_shifted(p).energy(j)};
        default: throw UnsupportedClass("phase: unknown class");
    }
}

/// Whether evolve(t) advances (alpha1, alpha2).
std::pair<bool, bool> evolving_phases(CSTag tag) {
    if (is_one_degree(tag)) return {true, false};
    if (tag == CSTag::NestedAltPhase || tag == CSTag::NestedAltPhaseShifted) return {false, true};
    return {true, true};
}

}  // namespace

double phase(const CSClass& cls, const CSLabel& label, const LayerParams& p, int i, int j) {
    const auto [e1, e2] = phase_energies(cls, p, i, j);
    return e1 * label.alpha1 + e2 * label.alpha2;
}

double evolution_energy(const CSClass& cls, const LayerParams& p, int i, int j) {
    const auto [e1, e2] = phase_energies(cls, p, i, j);
    const auto [a1, a2] = evolving_phases(cls.tag);
    return (a1 ? e1 : 0.0) + (a2 ? e2 : 0.0);
}

double normalization(const CSClass& cls, const CSLabel& label, const LayerParams& p, double tol) {
    cls.validate();
    p.validate();
    if (is_one_degree(cls.tag)) return one_degree_sequence(cls, p).norm_sq(label.J1, tol);
    if (is_product(cls.tag)) {
        return m_axis_sequence(cls.tag, p).norm_sq(label.J1, tol) * n_axis_sequence(cls.tag, p).norm_sq(label.J2, tol);
    }
    return nested_axis(cls.tag, label.J1, label.J2, p, tol, tol).norm_sq;
}

double normalization_series(const CSClass& cls, const CSLabel& label, const LayerParams& p, double tol) {
    cls.validate();
    p.validate();
    if (is_one_degree(cls.tag)) return one_degree_sequence(cls, p).norm_sq_series(label.J1, tol);
    if (is_product(cls.tag)) {
        return m_axis_sequence(cls.tag, p).norm_sq_series(label.J1, tol) *
               n_axis_sequence(cls.tag, p).norm_sq_series(label.J2, tol);
    }
    // Nested: rows from their own direct series, outer sum to convergence.
    const EnergySequence m_seq = m_axis_sequence(cls.tag, p);
    double t = 1.0;
    double sum = 1.0 / nested_row_sequence(cls.tag, 0, p).norm_sq_series(label.J2, tol);
    for (int m = 1; m < kMaxRetained; ++m) {
        const double e = m_seq.energy(m);
        t *= label.J1 / e;
        if (e > 2.0 * label.J1 && (2.0 * t <= tol * sum || t == 0.0)) return sum;
        sum += t / nested_row_sequence(cls.tag, m, p).norm_sq_series(label.J2, tol);
    }
    throw NonConvergence("normalization_series: row cap reached");
}

TruncatedState build_state(const CSClass& cls, const CSLabel& label, const LayerParams& p, double eps_tail) {
    cls.validate();
    p.validate();
    if (!(eps_tail > 0.0 && eps_tail <= 1e-3)) throw DomainError("build_state: eps_tail must lie in (0, 1e-3]");
    TruncatedState s{cls, label, p, {}, 0.0};

    auto coefficient = [&](double amplitude, int i, int j) {
        return std::polar(amplitude, -phase(cls, label, p, i, j));
    };

    if (is_one_degree(cls.tag)) {
        const Axis ax = truncate_axis(one_degree_sequence(cls, p), label.J1, eps_tail);
        std::vector<Complex> row;
        row.reserve(ax.amp.size());
        for (std::size_t k = 0; k < ax.amp.size(); ++k) row.push_back(coefficient(ax.amp[k], 0, static_cast<int>(k)));
        s.coeffs.push_back(std::move(row));
        s.tail_bound = ax.tail;
        return s;
    }
    if (is_product(cls.tag)) {
        const Axis a1 = truncate_axis(m_axis_sequence(cls.tag, p), label.J1, 0.5 * eps_tail);
        const Axis a2 = truncate_axis(n_axis_sequence(cls.tag, p), label.J2, 0.5 * eps_tail);
        for (std::size_t m = 0; m < a1.amp.size(); ++m) {
            std::vector<Complex> row;
            row.reserve(a2.amp.size());
            for (std::size_t n = 0; n < a2.amp.size(); ++n) {
                row.push_back(coefficient(a1.amp[m] * a2.amp[n], static_cast<int>(m), static_cast<int>(n)));
            }
            s.coeffs.push_back(std::move(row));
        }
        s.tail_bound = a1.tail + a2.tail;
        return s;
    }
    const NestedAxis outer = nested_axis(cls.tag, label.J1, label.J2, p, 0.5 * eps_tail, specfun::kSeriesTol);
    double row_tail = 0.0;
    for (std::size_t m = 0; m < outer.weight.size(); ++m) {
        const int mi = static_cast<int>(m);
        const Axis inner = truncate_axis(nested_row_sequence(cls.tag, mi, p), label.J2, 0.5 * eps_tail);
        const double row_amp = std::sqrt(outer.weight[m] / outer.norm_sq);
        std::vector<Complex> row;
        row.reserve(inner.amp.size());
        for (std::size_t n = 0; n < inner.amp.size(); ++n) {
            row.push_back(coefficient(row_amp * inner.amp[n], mi, static_cast<int>(n)));
        }
        row_tail = std::max(row_tail, inner.tail);
        s.coeffs.push_back(std::move(row));
    }
    s.tail_bound = outer.tail + row_tail;
    return s;
}

Complex overlap(const TruncatedState& s1, const TruncatedState& s2) {
    if (!(s1.cls == s2.cls)) throw ClassMismatch("overlap: states belong to different classes or fixed indices");
    if (s1.params.B != s2.params.B || s1.params.d != s2.params.d) {
        throw ClassMismatch("overlap: states have different layer parameters");
    }
    Complex sum = 0.0;
    const std::size_t rows = std::min(s1.coeffs.size(), s2.coeffs.size());
    for (std::size_t i = 0; i < rows; ++i) {
        const std::size_t cols = std::min(s1.coeffs[i].size(), s2.coeffs[i].size());
        for (std::size_t j = 0; j < cols; ++j) sum += std::conj(s1.coeffs[i][j]) * s2.coeffs[i][j];
    }
    return sum;
}

namespace {

Complex axis_overlap(const EnergySequence& seq, double J, double alpha, double Jp, double alpha_p) {
    const double denom = std::sqrt(seq.norm_sq(J) * seq.norm_sq(Jp));
    const double root = std::sqrt(J * Jp);
    const double dalpha = alpha - alpha_p;
    if (seq.kind() == EnergySequence::Kind::Landau) {
        const double b = seq.slope();
        const Complex z = root * std::polar(1.0, b * dalpha) / b;
        const Complex f = specfun::hyp1f1(1.0, seq.gamma(), z).value;
        return std::polar(1.0, seq.offset() * dalpha) * f / denom;
    }
    if (dalpha != 0.0) {
        throw UnsupportedClass("overlap_closed_form: Layer-type axis has no closed form for unequal phases");
    }
    return seq.norm_sq(root) / denom;
}

}  // namespace

Complex overlap_closed_form(const CSClass& cls, const CSLabel& a, const CSLabel& b, const LayerParams& p) {
    cls.validate();
    p.validate();
    if (is_one_degree(cls.tag)) {
        return axis_overlap(one_degree_sequence(cls, p), a.J1, a.alpha1, b.J1, b.alpha1);
    }
    if (is_product(cls.tag)) {
        return axis_overlap(m_axis_sequence(cls.tag, p), a.J1, a.alpha1, b.J1, b.alpha1) *
               axis_overlap(n_axis_sequence(cls.tag, p), a.J2, a.alpha2, b.J2, b.alpha2);
    }
    throw UnsupportedClass("overlap_closed_form: no closed form for " + std::string(to_string(cls.tag)));
}

TruncatedState evolve(const TruncatedState& s, double t) {
    TruncatedState out = s;
    const auto [a1, a2] = evolving_phases(s.cls.tag);
    if (a1) out.label.alpha1 += t;
    if (a2) out.label.alpha2 += t;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
        for (std::size_t j = 0; j < out.coeffs[i].size(); ++j) {
            const double e = evolution_energy(s.cls, s.params, static_cast<int>(i), static_cast<int>(j));
            out.coeffs[i][j] *= std::polar(1.0, -e * t);
        }
    }
    return out;
}

VerificationReport action_identity_check(const CSClass& cls, const CSLabel& label, const LayerParams& p,
                                         double eps_tail) {
    cls.validate();
    if (cls.tag != CSTag::FixedNShifted && cls.tag != CSTag::FixedMShifted &&
        cls.tag != CSTag::NestedAltPhaseShifted) {
        throw UnsupportedClass("action identity holds only for the backward-shifted classes, not " +
                               std::string(to_string(cls.tag)));
    }
    const TruncatedState s = build_state(cls, label, p, eps_tail);
    double mean = 0.0;
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        for (std::size_t j = 0; j < s.coeffs[i].size(); ++j) {
            mean += std::norm(s.coeffs[i][j]) * evolution_energy(cls, p, static_cast<int>(i), static_cast<int>(j));
        }
    }
    const double target = is_one_degree(cls.tag) ? label.J1 : label.J2;
    quadrature::QuadratureResult none;
    none.converged = true;
    return make_report("action identity " + std::string(to_string(cls.tag)), target, mean, none);
}

}  // namespace coherent
}  // namespace gkcs
