#include "gkcs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gkcs/errors.hpp"
#include "gkcs/specfun.hpp"

namespace gkcs::stats {

namespace {

bool is_nested(CSTag tag) {
    return tag == CSTag::Nested || tag == CSTag::NestedAltPhase || tag == CSTag::NestedAltPhaseShifted;
}

double real_value(const specfun::SeriesResult& r, const char* what) {
    if (!r.converged) throw NonConvergence(std::string("stats: series did not converge for ") + what);
    return r.value.real();
}

double f11(double a, double b, double x) { return real_value(specfun::hyp1f1(a, b, x), "1F1"); }

double f12(double a, Complex b1, Complex b2, double y) {
    return real_value(specfun::hyp1f2(a, b1, b2, Complex(y)), "1F2");
}

/// J^k / rho(k) from logarithms; exact 0 / 1 at J = 0.
double power_over_rho(const EnergySequence& seq, int k, double J) {
    if (k < 0) throw DomainError("prob: index must be nonnegative");
    if (J == 0.0) return k == 0 ? 1.0 : 0.0;
    const double rho = seq.rho(k);
    if (!std::isfinite(rho)) return 0.0;
    return std::exp(k * std::log(J) - std::log(rho));
}

/// Unnormalized weights J^k / rho(k) with their energies, summed until the
/// E^2-weighted term is negligible.
struct AxisSeries {
    std::vector<double> weight;
    std::vector<double> energy;
    double total = 0.0;
};

AxisSeries axis_series(const EnergySequence& seq, double J) {
    if (!(J >= 0.0)) throw DomainError("stats: J must be nonnegative");
    AxisSeries ax;
    ax.weight.push_back(1.0);
    ax.energy.push_back(seq.energy(0));
    ax.total = 1.0;
    if (J == 0.0) return ax;
    double acc2 = seq.energy(0) * seq.energy(0);
    double t = 1.0;
    for (int k = 1; k <= kMaxTerms; ++k) {
        const double e = seq.energy(k);
        t *= J / e;
        ax.weight.push_back(t);
        ax.energy.push_back(e);
        ax.total += t;
        acc2 += t * e * e;
        if (e > 2.0 * J && t * e * e <= kTermTol * acc2 && t <= kTermTol * ax.total) return ax;
    }
    throw NonConvergence("stats: brute-force series hit the term cap");
}

/// Flattened (weight, eigenvalue) cells of a class, weights unnormalized.
struct Cells {
    std::vector<double> weight;
    std::vector<double> value;
};

Cells collect_cells(const CSClass& cls, const CSLabel& label, const LayerParams& p) {
    Cells c;
    if (is_one_degree(cls.tag)) {
        const AxisSeries ax = axis_series(coherent::one_degree_sequence(cls, p), label.J1);
        c.weight = ax.weight;
        c.value = ax.energy;
        return c;
    }
    if (!is_nested(cls.tag)) {
        const AxisSeries a1 = axis_series(coherent::m_axis_sequence(cls.tag, p), label.J1);
        const AxisSeries a2 = axis_series(coherent::n_axis_sequence(cls.tag, p), label.J2);
        for (std::size_t m = 0; m < a1.weight.size(); ++m) {
            for (std::size_t n = 0; n < a2.weight.size(); ++n) {
                c.weight.push_back(a1.weight[m] * a2.weight[n]);
                c.value.push_back(a1.energy[m] * a2.energy[n]);
            }
        }
        return c;
    }
    // Nested: row m carries u_m = J1^m / (rho_2(m) N_row(m)^2); rows are exhausted
    // once the outer majorant and the row's second moment both fall below tolerance.
    const EnergySequence outer = coherent::m_axis_sequence(cls.tag, p);
    double t = 1.0;
    double acc0 = 0.0;
    double acc2 = 0.0;
    for (int m = 0; m <= kMaxTerms; ++m) {
        const double em = outer.energy(m);
        if (m > 0) t *= label.J1 / em;
        const AxisSeries row = axis_series(coherent::nested_row_sequence(cls.tag, m, p), label.J2);
        const double u = t / row.total;
        double row0 = 0.0;
        double row2 = 0.0;
        for (std::size_t n = 0; n < row.weight.size(); ++n) {
            const double w = u * row.weight[n];
            const double v = em * row.energy[n];
            c.weight.push_back(w);
            c.value.push_back(v);
            row0 += w;
            row2 += w * v * v;
        }
        acc0 += row0;
        acc2 += row2;
        if (label.J1 == 0.0) return c;
        if (em > 2.0 * label.J1 && row2 <= kTermTol * acc2 && row0 <= kTermTol * acc0) return c;
    }
    throw NonConvergence("stats: nested brute-force series hit the row cap");
}

double q_from_moments(double mean, double mean2) { return mean2 / mean - mean - 1.0; }

/// Closed-form <e> and <e^2> of a Landau-type axis: e_k = b k + omega.
struct LandauForms {
    double q3;  // <k>
    double q5;  // <k^2>
};

LandauForms landau_forms(const EnergySequence& seq, double J) {
    const double g = seq.gamma();
    const double x = J / seq.slope();
    const double F1 = f11(1.0, g, x);
    const double F2 = f11(2.0, g + 1.0, x);
    const double F3 = f11(3.0, g + 2.0, x);
    return {x / g * F2 / F1, (x / g * F2 + 2.0 * x * x / (g * (g + 1.0)) * F3) / F1};
}

double fixed_n_closed(const EnergySequence& seq, double J) {
    const double B = 0.5 * seq.slope();
    const double w = seq.offset();
    const double g = seq.gamma();
    const double x = J / seq.slope();
    const double F1 = f11(1.0, g, x);
    const double F2 = f11(2.0, g + 1.0, x);
    const double F3 = f11(3.0, g + 2.0, x);
    const double num = 2.0 * J * (B + w) * (g + 1.0) * F2 + 2.0 * J * J * F3 + g * (g + 1.0) * w * w * F1;
    const double den = (g + 1.0) * (J * F2 + g * w * F1);
    return num / den - J * F2 / (g * F1) - w - 1.0;
}

double fixed_m_closed(const EnergySequence& seq, double J) {
    const LayerSubstitution s = LayerSubstitution::of(seq, J);
    const double Q1 = q1_closed(s);
    const double Q2 = q2_closed(s);
    const double p = seq.offset();
    const double q = seq.scale();
    return (p * p + 2.0 * p * q * Q1 + q * q * Q2) / (p + q * Q1) - p - q * Q1 - 1.0;
}

double product_closed(const LayerParams& p, const CSLabel& label) {
    const LandauForms lf = landau_forms(sequences::landau(p), label.J1);
    const LayerSubstitution s = LayerSubstitution::of(sequences::layer(p), label.J2);
    const double Q3 = lf.q3;
    const double Q4 = q1_closed(s);
    const double Q5 = lf.q5;
    const double Q6 = q2_closed(s);
    const double Bq = p.B * p.q();
    return Bq * Q6 * (4.0 * Q5 + 4.0 * Q3 + 1.0) / (Q4 * (2.0 * Q3 + 1.0)) - Bq * Q4 * (2.0 * Q3 + 1.0) - 1.0;
}

/// Same tensor structure as the product form, on the shifted axes.
double product_shifted_closed(const LayerParams& p, const CSLabel& label) {
    const EnergySequence s1 = sequences::fixed_n_shifted(p);
    const EnergySequence s2 = sequences::fixed_m_shifted(p);
    const LandauForms lf = landau_forms(s1, label.J1);
    const double b = s1.slope();
    const double e1 = b * lf.q3;
    const double e1sq = b * b * lf.q5;
    const LayerSubstitution s = LayerSubstitution::of(s2, label.J2);
    const double Q1 = q1_closed(s);
    const double Q2 = q2_closed(s);
    const double pp = s2.offset();
    const double q = s2.scale();
    const double e2 = pp + q * Q1;
    const double e2sq = pp * pp + 2.0 * pp * q * Q1 + q * q * Q2;
    return q_from_moments(e1 * e2, e1sq * e2sq);
}

/// sum_k f(k) w_k / sum_k w_k over an axis series.
template <class F>
double axis_average(const AxisSeries& ax, F f) {
    double s = 0.0;
    for (std::size_t k = 0; k < ax.weight.size(); ++k) s += ax.weight[k] * f(static_cast<double>(k));
    return s / ax.total;
}

}  // namespace

LayerSubstitution LayerSubstitution::of(const EnergySequence& layer_seq, double J) {
    if (layer_seq.kind() != EnergySequence::Kind::Layer) throw UnsupportedClass("LayerSubstitution: not a layer sequence");
    return {layer_seq.beta1(), layer_seq.beta2(), J / layer_seq.scale()};
}

double q1_closed(const LayerSubstitution& s) {
    const double y = s.y;
    const double bb = (s.beta * s.beta_bar).real();
    const double F = f12(1.0, s.beta_bar, s.beta, y);
    return (f12(2.0, s.beta_bar, s.beta, y) + 2.0 * y / bb * f12(3.0, s.beta_bar + 1.0, s.beta + 1.0, y)) / F;
}

double q2_closed(const LayerSubstitution& s) {
    const double y = s.y;
    const double bb = (s.beta * s.beta_bar).real();
    const double bsum = (s.beta + s.beta_bar).real();
    const double b1b1 = ((s.beta + 1.0) * (s.beta_bar + 1.0)).real();
    const double F = f12(1.0, s.beta_bar, s.beta, y);
    const double t2 = (2.0 * y + 1.0) * f12(2.0, s.beta_bar, s.beta, y);
    const double t3 = 2.0 * y * (bb - y - 7.0) / bb * f12(3.0, s.beta_bar + 1.0, s.beta + 1.0, y);
    const double t4 = 6.0 * y * y * (bsum - 5.0) / (bb * b1b1) * f12(4.0, s.beta_bar + 2.0, s.beta + 2.0, y);
    return (t2 - t3 - t4) / F;
}

double prob(const CSClass& cls, int k, const CSLabel& label, const LayerParams& p) {
    cls.validate();
    if (!is_one_degree(cls.tag)) throw ClassMismatch("prob: one index given for a two-degree class");
    const EnergySequence seq = coherent::one_degree_sequence(cls, p);
    return power_over_rho(seq, k, label.J1) / seq.norm_sq(label.J1);
}

double prob(const CSClass& cls, int m, int n, const CSLabel& label, const LayerParams& p) {
    cls.validate();
    if (is_one_degree(cls.tag)) throw ClassMismatch("prob: two indices given for a one-degree class");
    if (!is_nested(cls.tag)) {
        const EnergySequence s1 = coherent::m_axis_sequence(cls.tag, p);
        const EnergySequence s2 = coherent::n_axis_sequence(cls.tag, p);
        return power_over_rho(s1, m, label.J1) / s1.norm_sq(label.J1) * power_over_rho(s2, n, label.J2) /
               s2.norm_sq(label.J2);
    }
    const EnergySequence row = coherent::nested_row_sequence(cls.tag, m, p);
    const double row_n2 = row.norm_sq(label.J2);
    const double u = power_over_rho(coherent::m_axis_sequence(cls.tag, p), m, label.J1) / row_n2;
    return u / coherent::normalization(cls, label, p) * power_over_rho(row, n, label.J2) / row_n2;
}

double number_eigenvalue(const CSClass& cls, const LayerParams& p, int i, int j) {
    cls.validate();
    if (is_one_degree(cls.tag)) return coherent::one_degree_sequence(cls, p).energy(j);
    const double em = coherent::m_axis_sequence(cls.tag, p).energy(i);
    if (is_nested(cls.tag)) return em * coherent::nested_row_sequence(cls.tag, i, p).energy(j);
    return em * coherent::n_axis_sequence(cls.tag, p).energy(j);
}

StatReport mandel_q(const CSClass& cls, const CSLabel& label, const LayerParams& p, double tol) {
    cls.validate();
    p.validate();
    if (!(tol > 0.0)) throw DomainError("mandel_q: tol must be positive");
    const Cells c = collect_cells(cls, label, p);
    double z = 0.0;
    for (const double w : c.weight) z += w;
    double mean = 0.0;
    for (std::size_t i = 0; i < c.weight.size(); ++i) mean += c.weight[i] * c.value[i];
    mean /= z;
    double var = 0.0;
    for (std::size_t i = 0; i < c.weight.size(); ++i) {
        const double dv = c.value[i] - mean;
        var += c.weight[i] * dv * dv;
    }
    var /= z;

    StatReport r;
    r.terms = static_cast<int>(c.weight.size());
    r.mean_n = mean;
    r.mean_n2 = var + mean * mean;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.mandel_q_series = mean > 0.0 ? (var - mean) / mean : nan;

    r.closed_form_used = true;
    switch (cls.tag) {
        case CSTag::FixedN:
        case CSTag::FixedNShifted:
            r.mandel_q_closed = fixed_n_closed(coherent::one_degree_sequence(cls, p), label.J1);
            break;
        case CSTag::FixedM:
        case CSTag::FixedMShifted:
            r.mandel_q_closed = fixed_m_closed(coherent::one_degree_sequence(cls, p), label.J1);
            break;
        case CSTag::Product: r.mandel_q_closed = product_closed(p, label); break;
        case CSTag::ProductShifted: r.mandel_q_closed = product_shifted_closed(p, label); break;
        default:
            r.closed_form_used = false;
            r.mandel_q_closed = nan;
            break;
    }
    if (r.closed_form_used && !(mean > 0.0)) r.mandel_q_closed = nan;  // 0/0 at the shifted ground state
    r.mandel_q = r.closed_form_used ? r.mandel_q_closed : r.mandel_q_series;
    if (r.closed_form_used && std::isfinite(r.mandel_q_series)) {
        r.oracle_deviation =
            std::abs(r.mandel_q_closed - r.mandel_q_series) / std::max(1.0, std::abs(r.mandel_q_series));
    }
    return r;
}

std::map<std::string, ComponentValue> q_components(const CSClass& cls, const CSLabel& label, const LayerParams& p) {
    cls.validate();
    std::map<std::string, ComponentValue> out;
    const auto sq = [](double k) { return (k + 1.0) * (k + 1.0); };
    const auto quart = [&](double k) { return sq(k) * sq(k); };
    switch (cls.tag) {
        case CSTag::FixedM:
        case CSTag::FixedMShifted: {
            const EnergySequence seq = coherent::one_degree_sequence(cls, p);
            const LayerSubstitution s = LayerSubstitution::of(seq, label.J1);
            const AxisSeries ax = axis_series(seq, label.J1);
            out["Q1"] = {q1_closed(s), axis_average(ax, sq)};
            out["Q2"] = {q2_closed(s), axis_average(ax, quart)};
            return out;
        }
        case CSTag::Product: {
            const EnergySequence s1 = sequences::landau(p);
            const EnergySequence s2 = sequences::layer(p);
            const LandauForms lf = landau_forms(s1, label.J1);
            const LayerSubstitution s = LayerSubstitution::of(s2, label.J2);
            const AxisSeries a1 = axis_series(s1, label.J1);
            const AxisSeries a2 = axis_series(s2, label.J2);
            out["Q3"] = {lf.q3, axis_average(a1, [](double k) { return k; })};
            out["Q4"] = {q1_closed(s), axis_average(a2, sq)};
            out["Q5"] = {lf.q5, axis_average(a1, [](double k) { return k * k; })};
            out["Q6"] = {q2_closed(s), axis_average(a2, quart)};
            return out;
        }
        default: break;
    }
    throw UnsupportedClass("q_components: no published components for " + std::string(to_string(cls.tag)));
}

std::vector<TableEntry> distribution_table(const CSClass& cls, const CSLabel& label, const LayerParams& p,
                                           int k_max) {
    cls.validate();
    if (k_max < 0) throw DomainError("distribution_table: k_max must be nonnegative");
    std::vector<TableEntry> out;
    const auto push = [&](int i, int j, double P) {
        if (P > 0.0) out.push_back({i, j, P});
    };
    if (is_one_degree(cls.tag)) {
        for (int k = 0; k <= k_max; ++k) push(0, k, prob(cls, k, label, p));
        return out;
    }
    for (int m = 0; m <= k_max; ++m) {
        for (int n = 0; n <= k_max; ++n) push(m, n, prob(cls, m, n, label, p));
    }
    return out;
}

}  // namespace gkcs::stats
