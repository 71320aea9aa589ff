#include "gkcs/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gkcs/errors.hpp"

namespace gkcs::algebra {

namespace {

using Vec = std::vector<Complex>;

Vec basis(int k, int length) {
    Vec v(static_cast<std::size_t>(length), Complex(0.0));
    v[static_cast<std::size_t>(k)] = 1.0;
    return v;
}

Vec sub(const Vec& a, const Vec& b) {
    Vec out(std::max(a.size(), b.size()), Complex(0.0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return out;
}

Vec scale(const Vec& a, Complex s) {
    Vec out = a;
    for (Complex& c : out) c *= s;
    return out;
}

double max_abs(const Vec& a) {
    double m = 0.0;
    for (const Complex c : a) m = std::max(m, std::abs(c));
    return m;
}

/// |lhs - rhs|_inf relative to |rhs|_inf (absolute when rhs vanishes).
double deviation(const Vec& lhs, const Vec& rhs) {
    const double diff = max_abs(sub(lhs, rhs));
    const double ref = max_abs(rhs);
    return ref > 0.0 ? diff / ref : diff;
}

/// Rescaled generator set built on the raw ladder of a spec.
struct Generators {
    const LadderSpec& spec;

    Vec lower(const Vec& v) const { return scale(apply_ladder(LadderOp::Lower, spec, v), spec.rescale); }
    Vec raise(const Vec& v) const { return scale(apply_ladder(LadderOp::Raise, spec, v), spec.rescale); }
    double nbar(int k) const {
        return spec.number_shift ? k + *spec.number_shift : spec.rescale * spec.rescale * spec.eigen_seq(k);
    }
    Vec number(const Vec& v) const {
        Vec out = v;
        for (std::size_t k = 0; k < out.size(); ++k) out[k] *= nbar(static_cast<int>(k));
        return out;
    }
};

int first_bulk_index(const LadderSpec& spec) { return spec.eigen_seq(0) == 0.0 ? 0 : 1; }

/// Largest deviation of the WH (su11 = false) or su(1,1) (su11 = true) triple.
double family_deviation(const LadderSpec& spec, int index_range, bool su11) {
    const Generators g{spec};
    double worst = 0.0;
    const int len = index_range + 2;
    for (int k = first_bulk_index(spec); k <= index_range; ++k) {
        const Vec v = basis(k, len);
        const Vec comm_aad = sub(g.lower(g.raise(v)), g.raise(g.lower(v)));
        const Vec rhs_aad = su11 ? scale(g.number(v), 2.0) : v;
        const Vec comm_nad = sub(g.number(g.raise(v)), g.raise(g.number(v)));
        const Vec comm_na = sub(g.number(g.lower(v)), g.lower(g.number(v)));
        worst = std::max({worst, deviation(comm_aad, rhs_aad), deviation(comm_nad, g.raise(v)),
                          deviation(comm_na, scale(g.lower(v), -1.0))});
    }
    return worst;
}

}  // namespace

std::string_view to_string(AlgebraKind kind) {
    switch (kind) {
        case AlgebraKind::WeylHeisenberg: return "weyl-heisenberg";
        case AlgebraKind::SU11: return "su11";
        case AlgebraKind::TensorWHxSU11: return "weyl-heisenberg x su11";
        case AlgebraKind::Unclassified: return "unclassified";
    }
    return "unknown";
}

std::string_view to_string(Relation rel) {
    switch (rel) {
        case Relation::AADag: return "[a,a+]";
        case Relation::NADag: return "[n,a+]";
        case Relation::NA: return "[n,a]";
    }
    return "unknown";
}

LadderSpec make_spec(std::string name, const EnergySequence& seq, double rescale, std::optional<double> number_shift) {
    if (!(rescale > 0.0)) throw DomainError("LadderSpec: rescale must be positive");
    return LadderSpec{std::move(name), [seq](int k) { return seq.energy(k); }, rescale, number_shift};
}

LadderSpec fixed_n_spec(int n, const LayerParams& p) {
    return make_spec("fixed-n", sequences::fixed_n(n, p), 1.0 / std::sqrt(2.0 * p.B));
}

LadderSpec fixed_m_spec(int m, const LayerParams& p) {
    return make_spec("fixed-m", sequences::fixed_m(m, p), p.d / std::numbers::pi, 1.5);
}

LadderSpec landau_spec(const LayerParams& p) {
    return make_spec("landau", sequences::landau(p), 1.0 / std::sqrt(2.0 * p.B));
}

LadderSpec layer_spec(const LayerParams& p) {
    return make_spec("layer", sequences::layer(p), p.d / std::numbers::pi, 1.5);
}

LadderSpec tensor_diagonal_spec(const EnergySequence& s1, const EnergySequence& s2, int m0, int n0) {
    if (m0 < 0 || n0 < 0) throw DomainError("tensor_diagonal_spec: start indices must be nonnegative");
    return LadderSpec{"tensor-diagonal(" + std::to_string(m0) + "," + std::to_string(n0) + ")",
                      [s1, s2, m0, n0](int k) { return s1.energy(m0 + k) * s2.energy(n0 + k); }, 1.0,
                      std::nullopt};
}

std::vector<Complex> apply_ladder(LadderOp op, const LadderSpec& spec, const std::vector<Complex>& coeffs) {
    const std::size_t n = coeffs.size();
    switch (op) {
        case LadderOp::Lower: {
            Vec out(n, Complex(0.0));
            for (std::size_t k = 1; k < n; ++k) out[k - 1] = std::sqrt(spec.eigen_seq(static_cast<int>(k))) * coeffs[k];
            return out;
        }
        case LadderOp::Raise: {
            Vec out(n + 1, Complex(0.0));
            for (std::size_t k = 0; k < n; ++k) {
                out[k + 1] = std::sqrt(spec.eigen_seq(static_cast<int>(k) + 1)) * coeffs[k];
            }
            return out;
        }
        case LadderOp::Number: {
            Vec out = coeffs;
            for (std::size_t k = 0; k < n; ++k) out[k] *= spec.eigen_seq(static_cast<int>(k));
            return out;
        }
    }
    throw DomainError("apply_ladder: unknown operator");
}

CommutatorReport commutator_check(const LadderSpec& spec, Relation relation, int index_range) {
    if (index_range < 2) throw DomainError("commutator_check: index_range must be >= 2");
    LadderSpec raw = spec;
    raw.rescale = 1.0;
    const auto e = spec.eigen_seq;
    CommutatorReport rep;
    rep.relation = std::string(to_string(relation));
    rep.first_index = first_bulk_index(spec);
    rep.last_index = index_range;
    const int len = index_range + 2;
    for (int k = 0; k <= index_range; ++k) {
        const Vec v = basis(k, len);
        Vec lhs;
        Vec rhs;
        switch (relation) {
            case Relation::AADag:
                lhs = sub(apply_ladder(LadderOp::Lower, raw, apply_ladder(LadderOp::Raise, raw, v)),
                          apply_ladder(LadderOp::Raise, raw, apply_ladder(LadderOp::Lower, raw, v)));
                rhs = scale(v, e(k + 1) - e(k));
                break;
            case Relation::NADag:
                lhs = sub(apply_ladder(LadderOp::Number, raw, apply_ladder(LadderOp::Raise, raw, v)),
                          apply_ladder(LadderOp::Raise, raw, apply_ladder(LadderOp::Number, raw, v)));
                rhs = scale(apply_ladder(LadderOp::Raise, raw, v), e(k + 1) - e(k));
                break;
            case Relation::NA:
                lhs = sub(apply_ladder(LadderOp::Number, raw, apply_ladder(LadderOp::Lower, raw, v)),
                          apply_ladder(LadderOp::Lower, raw, apply_ladder(LadderOp::Number, raw, v)));
                rhs = k > 0 ? scale(apply_ladder(LadderOp::Lower, raw, v), e(k - 1) - e(k)) : Vec(v.size(), 0.0);
                break;
        }
        if (k < rep.first_index) {
            rep.ground_defect = max_abs(sub(lhs, rhs));
        } else {
            rep.max_deviation = std::max(rep.max_deviation, deviation(lhs, rhs));
        }
    }
    return rep;
}

CommutatorReport classify_algebra(const LadderSpec& spec, int index_range, double tol) {
    if (index_range < 2) throw DomainError("classify_algebra: index_range must be >= 2");
    CommutatorReport rep;
    rep.first_index = first_bulk_index(spec);
    rep.last_index = index_range;
    const double wh = family_deviation(spec, index_range, false);
    if (wh <= tol) {
        rep.relation = "weyl-heisenberg triple";
        rep.max_deviation = wh;
        rep.classified_algebra = AlgebraKind::WeylHeisenberg;
        return rep;
    }
    const double su = family_deviation(spec, index_range, true);
    if (su <= tol) {
        rep.relation = "su11 triple";
        rep.max_deviation = su;
        rep.classified_algebra = AlgebraKind::SU11;
        return rep;
    }
    rep.relation = "no triple";
    rep.max_deviation = std::min(wh, su);
    return rep;
}

CommutatorReport classify_any_rescale(const LadderSpec& spec, int index_range, double tol) {
    const int f = first_bulk_index(spec);
    const auto e = spec.eigen_seq;
    const double d0 = e(f + 1) - e(f);
    const double d1 = e(f + 2) - e(f + 1);
    CommutatorReport best;
    best.max_deviation = std::numeric_limits<double>::infinity();
    if (d0 > 0.0) {
        LadderSpec wh = spec;
        wh.rescale = 1.0 / std::sqrt(d0);
        wh.number_shift.reset();
        CommutatorReport r = classify_algebra(wh, index_range, tol);
        if (r.classified_algebra == AlgebraKind::WeylHeisenberg) return r;
        if (r.max_deviation < best.max_deviation) best = r;
    }
    if (d1 - d0 > 0.0) {
        // r^2 (e_{k+1} - e_k) = 2 (k + s) fixes r^2 from the second difference.
        const double r2 = 2.0 / (d1 - d0);
        LadderSpec su = spec;
        su.rescale = std::sqrt(r2);
        su.number_shift = 0.5 * r2 * d0 - f;
        CommutatorReport r = classify_algebra(su, index_range, tol);
        if (r.classified_algebra == AlgebraKind::SU11) return r;
        if (r.max_deviation < best.max_deviation) best = r;
    }
    best.classified_algebra = AlgebraKind::Unclassified;
    best.relation = "no triple for any rescale";
    return best;
}

CommutatorReport classify_tensor(const LadderSpec& first, const LadderSpec& second, int index_range, double tol) {
    const CommutatorReport a = classify_algebra(first, index_range, tol);
    const CommutatorReport b = classify_algebra(second, index_range, tol);
    CommutatorReport rep;
    rep.relation = "tensor " + std::string(to_string(a.classified_algebra)) + " x " +
                   std::string(to_string(b.classified_algebra));
    rep.max_deviation = std::max(a.max_deviation, b.max_deviation);
    rep.first_index = std::max(a.first_index, b.first_index);
    rep.last_index = index_range;
    if (a.classified_algebra == AlgebraKind::WeylHeisenberg && b.classified_algebra == AlgebraKind::SU11) {
        rep.classified_algebra = AlgebraKind::TensorWHxSU11;
    }
    return rep;
}

VerificationReport annihilation_eigenstate_check(const CSClass& cls, const CSLabel& label, const LayerParams& p,
                                                 double eps_tail) {
    cls.validate();
    const TruncatedState s = coherent::build_state(cls, label, p, eps_tail);
    double residual_sq = 0.0;
    if (is_one_degree(cls.tag)) {
        const EnergySequence seq = coherent::one_degree_sequence(cls, p);
        const auto& c = s.coeffs[0];
        const double ev = std::sqrt(label.J1);
        for (std::size_t k = 0; k + 1 < c.size(); ++k) {
            const Complex image = std::sqrt(seq.energy(static_cast<int>(k) + 1)) * c[k + 1];
            residual_sq += std::norm(image - ev * c[k]);
        }
    } else if (cls.tag == CSTag::Product || cls.tag == CSTag::ProductShifted) {
        const EnergySequence s1 = coherent::m_axis_sequence(cls.tag, p);
        const EnergySequence s2 = coherent::n_axis_sequence(cls.tag, p);
        const double ev = std::sqrt(label.J1 * label.J2);
        for (std::size_t m = 0; m + 1 < s.coeffs.size(); ++m) {
            const auto& row = s.coeffs[m];
            const auto& next = s.coeffs[m + 1];
            for (std::size_t n = 0; n + 1 < row.size() && n + 1 < next.size(); ++n) {
                const double w = std::sqrt(s1.energy(static_cast<int>(m) + 1) * s2.energy(static_cast<int>(n) + 1));
                residual_sq += std::norm(w * next[n + 1] - ev * row[n]);
            }
        }
    } else {
        throw UnsupportedClass("annihilation eigenstate check: no product annihilator for " +
                               std::string(to_string(cls.tag)));
    }
    quadrature::QuadratureResult none;
    none.converged = true;
    return make_report("a|J,alpha> = sqrt(J)|J,alpha> " + std::string(to_string(cls.tag)), 0.0,
                       std::sqrt(residual_sq), none);
}

}  // namespace gkcs::algebra
