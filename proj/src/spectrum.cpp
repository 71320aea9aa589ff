#include "gkcs/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gkcs/errors.hpp"

namespace gkcs {

namespace {
constexpr double kPi = std::numbers::pi;
}

void LayerParams::validate() const {
    if (!(std::isfinite(B) && B > 0.0)) throw DomainError("LayerParams: B must be finite and positive");
    if (!(std::isfinite(d) && d > 0.0)) throw DomainError("LayerParams: d must be finite and positive");
}

double LayerParams::q() const {
    const double k = kPi / d;
    return k * k;
}

VerificationReport make_report(std::string label, double target, double computed,
                               const quadrature::QuadratureResult& quad) {
    VerificationReport r;
    r.label = std::move(label);
    r.target = target;
    r.computed = computed;
    r.abs_err = std::abs(target - computed);
    r.rel_err = target != 0.0 ? r.abs_err / std::abs(target) : r.abs_err;
    r.quadrature = quad;
    return r;
}

namespace spectrum {

double energy_full(const QuantumNumbers& qn, const LayerParams& p) {
    if (qn.m < 0 || qn.n < 0) throw DomainError("energy_full: m and n must be nonnegative");
    const double k = kPi * (qn.n + 1) / p.d;
    return p.B * (2.0 * qn.m + qn.l + std::abs(qn.l) + 1.0) + k * k;
}

double energy_mn(int m, int n, const LayerParams& p) {
    if (m < 0 || n < 0) throw DomainError("energy_mn: m and n must be nonnegative");
    const double k = kPi * (n + 1) / p.d;
    return p.B * (2.0 * m + 1.0) + k * k;
}

double laguerre(int m, double alpha, double x) {
    if (m < 0) throw DomainError("laguerre: negative degree");
    double prev = 1.0;
    if (m == 0) return prev;
    double cur = 1.0 + alpha - x;
    for (int k = 1; k < m; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double kummer_polynomial(int m, double b, double x) {
    // (b)_m / m! accumulated as a product of ratios to stay in range.
    double scale = 1.0;
    for (int k = 1; k <= m; ++k) scale *= k / (b + k - 1.0);
    return scale * laguerre(m, b - 1.0, x);
}

double radial_norm_sq(int m, int l, double B) {
    const int al = std::abs(l);
    const double log_n2 = (al + 1.0) * std::log(0.5 * B) + std::lgamma(al + 1.0 + m) - std::lgamma(al + 1.0) -
                          std::lgamma(al + 1.0) - std::lgamma(m + 1.0) - std::log(kPi);
    return std::exp(log_n2);
}

Complex eigenfunction(const QuantumNumbers& qn, const LayerParams& p, double r, double theta, double z) {
    p.validate();
    if (qn.m < 0 || qn.n < 0) throw DomainError("eigenfunction: m and n must be nonnegative");
    if (r < 0.0 || z < 0.0 || z > p.d) throw DomainError("eigenfunction: point outside the layer");
    const int al = std::abs(qn.l);
    const double x = 0.5 * p.B * r * r;
    const double radial = std::sqrt(radial_norm_sq(qn.m, qn.l, p.B)) * std::pow(r, al) * std::exp(-0.5 * x) *
                          kummer_polynomial(qn.m, al + 1.0, x);
    const double chi = std::sqrt(2.0 / p.d) * std::sin((qn.n + 1) * kPi * z / p.d);
    return radial * chi * std::polar(1.0, qn.l * theta);
}

VerificationReport orthonormality_check(const QuantumNumbers& q1, const QuantumNumbers& q2, const LayerParams& p,
                                        const quadrature::QuadratureConfig& cfg) {
    p.validate();
    const std::string label = "<" + std::to_string(q1.m) + "," + std::to_string(q1.l) + "," + std::to_string(q1.n) +
                              "|" + std::to_string(q2.m) + "," + std::to_string(q2.l) + "," +
                              std::to_string(q2.n) + ">";
    const bool same = q1.m == q2.m && q1.l == q2.l && q1.n == q2.n;
    const double target = same ? 1.0 : 0.0;
    // Angular factor 2 pi delta_{l l'}; layer factor delta_{n n'}.
    if (q1.l != q2.l || q1.n != q2.n) {
        quadrature::QuadratureResult exact;
        exact.converged = true;
        return make_report(label, target, 0.0, exact);
    }
    const int al = std::abs(q1.l);
    const double norm = 2.0 * kPi * std::sqrt(radial_norm_sq(q1.m, q1.l, p.B) * radial_norm_sq(q2.m, q2.l, p.B));
    const double B = p.B;
    const auto integrand = [=](double r) {
        const double x = 0.5 * B * r * r;
        return norm * std::pow(r, 2 * al + 1) * std::exp(-x) * kummer_polynomial(q1.m, al + 1.0, x) *
               kummer_polynomial(q2.m, al + 1.0, x);
    };
    quadrature::QuadratureConfig c = cfg;
    c.abs_tol = std::max(c.abs_tol, 1e-10);  // off-diagonal values cancel between head and tail
    const auto quad = quadrature::integrate_semi_infinite(integrand, c);
    return make_report(label, target, quad.value, quad);
}

std::optional<std::pair<long long, long long>> detect_rational(double x, long long q_max) {
    if (!std::isfinite(x)) return std::nullopt;
    const double eps = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x));
    // Convergents h_k / k_k of the continued fraction of x.
    long double h_prev = 1.0L, h = std::floor(static_cast<long double>(x));
    long double k_prev = 0.0L, k = 1.0L;
    long double rem = static_cast<long double>(x) - h;
    for (int iter = 0; iter < 64; ++iter) {
        if (k > static_cast<long double>(q_max)) return std::nullopt;
        if (std::abs(static_cast<long double>(x) - h / k) <= eps) {
            return std::pair{static_cast<long long>(h), static_cast<long long>(k)};
        }
        if (rem == 0.0L) return std::nullopt;
        const long double inv = 1.0L / rem;
        const long double a = std::floor(inv);
        rem = inv - a;
        const long double h_next = a * h + h_prev;
        const long double k_next = a * k + k_prev;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
    }
    return std::nullopt;
}

DegeneracyReport degeneracy_probe(const LayerParams& p, int m_max, int n_max, double tol, long long q_max) {
    p.validate();
    if (m_max < 0 || n_max < 0) throw DomainError("degeneracy_probe: bounds must be nonnegative");
    DegeneracyReport rep;
    rep.ratio = (kPi * kPi) / (p.B * p.d * p.d);
    rep.rational = detect_rational(rep.ratio, q_max);

    struct Level {
        LevelPair idx;
        double E;
    };
    std::vector<Level> levels;
    for (int m = 0; m <= m_max; ++m) {
        for (int n = 0; n <= n_max; ++n) levels.push_back({{m, n}, energy_mn(m, n, p)});
    }
    for (std::size_t i = 0; i < levels.size(); ++i) {
        for (std::size_t j = i + 1; j < levels.size(); ++j) {
            const double scale = 1.0 + std::max(std::abs(levels[i].E), std::abs(levels[j].E));
            if (std::abs(levels[i].E - levels[j].E) <= tol * scale) {
                // Larger m first, so the pair reads as (Landau-excited, layer-excited).
                const bool swap = levels[j].idx.m > levels[i].idx.m;
                rep.collisions.emplace_back(swap ? levels[j].idx : levels[i].idx,
                                            swap ? levels[i].idx : levels[j].idx);
            }
        }
    }
    return rep;
}

}  // namespace spectrum
}  // namespace gkcs
