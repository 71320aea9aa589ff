#include "gkcs/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gkcs/errors.hpp"

namespace gkcs::quadrature {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

// Kronrod abscissae; odd indices (1, 3, 5) are the Gauss-7 nodes, index 7 is the centre.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
    double a;
    double b;
    double value;
    double error;
};

struct PanelOrder {
    // Largest error first; ties resolved by the left endpoint for a deterministic order.
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.a > y.a;
    }
};

Panel gk15(const Integrand& f, double a, double b, long& evals) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(centre - dx);
        f2[j] = f(centre + dx);
        const double s = f1[j] + f2[j];
        resk += kWgk[j] * s;
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * s;
    }
    evals += 15;
    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }
    const double value = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
    if (!std::isfinite(value)) throw NonConvergence("quadrature: integrand produced a non-finite value");
    return {a, b, value, err};
}

bool accept(double value, double error, double rel_tol, double abs_tol) {
    return error <= std::max(rel_tol * std::abs(value), abs_tol);
}

/// Global adaptive integration over [a, b] seeded with `pieces` equal panels.
QuadratureResult adaptive(const Integrand& f, double a, double b, int pieces, double rel_tol, double abs_tol,
                          int max_subdivisions) {
    QuadratureResult out;
    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> queue;
    const double width = (b - a) / pieces;
    for (int i = 0; i < pieces; ++i) {
        const double lo = a + i * width;
        const double hi = (i + 1 == pieces) ? b : a + (i + 1) * width;
        queue.push(gk15(f, lo, hi, out.evaluations));
    }
    auto totals = [&]() {
        // Re-summed from scratch each time so the reported pair is free of drift.
        auto copy = queue;
        double v = 0.0;
        double e = 0.0;
        std::vector<Panel> all;
        all.reserve(copy.size());
        while (!copy.empty()) {
            all.push_back(copy.top());
            copy.pop();
        }
        std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
        for (const Panel& p : all) {
            v += p.value;
            e += p.error;
        }
        return std::pair{v, e};
    };

    double value = 0.0;
    double error = 0.0;
    std::tie(value, error) = totals();
    double best_value = value;
    double best_error = error;
    int subdivisions = pieces;
    while (!accept(value, error, rel_tol, abs_tol) && subdivisions < max_subdivisions) {
        const Panel worst = queue.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;  // panel below floating resolution
        queue.pop();
        const Panel left = gk15(f, worst.a, mid, out.evaluations);
        const Panel right = gk15(f, mid, worst.b, out.evaluations);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++subdivisions;
        if (subdivisions % 64 == 0) std::tie(value, error) = totals();
        if (error < best_error) {
            best_value = value;
            best_error = error;
        }
    }
    std::tie(value, error) = totals();
    if (error < best_error) {
        best_value = value;
        best_error = error;
    }
    out.value = best_value;
    out.error_estimate = best_error;
    out.converged = accept(best_value, best_error, rel_tol, abs_tol);
    return out;
}

QuadratureResult finish(QuadratureResult r, const QuadratureConfig& cfg, const char* what) {
    if (!r.converged && cfg.throw_on_failure) {
        throw NonConvergence(std::string(what) + ": subdivision budget exhausted before tolerance was met");
    }
    return r;
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(rel_tol >= 1e-14)) throw DomainError("quadrature: rel_tol must be >= 1e-14");
    if (!(abs_tol >= 0.0)) throw DomainError("quadrature: abs_tol must be >= 0");
    if (max_subdivisions < 1) throw DomainError("quadrature: max_subdivisions must be positive");
    if (!(split > 0.0)) throw DomainError("quadrature: split point must be positive");
    if (tail_cutoff == TailCutoff::UserUpperLimit && !(upper_limit > 0.0)) {
        throw DomainError("quadrature: user upper limit must be positive");
    }
}

QuadratureResult integrate_finite(const Integrand& f, double a, double b, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(a < b)) throw DomainError("integrate_finite: require a < b");
    return finish(adaptive(f, a, b, 1, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions), cfg, "integrate_finite");
}

QuadratureResult integrate_semi_infinite(const Integrand& f, const QuadratureConfig& cfg) {
    cfg.validate();
    const double c = (cfg.tail_cutoff == TailCutoff::UserUpperLimit) ? std::min(cfg.split, cfg.upper_limit)
                                                                       : cfg.split;
    // Head and tail each get half of both tolerances so their sum meets the full ones.
    const double abs_share = 0.5 * cfg.abs_tol;
    const double rel_share = 0.5 * cfg.rel_tol;

    // Head: x = u^2 removes x^{-1/2} singularities at the origin.
    const Integrand head_f = [&f](double u) { return u == 0.0 ? 0.0 : 2.0 * u * f(u * u); };
    QuadratureResult head =
        adaptive(head_f, 0.0, std::sqrt(c), 1, rel_share, abs_share, cfg.max_subdivisions);

    QuadratureResult tail;
    if (cfg.tail_cutoff == TailCutoff::UserUpperLimit) {
        if (cfg.upper_limit > c) {
            tail = adaptive(f, c, cfg.upper_limit, 1, rel_share, abs_share, cfg.max_subdivisions);
        } else {
            tail.converged = true;
        }
    } else {
        // Tail: x = c e^v, integrated on unit v-panels up to the decay cutoff V.
        const Integrand g = [&f, c](double v) {
            const double x = c * std::exp(v);
            return x * f(x);
        };
        constexpr int kMaxV = 600;
        double peak = std::abs(head.value);
        int below = 0;
        int V = 0;
        double gV = 0.0;
        for (int v = 0; v <= kMaxV; ++v) {
            gV = std::abs(g(v));
            ++tail.evaluations;
            peak = std::max(peak, gV);
            const double threshold = std::max(cfg.abs_tol * 1e-2, 1e-18 * peak);
            below = (gV < threshold) ? below + 1 : 0;
            if (below >= 3) {
                V = v;
                break;
            }
        }
        if (V == 0) {
            throw NonConvergence("integrate_semi_infinite: integrand does not decay within the cutoff search");
        }
        const long search_evals = tail.evaluations;
        tail = adaptive(g, 0.0, static_cast<double>(V), V, rel_share, abs_share, cfg.max_subdivisions);
        tail.evaluations += search_evals;
        tail.error_estimate += gV;
    }

    QuadratureResult out;
    out.value = head.value + tail.value;
    out.error_estimate = head.error_estimate + tail.error_estimate;
    out.evaluations = head.evaluations + tail.evaluations;
    out.converged = head.converged && tail.converged &&
                    accept(out.value, out.error_estimate, cfg.rel_tol, cfg.abs_tol);
    return finish(out, cfg, "integrate_semi_infinite");
}

}  // namespace gkcs::quadrature
