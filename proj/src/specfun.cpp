#include "gkcs/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>

#include "gkcs/errors.hpp"

namespace gkcs::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Stirling series coefficients B_{2k} / (2k (2k-1)), k = 1..8.
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,        -1.0 / 360.0,          1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,      -691.0 / 360360.0,     1.0 / 156.0,  -3617.0 / 122400.0,
};

/// Nonnegative integer M with z == -M, if any.
std::optional<long> nonpositive_integer_index(Complex z, double tol) {
    if (std::abs(z.imag()) > tol) return std::nullopt;
    const double r = std::round(z.real());
    if (r > 0.0 || std::abs(z.real() - r) > tol) return std::nullopt;
    return static_cast<long>(-r);
}

Complex ln_gamma_stirling(Complex z) {
    const Complex inv = 1.0 / z;
    const Complex inv2 = inv * inv;
    Complex corr = 0.0;
    Complex p = inv;
    for (double c : kStirling) {
        corr += c * p;
        p *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + corr;
}

/// Generalized hypergeometric series pFq by term ratios.
SeriesResult hyp_series(std::span<const Complex> a, std::span<const Complex> b, Complex x, double tol) {
    // Exact termination index from a numerator parameter -M.
    std::optional<long> stop_at;
    for (const Complex ai : a) {
        if (auto m = nonpositive_integer_index(ai, kPoleTol)) {
            stop_at = stop_at ? std::min(*stop_at, *m) : *m;
        }
    }
    for (const Complex bj : b) {
        if (auto n = nonpositive_integer_index(bj, kPoleTol)) {
            if (!stop_at || *stop_at > *n) {
                throw PoleError("hypergeometric series: denominator parameter is a nonpositive integer");
            }
        }
    }

    SeriesResult res;
    Complex term = 1.0;
    Complex sum = 1.0;
    res.terms_used = 1;
    if (x == Complex(0.0)) {
        res.value = sum;
        res.converged = true;
        return res;
    }

    std::array<double, 3> recent = {std::abs(term), 0.0, 0.0};
    int small_run = 0;
    for (long k = 0;; ++k) {
        if (stop_at && k >= *stop_at) {
            res.value = sum;
            res.tail_estimate = 0.0;
            res.converged = true;
            return res;
        }
        if (res.terms_used >= kMaxSeriesTerms) {
            res.value = sum;
            res.tail_estimate = std::max({recent[0], recent[1], recent[2]});
            throw NonConvergence("hypergeometric series: term cap of " + std::to_string(kMaxSeriesTerms) +
                                 " reached");
        }
        const double kd = static_cast<double>(k);
        Complex ratio = x / (kd + 1.0);
        for (const Complex ai : a) ratio *= ai + kd;
        for (const Complex bj : b) ratio /= bj + kd;
        term *= ratio;
        sum += term;
        ++res.terms_used;
        recent[static_cast<std::size_t>(res.terms_used % 3)] = std::abs(term);

        // The ratio must also be contracting, so a transient dip cannot end the sum.
        if (std::abs(term) <= tol * std::abs(sum) && std::abs(ratio) < 1.0) {
            ++small_run;
        } else {
            small_run = 0;
        }
        if (small_run >= 3) {
            res.value = sum;
            res.tail_estimate = std::max({recent[0], recent[1], recent[2]});
            res.converged = true;
            return res;
        }
    }
}

/// Tanh-sinh quadrature of g on [0, T]; returns the integral and the L1 norm.
struct DEResult {
    double value;
    double l1;
};

template <class G>
DEResult tanh_sinh(const G& g, double T, double tol) {
    constexpr double kUMax = 3.2;
    constexpr int kMaxLevel = 12;
    const double half = 0.5 * T;
    auto node = [&](double u, double& w) {
        const double s = 0.5 * kPi * std::sinh(u);
        const double ch = std::cosh(s);
        w = half * 0.5 * kPi * std::cosh(u) / (ch * ch);
        // 1 + tanh(s) written to avoid cancellation near the left endpoint.
        const double e = std::exp(-2.0 * std::abs(s));
        const double one_plus_tanh = s >= 0 ? 2.0 / (1.0 + e) : 2.0 * e / (1.0 + e);
        return half * one_plus_tanh;
    };

    double h = 0.5;
    double sum = 0.0;
    double l1 = 0.0;
    {
        double w = 0.0;
        const double t0 = node(0.0, w);
        const double g0 = g(t0);
        sum += w * g0;
        l1 += w * std::abs(g0);
        for (int j = 1; j * h <= kUMax; ++j) {
            for (double su : {j * h, -j * h}) {
                const double t = node(su, w);
                const double gv = g(t);
                sum += w * gv;
                l1 += w * std::abs(gv);
            }
        }
    }
    double prev = sum * h;
    for (int level = 1; level <= kMaxLevel; ++level) {
        h *= 0.5;
        for (int j = 1; j * h <= kUMax; j += 2) {
            for (double su : {j * h, -j * h}) {
                double w = 0.0;
                const double t = node(su, w);
                const double gv = g(t);
                sum += w * gv;
                l1 += w * std::abs(gv);
            }
        }
        const double cur = sum * h;
        const double diff = std::abs(cur - prev);
        if (level >= 3 && diff <= std::max(tol * std::abs(cur), 32.0 * kEps * l1 * h)) {
            return {cur, l1 * h};
        }
        prev = cur;
    }
    throw NonConvergence("bessel_k: tanh-sinh refinement did not converge");
}

}  // namespace

bool is_nonpositive_integer(Complex z, double tol) {
    return nonpositive_integer_index(z, tol).has_value();
}

Complex ln_gamma(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("ln_gamma: non-finite argument");
    }
    if (is_nonpositive_integer(z)) {
        throw PoleError("ln_gamma: argument is a nonpositive integer");
    }
    if (z.real() < 0.5) {
        // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
        return std::log(kPi) - std::log(std::sin(kPi * z)) - ln_gamma(1.0 - z);
    }
    Complex shift = 0.0;
    while (z.real() < 8.0) {
        shift += std::log(z);
        z += 1.0;
    }
    return ln_gamma_stirling(z) - shift;
}

Complex pochhammer(Complex a, int k) {
    if (k < 0) throw DomainError("pochhammer: negative k");
    Complex p = 1.0;
    for (int i = 0; i < k; ++i) p *= a + static_cast<double>(i);
    return p;
}

double pochhammer(double a, int k) {
    if (k < 0) throw DomainError("pochhammer: negative k");
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= a + static_cast<double>(i);
    return p;
}

SeriesResult hyp1f1(Complex a, Complex b, Complex x, double tol) {
    const std::array<Complex, 1> av{a};
    const std::array<Complex, 1> bv{b};
    return hyp_series(av, bv, x, tol);
}

SeriesResult hyp1f2(Complex a, Complex b1, Complex b2, Complex x, double tol) {
    const std::array<Complex, 1> av{a};
    const std::array<Complex, 2> bv{b1, b2};
    SeriesResult r = hyp_series(av, bv, x, tol);
    const bool conjugate_pair = std::abs(b2 - std::conj(b1)) <= kPoleTol * (1.0 + std::abs(b1));
    if (conjugate_pair && a.imag() == 0.0 && x.imag() == 0.0) {
        const double re = r.value.real();
        if (std::abs(r.value.imag()) > tol * (1.0 + std::abs(re))) {
            throw DomainError("hyp1f2: conjugate-parameter sum has a non-negligible imaginary part");
        }
        r.value = Complex(re, 0.0);
    }
    return r;
}

SeriesResult hyp0f1(Complex b, Complex x, double tol) {
    const std::array<Complex, 1> bv{b};
    return hyp_series(std::span<const Complex>{}, bv, x, tol);
}

double bessel_k(Complex order, double x, double tol) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("bessel_k: x must be positive and finite");
    const double re = order.real();
    const double im = order.imag();
    const bool real_order = std::abs(im) <= kPoleTol * (1.0 + std::abs(re));
    const bool imag_order = std::abs(re) <= kPoleTol * (1.0 + std::abs(im));
    if (!real_order && !imag_order) {
        throw DomainError("bessel_k: order must be real or purely imaginary");
    }
    const double nu = real_order ? std::abs(re) : 0.0;
    const double y = real_order ? 0.0 : std::abs(im);

    // log of the scaled envelope e^{-x(cosh t - 1) + nu t}
    auto envelope = [&](double t) { return -x * (std::cosh(t) - 1.0) + nu * t; };
    const double t_peak = std::asinh(nu / x);
    const double peak = envelope(t_peak);
    double T = std::max(t_peak, 1.0);
    while (envelope(T) > peak - 45.0) T += 0.25;

    auto g = [&](double t) {
        const double damp = -x * (std::cosh(t) - 1.0);
        if (real_order) {
            return 0.5 * (std::exp(damp + nu * t) + std::exp(damp - nu * t));
        }
        return std::exp(damp) * std::cos(y * t);
    };
    const DEResult r = tanh_sinh(g, T, tol);
    return std::exp(-x) * r.value;
}

double bessel_i(int order, double x, double tol) {
    if (order < 0) throw DomainError("bessel_i: negative order");
    if (x < 0.0) throw DomainError("bessel_i: negative argument");
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    const double h = 0.5 * x;
    double term = std::exp(static_cast<double>(order) * std::log(h) - std::lgamma(order + 1.0));
    double sum = term;
    int small_run = 0;
    for (int k = 0; k < kMaxSeriesTerms; ++k) {
        term *= h * h / ((k + 1.0) * (k + 1.0 + order));
        sum += term;
        small_run = (term <= tol * sum) ? small_run + 1 : 0;
        if (small_run >= 3) return sum;
    }
    throw NonConvergence("bessel_i: term cap reached");
}

double meijer_g2002(double x, double b1, double b2, double tol) {
    if (!(x > 0.0)) throw DomainError("meijer_g2002: x must be positive");
    const double diff = b1 - b2;
    if (diff < -kPoleTol || std::abs(diff - std::round(diff)) > kPoleTol) {
        throw UnsupportedOrder("meijer_g2002: b1 - b2 must be a nonnegative integer");
    }
    const double order = std::round(diff);
    return 2.0 * std::pow(x, 0.5 * (b1 + b2)) * bessel_k(Complex(order, 0.0), 2.0 * std::sqrt(x), tol);
}

}  // namespace gkcs::specfun
