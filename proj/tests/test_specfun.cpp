#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gkcs/errors.hpp"
#include "gkcs/specfun.hpp"

using namespace gkcs;
using namespace gkcs::specfun;

// Reference values come from tools/reference_values.py (40-digit arithmetic).

TEST_CASE("ln_gamma agrees with lgamma on the real axis and with references off it") {
    for (const double x : {0.3, 1.0, 2.5, 7.75, 20.0, 170.5}) {
        CHECK(ln_gamma(Complex(x)).real() == doctest::Approx(std::lgamma(x)).epsilon(1e-14));
    }
    const Complex a = ln_gamma(Complex(2.5, 3.0));
    CHECK(a.real() == doctest::Approx(-1.4709546103488416913).epsilon(1e-14));
    CHECK(a.imag() == doctest::Approx(2.82261563826079945).epsilon(1e-14));
    // Reflection branch.
    const Complex b = ln_gamma(Complex(-1.5, 0.5));
    CHECK(b.real() == doctest::Approx(0.00081546715251823463554).epsilon(1e-10));
    CHECK(std::exp(b).real() == doctest::Approx(std::exp(Complex(0.00081546715251823463554, -5.9267657915075467186)).real()).epsilon(1e-13));
    CHECK_THROWS_AS(ln_gamma(Complex(-2.0)), PoleError);
    CHECK_THROWS_AS(ln_gamma(Complex(0.0)), PoleError);
}

TEST_CASE("pochhammer") {
    const Complex p = pochhammer(Complex(2.0, 1.5), 5);
    CHECK(p.real() == doctest::Approx(-483.75).epsilon(1e-14));
    CHECK(p.imag() == doctest::Approx(1050.46875).epsilon(1e-14));
    CHECK(pochhammer(1.0, 6) == 720.0);
    CHECK(pochhammer(-3.0, 4) == 0.0);
    CHECK(pochhammer(7.0, 0) == 1.0);
    CHECK(is_nonpositive_integer(Complex(-4.0)));
    CHECK_FALSE(is_nonpositive_integer(Complex(-4.0, 1e-3)));
}

TEST_CASE("hyp1f1 against references") {
    CHECK(hyp1f1(1.0, 1.5, 3.7).value.real() == doctest::Approx(18.513637100864609301).epsilon(1e-12));
    const SeriesResult poly = hyp1f1(-3.0, 2.5, 1.2);
    CHECK(poly.converged);
    CHECK(poly.tail_estimate == 0.0);
    CHECK(poly.value.real() == doctest::Approx(0.0098285714285714501922).epsilon(1e-12));
    CHECK(hyp1f1(2.0, 3.25, 25.0).value.real() == doctest::Approx(3119422906.0110988983).epsilon(1e-11));
    // 1F1(1; 1; x) = e^x
    CHECK(hyp1f1(1.0, 1.0, 2.3).value.real() == doctest::Approx(std::exp(2.3)).epsilon(1e-13));
    CHECK_THROWS_AS(hyp1f1(1.0, -2.0, 0.5), PoleError);
    // A terminating numerator ahead of the pole is allowed.
    CHECK_NOTHROW(hyp1f1(-1.0, -2.0, 0.5));
}

TEST_CASE("hyp1f2 with conjugate and real lower parameters") {
    const Complex b(2.0, std::sqrt(3.0));
    const SeriesResult r = hyp1f2(1.0, b, std::conj(b), 7.5);
    CHECK(r.converged);
    CHECK(r.value.imag() == 0.0);
    CHECK(r.value.real() == doctest::Approx(3.0920284123800510282).epsilon(1e-12));
    CHECK(hyp1f2(3.0, 3.0, 1.0, 2.0).value.real() == doctest::Approx(4.2523508795026238253).epsilon(1e-12));
    // Without the conjugate pairing the sum is genuinely complex.
    CHECK(std::abs(hyp1f2(1.0, Complex(2.0, 1.0), Complex(2.0, 0.5), 1.0).value.imag()) > 1e-3);
}

TEST_CASE("hyp0f1 and bessel_i") {
    CHECK(hyp0f1(1.0, 4.0).value.real() == doctest::Approx(11.301921952136330496).epsilon(1e-12));
    // 0F1(;1;x^2/4) = I_0(x)
    CHECK(hyp0f1(1.0, 2.25).value.real() == doctest::Approx(std::cyl_bessel_i(0.0, 3.0)).epsilon(1e-12));
    CHECK(bessel_i(2, 3.0) == doctest::Approx(2.2452124409299511546).epsilon(1e-12));
    for (const double x : {0.1, 1.0, 7.0, 25.0}) {
        CHECK(bessel_i(3, x) == doctest::Approx(std::cyl_bessel_i(3.0, x)).epsilon(1e-11));
    }
}

TEST_CASE("bessel_k real orders agree with the standard library") {
    for (const double nu : {0.0, 0.5, 1.0, 2.0, 3.7}) {
        for (const double x : {0.05, 0.7, 3.0, 18.0}) {
            CHECK(bessel_k(nu, x) == doctest::Approx(std::cyl_bessel_k(nu, x)).epsilon(1e-10));
        }
    }
    CHECK(bessel_k(0.5, 30.0) == doctest::Approx(2.1412375659560113993e-14).epsilon(1e-10));
}

TEST_CASE("bessel_k imaginary orders") {
    CHECK(bessel_k(Complex(0.0, 2.0), 0.1) == doctest::Approx(-0.012290334958861469828).epsilon(1e-9));
    CHECK(bessel_k(Complex(0.0, 1.4), 2.5) == doctest::Approx(0.044388071612195084594).epsilon(1e-10));
    CHECK(bessel_k(Complex(0.0, 3.0), 1.0) == doctest::Approx(-0.00088614792322813929029).epsilon(1e-8));
    CHECK_THROWS_AS(bessel_k(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(bessel_k(Complex(1.0, 1.0), 1.0), DomainError);
}

TEST_CASE("meijer_g2002 reduces to Bessel K") {
    CHECK(meijer_g2002(1.7, 2.0, 0.0) == doctest::Approx(0.35529292023116528245).epsilon(1e-10));
    CHECK(meijer_g2002(0.4, 0.0, 0.0) == doctest::Approx(2.0 * std::cyl_bessel_k(0.0, 2.0 * std::sqrt(0.4))).epsilon(1e-10));
    CHECK_THROWS_AS(meijer_g2002(1.0, 0.5, 0.0), UnsupportedOrder);
}
