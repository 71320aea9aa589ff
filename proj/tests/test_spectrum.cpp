#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gkcs/errors.hpp"
#include "gkcs/spectrum.hpp"

using namespace gkcs;
using namespace gkcs::spectrum;

TEST_CASE("energies") {
    const LayerParams p{1.0, std::numbers::pi};
    CHECK(energy_mn(0, 0, p) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(energy_mn(2, 1, p) == doctest::Approx(9.0).epsilon(1e-15));
    // l <= 0 leaves the energy l-independent; l > 0 adds 2Bl.
    CHECK(energy_full({1, -2, 0}, p) == doctest::Approx(energy_mn(1, 0, p)).epsilon(1e-15));
    CHECK(energy_full({1, 2, 0}, p) == doctest::Approx(energy_mn(1, 0, p) + 4.0).epsilon(1e-15));
    CHECK_THROWS_AS(energy_mn(-1, 0, p), DomainError);
    CHECK_THROWS_AS((LayerParams{0.0, 1.0}.validate()), DomainError);
    CHECK_THROWS_AS((LayerParams{1.0, -1.0}.validate()), DomainError);
}

TEST_CASE("Laguerre and Kummer polynomials") {
    for (const int m : {0, 1, 4, 9}) {
        for (const double a : {0.0, 1.0, 3.0}) {
            for (const double x : {0.1, 2.0, 11.0}) {
                CHECK(laguerre(m, a, x) ==
                      doctest::Approx(std::assoc_laguerre(static_cast<unsigned>(m), static_cast<unsigned>(a), x))
                          .epsilon(1e-12));
            }
        }
    }
    // 1F1(-2; b; x) = 1 - 2x/b + x^2/(b(b+1))
    const double b = 3.0;
    const double x = 1.7;
    CHECK(kummer_polynomial(2, b, x) == doctest::Approx(1.0 - 2.0 * x / b + x * x / (b * (b + 1.0))).epsilon(1e-14));
}

TEST_CASE("eigenfunction normalization by direct 3-D midpoint sampling") {
    // Radial midpoint rule; the angle and layer integrals are done by hand.
    const LayerParams p{1.3, 2.0};
    const QuantumNumbers q{1, -1, 0};
    const int nr = 4000;
    const double rmax = 12.0;
    double radial = 0.0;
    for (int i = 0; i < nr; ++i) {
        const double r = (i + 0.5) * rmax / nr;
        const double v = std::norm(eigenfunction(q, p, r, 0.0, 0.5 * p.d));
        radial += v * r * rmax / nr;
    }
    // |Psi(z = d/2)|^2 carries the layer factor 2/d; the full z integral carries 1.
    CHECK(radial * 2.0 * std::numbers::pi * (p.d / 2.0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("orthonormality checks") {
    const LayerParams p{};
    const auto diag = orthonormality_check({2, 1, 1}, {2, 1, 1}, p);
    CHECK(diag.target == 1.0);
    CHECK(diag.abs_err < 1e-12);
    const auto off = orthonormality_check({0, 0, 0}, {3, 0, 0}, p);
    CHECK(off.target == 0.0);
    CHECK(off.abs_err < 1e-12);
    CHECK(off.quadrature.converged);
    const auto other_l = orthonormality_check({0, 1, 0}, {0, -1, 0}, p);
    CHECK(other_l.computed == 0.0);
}

TEST_CASE("degeneracy probe") {
    const DegeneracyReport two = degeneracy_probe(LayerParams{2.0, std::numbers::pi}, 4, 4);
    REQUIRE(two.rational.has_value());
    CHECK(two.rational->first == 1);
    CHECK(two.rational->second == 2);
    bool found = false;
    for (const auto& [a, b] : two.collisions) {
        if (a == LevelPair{2, 0} && b == LevelPair{0, 2}) found = true;
    }
    CHECK(found);

    const DegeneracyReport irr = degeneracy_probe(LayerParams{1.0, std::numbers::pi * std::pow(2.0, 0.25)}, 10, 10);
    CHECK(irr.collisions.empty());
    CHECK_FALSE(irr.rational.has_value());
}

TEST_CASE("detect_rational") {
    const auto r = detect_rational(355.0 / 113.0);
    REQUIRE(r.has_value());
    CHECK(r->first == 355);
    CHECK(r->second == 113);
    CHECK_FALSE(detect_rational(std::numbers::sqrt2).has_value());
    CHECK_FALSE(detect_rational(std::numbers::pi, 100).has_value());
}
