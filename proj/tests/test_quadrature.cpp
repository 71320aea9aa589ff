#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gkcs/errors.hpp"
#include "gkcs/quadrature.hpp"

using namespace gkcs;
using namespace gkcs::quadrature;

TEST_CASE("finite integrals") {
    const auto r = integrate_finite([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(r.error_estimate < 1e-9);
    // Polynomials of degree <= 22 are exact on one Kronrod panel.
    const auto p = integrate_finite([](double x) { return std::pow(x, 10); }, -1.0, 2.0);
    CHECK(p.value == doctest::Approx((std::pow(2.0, 11) + 1.0) / 11.0).epsilon(1e-14));
    CHECK(p.evaluations == 15);
}

TEST_CASE("semi-infinite integrals") {
    CHECK(integrate_semi_infinite([](double x) { return std::exp(-x); }).value == doctest::Approx(1.0).epsilon(1e-12));
    // Gamma(1/2) with the x^{-1/2} singularity at the origin.
    const auto g = integrate_semi_infinite([](double x) { return x > 0.0 ? std::exp(-x) / std::sqrt(x) : 0.0; });
    CHECK(g.converged);
    CHECK(g.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-11));
    // Gamma(7) = 720: slow start, late peak.
    const auto h = integrate_semi_infinite([](double x) { return std::pow(x, 6) * std::exp(-x); });
    CHECK(h.value == doctest::Approx(720.0).epsilon(1e-11));
    // Algebraic decay through the logarithmic tail map: int dx / (1 + x)^3 = 1/2.
    const auto a = integrate_semi_infinite([](double x) { return 1.0 / std::pow(1.0 + x, 3); });
    CHECK(a.value == doctest::Approx(0.5).epsilon(1e-11));
}

TEST_CASE("user upper limit") {
    QuadratureConfig cfg;
    cfg.tail_cutoff = TailCutoff::UserUpperLimit;
    cfg.upper_limit = 3.0;
    const auto r = integrate_semi_infinite([](double x) { return x * x; }, cfg);
    CHECK(r.value == doctest::Approx(9.0).epsilon(1e-13));
}

TEST_CASE("configuration validation and failure reporting") {
    QuadratureConfig bad;
    bad.rel_tol = 1e-16;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = {};
    bad.split = 0.0;
    CHECK_THROWS_AS(integrate_semi_infinite([](double) { return 0.0; }, bad), DomainError);
    CHECK_THROWS_AS(integrate_finite([](double x) { return x; }, 1.0, 1.0), DomainError);

    // A jump the budget cannot resolve to 1e-14.
    QuadratureConfig tight;
    tight.rel_tol = 1e-14;
    tight.max_subdivisions = 3;
    const auto step = [](double x) { return x < 1.0 / 3.0 ? 1.0 : 0.0; };
    CHECK_THROWS_AS(integrate_finite(step, 0.0, 1.0, tight), NonConvergence);
    tight.throw_on_failure = false;
    const auto r = integrate_finite(step, 0.0, 1.0, tight);
    CHECK_FALSE(r.converged);
    CHECK(r.error_estimate > 0.0);

    // No decay at all.
    CHECK_THROWS_AS(integrate_semi_infinite([](double) { return 1.0; }), NonConvergence);
}
