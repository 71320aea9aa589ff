#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "gkcs/errors.hpp"
#include "gkcs/measures.hpp"
#include "gkcs/quadrature.hpp"

using namespace gkcs;

namespace {

constexpr WeightForm kForms[] = {WeightForm::GammaType, WeightForm::KontorovichLebedev, WeightForm::HalfGauss,
                                 WeightForm::BesselK0,  WeightForm::ExpShifted,         WeightForm::MeijerG};

}  // namespace

TEST_CASE("every weight reproduces rho(k) as its moments") {
    for (const double B : {0.5, 2.0}) {
        for (const double d : {1.0, std::numbers::pi}) {
            for (const WeightForm f : kForms) {
                const WeightSpec w{f, LayerParams{B, d}, 1};
                for (int k = 0; k <= 6; ++k) {
                    const VerificationReport r = measures::moment_check(w, k);
                    CAPTURE(r.label);
                    CHECK(r.quadrature.converged);
                    CHECK(r.rel_err <= 1e-9);
                }
            }
        }
    }
}

TEST_CASE("Gamma-type moments in closed form") {
    const WeightSpec w{WeightForm::GammaType, LayerParams{1.3, 2.0}, 2};
    for (int k = 0; k <= 10; ++k) CHECK(measures::gamma_moment_analytic(w, k) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(measures::gamma_moment_analytic(WeightSpec{WeightForm::HalfGauss, {}, 0}, 1), UnsupportedClass);
}

TEST_CASE("densities at sample points from independent formulas") {
    const LayerParams p{1.0, std::numbers::pi};
    // Half-Gauss at J = 2: sqrt(J / (2 pi)) e^{-1}
    CHECK(measures::weight_density({WeightForm::HalfGauss, p, 0}, 2.0) ==
          doctest::Approx(std::sqrt(2.0 / (2.0 * std::numbers::pi)) * std::exp(-1.0)).epsilon(1e-14));
    // Bessel-K0 with d = pi: 2 J K_0(2 sqrt J)
    CHECK(measures::weight_density({WeightForm::BesselK0, p, 0}, 0.8) ==
          doctest::Approx(1.6 * std::cyl_bessel_k(0.0, 2.0 * std::sqrt(0.8))).epsilon(1e-10));
    // Meijer-G with d = pi: (1/2) * 2 J K_2(2 sqrt J)
    CHECK(measures::weight_density({WeightForm::MeijerG, p, 0}, 1.1) ==
          doctest::Approx(1.1 * std::cyl_bessel_k(2.0, 2.0 * std::sqrt(1.1))).epsilon(1e-10));
    CHECK_THROWS_AS(measures::weight_density({WeightForm::ExpShifted, p, 0}, 0.0), DomainError);
}

TEST_CASE("the fixed-m weight changes sign at small J") {
    // Kernel K_{2i sqrt(p/q)} oscillates near the origin.
    const WeightSpec w{WeightForm::KontorovichLebedev, LayerParams{1.0, std::numbers::pi}, 1};
    const measures::PositivityReport r = measures::positivity_scan(w, 1e-6, 50.0, 400);
    CHECK(r.negative_points > 0);
    CHECK(r.min_value < 0.0);
    const measures::PositivityReport g =
        measures::positivity_scan({WeightForm::GammaType, LayerParams{}, 0}, 1e-6, 50.0, 200);
    CHECK(g.negative_points == 0);
    CHECK_THROWS_AS(measures::positivity_scan(w, 2.0, 1.0, 10), DomainError);
}

TEST_CASE("resolution diagonal for every class") {
    const LayerParams p{1.0, std::numbers::pi};
    for (const CSTag tag : kAllTags) {
        const CSClass cls = is_one_degree(tag) ? CSClass{tag, 1} : CSClass{tag, std::nullopt};
        const auto reps = measures::resolution_diagonal_check(cls, 3, {}, p);
        CHECK(reps.size() == (is_one_degree(tag) ? 4u : 16u));
        for (const VerificationReport& r : reps) {
            CAPTURE(std::string(to_string(tag)) + " " + r.label);
            CHECK(r.rel_err <= 1e-8);
        }
    }
    CHECK_THROWS_AS(measures::resolution_diagonal_check(CSClass{CSTag::FixedN, 0}, 13, {}, p), DomainError);
}
