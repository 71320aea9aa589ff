#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "gkcs/errors.hpp"
#include "gkcs/sequence.hpp"

using namespace gkcs;

namespace {

std::vector<EnergySequence> all_sequences(const LayerParams& p, int index) {
    return {sequences::fixed_n(index, p), sequences::fixed_m(index, p), sequences::fixed_n_shifted(p),
            sequences::fixed_m_shifted(p), sequences::landau(p),         sequences::layer(p)};
}

}  // namespace

TEST_CASE("energies match their defining formulas") {
    const LayerParams p{1.5, 2.0};
    const double q = std::pow(std::numbers::pi / 2.0, 2);
    CHECK(sequences::fixed_n(1, p).energy(3) == doctest::Approx(1.5 * 7 + 4 * q).epsilon(1e-15));
    CHECK(sequences::fixed_m(2, p).energy(1) == doctest::Approx(1.5 * 5 + 4 * q).epsilon(1e-15));
    CHECK(sequences::fixed_n_shifted(p).energy(4) == doctest::Approx(12.0).epsilon(1e-15));
    CHECK(sequences::fixed_m_shifted(p).energy(3) == doctest::Approx(15 * q).epsilon(1e-15));
    CHECK(sequences::fixed_m_shifted(p).energy(0) == 0.0);
    CHECK(sequences::fixed_n_shifted(p).is_shifted());
    CHECK_FALSE(sequences::landau(p).is_shifted());
}

TEST_CASE("rho(k) / rho(k-1) = e_k") {
    for (const double B : {0.5, 1.0, 2.0}) {
        for (const double d : {1.0, std::numbers::pi}) {
            for (const EnergySequence& s : all_sequences(LayerParams{B, d}, 2)) {
                CHECK(s.rho(0) == 1.0);
                for (int k = 1; k <= 30; ++k) {
                    CHECK(s.rho(k) / s.rho(k - 1) == doctest::Approx(s.energy(k)).epsilon(1e-12));
                    CHECK(s.rho(k) == doctest::Approx(s.rho_product(k)).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("shift parameters") {
    const LayerParams p{1.0, std::numbers::pi};
    const EnergySequence fm = sequences::fixed_m(0, p);
    CHECK(fm.beta1().real() == 2.0);
    CHECK(fm.beta1().imag() == doctest::Approx(1.0));
    CHECK(fm.beta2() == std::conj(fm.beta1()));
    const EnergySequence sh = sequences::fixed_m_shifted(p);
    CHECK(sh.beta1() == Complex(3.0));
    CHECK(sh.beta2() == Complex(1.0));
    CHECK(sequences::landau(p).gamma() == 1.5);
    CHECK_THROWS_AS(sequences::landau(p).beta1(), UnsupportedClass);
    CHECK_THROWS_AS(sequences::layer(p).gamma(), UnsupportedClass);
    CHECK_THROWS_AS(EnergySequence::layer(1.0, -2.0), DomainError);
    CHECK_THROWS_AS(sequences::fixed_n(-1, p), DomainError);
}

TEST_CASE("closed-form normalizations agree with the direct series") {
    for (const double B : {0.5, 1.0, 2.0}) {
        for (const double d : {1.0, std::numbers::pi}) {
            for (const int idx : {0, 1, 2}) {
                for (const EnergySequence& s : all_sequences(LayerParams{B, d}, idx)) {
                    for (const double J : {0.1, 1.0, 10.0}) {
                        CHECK(s.norm_sq(J) == doctest::Approx(s.norm_sq_series(J, 1e-15)).epsilon(1e-10));
                    }
                }
            }
        }
    }
}

TEST_CASE("shifted closed forms against independent references") {
    const LayerParams p{0.75, std::numbers::pi};
    // exp(J / 2B)
    CHECK(sequences::fixed_n_shifted(p).norm_sq(2.0) == doctest::Approx(std::exp(2.0 / 1.5)).epsilon(1e-14));
    // q = 1 at d = pi: sum 3^k / ((3)_k (1)_k) from tools/reference_values.py
    CHECK(sequences::fixed_m_shifted(p).norm_sq(3.0) == doctest::Approx(2.4602312786959013016).epsilon(1e-12));
    CHECK(sequences::landau(p).norm_sq(0.0) == 1.0);
    CHECK_FALSE(sequences::fixed_m_shifted(p).closed_form_name().empty());
}
