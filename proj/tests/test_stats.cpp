#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "gkcs/errors.hpp"
#include "gkcs/specfun.hpp"
#include "gkcs/stats.hpp"

using namespace gkcs;

namespace {

CSClass class_of(CSTag tag, int index = 1) {
    return is_one_degree(tag) ? CSClass{tag, index} : CSClass{tag, std::nullopt};
}

CSLabel label_of(CSTag tag, double J) {
    return is_one_degree(tag) ? CSLabel::one(J, 0.0) : CSLabel::two(J, 0.5 * J + 0.3, 0.0, 0.0);
}

}  // namespace

TEST_CASE("probabilities sum to one") {
    const LayerParams p{1.0, std::numbers::pi};
    for (const CSTag tag : kAllTags) {
        for (const double J : {0.0, 0.5, 1.0, 5.0, 20.0}) {
            double total = 0.0;
            for (const TableEntry& e : stats::distribution_table(class_of(tag), label_of(tag, J), p, 60)) {
                total += e.prob;
            }
            CAPTURE(std::string(to_string(tag)));
            CAPTURE(J);
            CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("probability examples") {
    const LayerParams p{1.0, std::numbers::pi};
    CHECK(stats::prob(CSClass{CSTag::FixedN, 0}, 0, CSLabel::one(0.0, 0.0), p) == 1.0);
    // FixedN, k = 0: 1 / 1F1(1; gamma; J/2B)
    const double gamma = 1.0 + (p.B + 1.0) / (2.0 * p.B);
    const double F = specfun::hyp1f1(1.0, gamma, 3.0 / 2.0).value.real();
    CHECK(stats::prob(CSClass{CSTag::FixedN, 0}, 0, CSLabel::one(3.0, 0.0), p) == doctest::Approx(1.0 / F).epsilon(1e-13));
    // Product factorizes into the Landau and layer marginals.
    const CSClass prod{CSTag::Product, std::nullopt};
    const CSLabel l = CSLabel::two(2.0, 1.5, 0.0, 0.0);
    double p1 = 0.0;
    double p2 = 0.0;
    for (int n = 0; n < 80; ++n) p1 += stats::prob(prod, 2, n, l, p);
    for (int m = 0; m < 80; ++m) p2 += stats::prob(prod, m, 3, l, p);
    CHECK(stats::prob(prod, 2, 3, l, p) == doctest::Approx(p1 * p2).epsilon(1e-12));
    CHECK_THROWS_AS(stats::prob(prod, 1, l, p), ClassMismatch);
    CHECK_THROWS_AS(stats::prob(CSClass{CSTag::FixedN, 0}, 1, 1, l, p), ClassMismatch);
}

TEST_CASE("fixed-n shifted distribution is Poisson") {
    const LayerParams p{0.8, 2.0};
    const double J = 3.3;
    const double mu = J / (2.0 * p.B);
    const auto table = stats::distribution_table(CSClass{CSTag::FixedNShifted, 0}, CSLabel::one(J, 0.0), p, 25);
    REQUIRE(table.size() == 26);
    for (const TableEntry& e : table) {
        CHECK(e.prob == doctest::Approx(std::exp(-mu + e.j * std::log(mu) - std::lgamma(e.j + 1.0))).epsilon(1e-12));
    }
    // Beyond the mode the ratio J / e_{k+1} stays below one.
    for (std::size_t k = 1; k + 1 < table.size(); ++k) {
        if (table[k].j >= static_cast<int>(mu)) CHECK(table[k + 1].prob < table[k].prob);
    }
    const auto ground = stats::distribution_table(CSClass{CSTag::Product, std::nullopt}, CSLabel::two(0, 0, 0, 0), p, 5);
    REQUIRE(ground.size() == 1);
    CHECK(ground[0].prob == 1.0);
}

TEST_CASE("Mandel Q: closed forms match the brute-force series") {
    for (const double B : {0.5, 1.0, 2.0}) {
        for (const double d : {1.0, std::numbers::pi}) {
            for (const CSTag tag : kAllTags) {
                for (const int idx : {0, 1, 2}) {
                    if (!is_one_degree(tag) && idx > 0) continue;
                    for (const double J : {0.5, 1.0, 5.0, 20.0}) {
                        const StatReport r = stats::mandel_q(class_of(tag, idx), label_of(tag, J), LayerParams{B, d});
                        CAPTURE(std::string(to_string(tag)));
                        CHECK(r.mean_n2 >= r.mean_n * r.mean_n - 1e-10);
                        CHECK(std::isfinite(r.mandel_q_series));
                        if (r.closed_form_used) CHECK(r.oracle_deviation <= 1e-8);
                    }
                }
            }
        }
    }
}

TEST_CASE("Mandel Q special values") {
    for (const double B : {0.5, 1.0, 2.0}) {
        for (const double J : {0.2, 3.0, 40.0}) {
            const StatReport r = stats::mandel_q(CSClass{CSTag::FixedNShifted, 0}, CSLabel::one(J, 0), LayerParams{B, 1.0});
            CHECK(r.mandel_q == doctest::Approx(2.0 * B - 1.0).epsilon(1e-10).scale(1.0));
            CHECK(r.mean_n == doctest::Approx(J).epsilon(1e-12));
        }
    }
    // Deterministic state at J = 0.
    for (const CSTag tag : {CSTag::FixedN, CSTag::FixedM, CSTag::Product, CSTag::Nested, CSTag::NestedAltPhase}) {
        const StatReport r = stats::mandel_q(class_of(tag), CSLabel::two(0.0, 0.0, 0.0, 0.0), LayerParams{});
        CHECK(r.mandel_q_series == doctest::Approx(-1.0).epsilon(1e-12));
        if (r.closed_form_used) CHECK(r.mandel_q_closed == doctest::Approx(-1.0).epsilon(1e-12));
    }
    const StatReport fn = stats::mandel_q(CSClass{CSTag::FixedN, 2}, CSLabel::one(0.0, 0.0), LayerParams{});
    CHECK(fn.mean_n == doctest::Approx(1.0 + 9.0));
    // Shifted ground states have <n> = 0 and no defined Q.
    const StatReport sh = stats::mandel_q(CSClass{CSTag::FixedMShifted, 0}, CSLabel::one(0.0, 0.0), LayerParams{});
    CHECK(sh.mean_n == 0.0);
    CHECK(std::isnan(sh.mandel_q));
    // Nested classes are series-only.
    const StatReport ne = stats::mandel_q(class_of(CSTag::Nested), label_of(CSTag::Nested, 2.0), LayerParams{});
    CHECK_FALSE(ne.closed_form_used);
    CHECK(ne.mandel_q == ne.mandel_q_series);
}

TEST_CASE("fixed-m Q at B = 1, d = pi, m = 0, J = 1 against a direct sum") {
    const LayerParams p{1.0, std::numbers::pi};
    // e_n = 1 + (n+1)^2, rho by running product; 200 terms.
    double z = 0.0, s1 = 0.0, s2 = 0.0, t = 1.0;
    for (int n = 0; n <= 200; ++n) {
        const double e = 1.0 + (n + 1.0) * (n + 1.0);
        if (n > 0) t /= e;  // J = 1
        z += t;
        s1 += t * e;
        s2 += t * e * e;
    }
    const double mean = s1 / z;
    const double q_direct = (s2 / z - mean * mean - mean) / mean;
    const StatReport r = stats::mandel_q(CSClass{CSTag::FixedM, 0}, CSLabel::one(1.0, 0.0), p);
    CHECK(r.closed_form_used);
    CHECK(r.mandel_q == doctest::Approx(q_direct).epsilon(1e-8));
}

TEST_CASE("Q components") {
    const LayerParams p{1.0, std::numbers::pi};
    const auto fm = stats::q_components(CSClass{CSTag::FixedM, 1}, CSLabel::one(2.0, 0.0), p);
    REQUIRE(fm.size() == 2);
    for (const auto& [name, v] : fm) CHECK(v.closed == doctest::Approx(v.series).epsilon(1e-10));
    CHECK(stats::q_components(CSClass{CSTag::FixedM, 0}, CSLabel::one(0.0, 0.0), p).at("Q1").series == 1.0);

    const auto pr = stats::q_components(CSClass{CSTag::Product, std::nullopt}, CSLabel::two(0.0, 1.7, 0, 0), p);
    REQUIRE(pr.size() == 4);
    CHECK(pr.at("Q3").closed == 0.0);
    CHECK(pr.at("Q3").series == 0.0);
    for (const auto& [name, v] : pr) CHECK(v.closed == doctest::Approx(v.series).epsilon(1e-10));
    // Q4 is Q1 at beta = conj beta = 2.
    const stats::LayerSubstitution s{Complex(2.0), Complex(2.0), 1.7};
    CHECK(pr.at("Q4").closed == doctest::Approx(stats::q1_closed(s)).epsilon(1e-15));
    CHECK(pr.at("Q6").closed == doctest::Approx(stats::q2_closed(s)).epsilon(1e-15));
    CHECK_THROWS_AS(stats::q_components(CSClass{CSTag::FixedN, 0}, CSLabel::one(1, 0), p), UnsupportedClass);
}
