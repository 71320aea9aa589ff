#pragma once

// Temporally stable coherent states of the layer Hamiltonian, held as truncated
// coefficient arrays over the (m, n) basis.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gkcs/sequence.hpp"
#include "gkcs/spectrum.hpp"
#include "gkcs/verification.hpp"

namespace gkcs {

enum class CSTag {
    FixedN,
    FixedM,
    FixedNShifted,
    FixedMShifted,
    Product,
    ProductShifted,
    Nested,
    NestedAltPhase,
    NestedAltPhaseShifted,
};

inline constexpr CSTag kAllTags[] = {
    CSTag::FixedN,  CSTag::FixedM, CSTag::FixedNShifted,  CSTag::FixedMShifted,         CSTag::Product,
    CSTag::ProductShifted, CSTag::Nested, CSTag::NestedAltPhase, CSTag::NestedAltPhaseShifted,
};

std::string_view to_string(CSTag tag);
/// Parses the CLI spelling ("fixed-n", "nested-alt-phase", ...). Throws DomainError.
CSTag parse_tag(std::string_view name);

/// True for the one-degree-of-freedom families.
bool is_one_degree(CSTag tag);

struct CSClass {
    CSTag tag = CSTag::FixedN;
    /// The frozen n (FixedN*) or m (FixedM*); absent for two-degree classes.
    std::optional<int> fixed_index;

    /// Throws DomainError when fixed_index presence does not match the tag.
    void validate() const;
    friend bool operator==(const CSClass&, const CSClass&) = default;
};

/// (J, alpha) for one-degree classes live in J1 / alpha1.
struct CSLabel {
    double J1 = 0.0;
    double alpha1 = 0.0;
    double J2 = 0.0;
    double alpha2 = 0.0;

    static CSLabel one(double J, double alpha) { return {J, alpha, 0.0, 0.0}; }
    static CSLabel two(double J1, double J2, double alpha1, double alpha2) { return {J1, alpha1, J2, alpha2}; }
};

struct TruncatedState {
    CSClass cls;
    CSLabel label;
    LayerParams params;
    /// coeffs[i][j]: one-degree classes use a single row (i = 0, j = basis index);
    /// two-degree classes use i = m and j = n. Nested rows may differ in length.
    std::vector<std::vector<Complex>> coeffs;
    /// Certified bound on the probability mass outside the retained indices.
    double tail_bound = 0.0;

    [[nodiscard]] double norm_sq() const;
    [[nodiscard]] std::size_t size() const;
};

namespace coherent {

inline constexpr double kDefaultTruncEps = 1e-12;

/// rho(m) for the fixed-n family.
double rho_fixed_n(int m, int n_fixed, const LayerParams& p);
/// rho(n) for the fixed-m family.
double rho_fixed_m(int n, int m_fixed, const LayerParams& p);

/// Sequence supplying rho and the basis energies of a one-degree class.
EnergySequence one_degree_sequence(const CSClass& cls, const LayerParams& p);

/// Sequence of the n-axis inside row m of a nested class.
EnergySequence nested_row_sequence(CSTag tag, int m, const LayerParams& p);
/// Sequence of the m-axis of a two-degree class (rho_2 for nested, rho_1 for product).
EnergySequence m_axis_sequence(CSTag tag, const LayerParams& p);
/// Sequence of the n-axis of a product class.
EnergySequence n_axis_sequence(CSTag tag, const LayerParams& p);

/// Phase multiplier of basis index (i, j): the coefficient carries exp(-i phase).
double phase(const CSClass& cls, const CSLabel& label, const LayerParams& p, int i, int j);
/// Energy by which evolve(t) advances the phase of basis index (i, j).
double evolution_energy(const CSClass& cls, const LayerParams& p, int i, int j);

/// N^2 (one-degree and product classes return the product N1^2 N2^2; nested
/// classes return N1^2 computed by the majorised series).
double normalization(const CSClass& cls, const CSLabel& label, const LayerParams& p,
                     double tol = specfun::kSeriesTol);
/// The same quantity from direct series over J^k / rho(k).
double normalization_series(const CSClass& cls, const CSLabel& label, const LayerParams& p,
                            double tol = specfun::kSeriesTol);

TruncatedState build_state(const CSClass& cls, const CSLabel& label, const LayerParams& p,
                           double eps_tail = kDefaultTruncEps);

/// sum conj(c1) c2; throws ClassMismatch for incompatible states.
Complex overlap(const TruncatedState& s1, const TruncatedState& s2);

/// Hypergeometric closed form of <J,alpha|J',alpha'> for one-degree and product
/// classes; Layer-type axes require equal phase labels (UnsupportedClass otherwise).
Complex overlap_closed_form(const CSClass& cls, const CSLabel& a, const CSLabel& b, const LayerParams& p);

TruncatedState evolve(const TruncatedState& s, double t);

/// sum |c|^2 e_k against J (or J2) for the backward-shifted classes.
VerificationReport action_identity_check(const CSClass& cls, const CSLabel& label, const LayerParams& p,
                                         double eps_tail = kDefaultTruncEps);

}  // namespace coherent
}  // namespace gkcs
