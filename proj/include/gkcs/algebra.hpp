#pragma once

// Generalized ladder operators a eta_k = sqrt(e_k) eta_{k-1}, a^dag eta_k = sqrt(e_{k+1}) eta_{k+1},
// n eta_k = e_k eta_k acting on coefficient sequences, commutator checks and
// algebra identification (Weyl-Heisenberg, su(1,1), their tensor product).

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gkcs/coherent.hpp"
#include "gkcs/sequence.hpp"
#include "gkcs/verification.hpp"

namespace gkcs {

struct LadderSpec {
    std::string name;
    /// e_k; e_k > 0 for k >= 1. Shifted sequences have e_0 == 0.
    std::function<double(int)> eigen_seq;
    /// Multiplier r of the rescaled pair (r a, r a^dag).
    double rescale = 1.0;
    /// When set, the rescaled number operator is k + shift; otherwise r^2 e_k.
    std::optional<double> number_shift;
};

enum class LadderOp { Lower, Raise, Number };
enum class Relation { AADag, NADag, NA };
enum class AlgebraKind { WeylHeisenberg, SU11, TensorWHxSU11, Unclassified };

struct CommutatorReport {
    std::string relation;
    /// Largest relative deviation from the closed form over the bulk indices.
    double max_deviation = 0.0;
    /// [a, a^dag] eta_0 minus its closed form; equals e_0 for unshifted sequences.
    double ground_defect = 0.0;
    int first_index = 0;
    int last_index = 0;
    AlgebraKind classified_algebra = AlgebraKind::Unclassified;
};

namespace algebra {

std::string_view to_string(AlgebraKind kind);
std::string_view to_string(Relation rel);

LadderSpec make_spec(std::string name, const EnergySequence& seq, double rescale = 1.0,
                     std::optional<double> number_shift = std::nullopt);

/// Fixed-n sequence with rescale 1/sqrt(2B).
LadderSpec fixed_n_spec(int n, const LayerParams& p);
/// Fixed-m sequence with rescale d/pi and number shift 3/2.
LadderSpec fixed_m_spec(int m, const LayerParams& p);
/// Landau levels B(2m+1) with rescale 1/sqrt(2B).
LadderSpec landau_spec(const LayerParams& p);
/// Layer modes (pi(n+1)/d)^2 with rescale d/pi and number shift 3/2.
LadderSpec layer_spec(const LayerParams& p);
/// Diagonal chain of the product operator a1 (x) a2 started at (m0, n0):
/// e_k = e1_{m0+k} e2_{n0+k}, no rescale.
LadderSpec tensor_diagonal_spec(const EnergySequence& s1, const EnergySequence& s2, int m0, int n0);

/// Raw (unrescaled) operator action; Raise extends the sequence by one.
std::vector<Complex> apply_ladder(LadderOp op, const LadderSpec& spec, const std::vector<Complex>& coeffs);

/// Raw commutator against its closed form on indices 0..index_range. Unshifted
/// sequences exclude index 0 from max_deviation and report it as ground_defect.
CommutatorReport commutator_check(const LadderSpec& spec, Relation relation, int index_range);

/// Rescaled generators tested against the WH triple, then the su(1,1) triple.
CommutatorReport classify_algebra(const LadderSpec& spec, int index_range, double tol);

/// Fits rescale (and number shift) from the first indices, then classifies. A
/// sequence that no choice makes WH or su(1,1) comes back Unclassified.
CommutatorReport classify_any_rescale(const LadderSpec& spec, int index_range, double tol);

/// WH on the first factor and su(1,1) on the second give TensorWHxSU11.
CommutatorReport classify_tensor(const LadderSpec& first, const LadderSpec& second, int index_range, double tol);

/// a |J, 0> = sqrt(J) |J, 0> (product classes: (a1 (x) a2) with eigenvalue sqrt(J1 J2)).
/// Reports the residual norm over indices whose image is fully retained.
VerificationReport annihilation_eigenstate_check(const CSClass& cls, const CSLabel& label, const LayerParams& p,
                                                 double eps_tail = coherent::kDefaultTruncEps);

}  // namespace algebra
}  // namespace gkcs
