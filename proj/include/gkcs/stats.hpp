#pragma once

// Weighting distributions P = |<psi|J,alpha>|^2, moments of the number operator
// n eta = e eta and the Mandel parameter Q = (<n^2> - <n>^2 - <n>) / <n>.
// Closed forms are always paired with a brute-force series over P E and P E^2.

#include <map>
#include <string>
#include <vector>

#include "gkcs/coherent.hpp"

namespace gkcs {

struct StatReport {
    /// Brute-force moments of the number operator.
    double mean_n = 0.0;
    double mean_n2 = 0.0;
    /// Closed-form Q when one exists, series Q otherwise. NaN when <n> vanishes.
    double mandel_q = 0.0;
    double mandel_q_closed = 0.0;
    double mandel_q_series = 0.0;
    bool closed_form_used = false;
    /// |Q_closed - Q_series| / max(1, |Q_series|); zero without a closed form.
    double oracle_deviation = 0.0;
    /// Terms (or grid cells) entering the brute-force sums.
    int terms = 0;
};

/// One Q-component evaluated both ways.
struct ComponentValue {
    double closed = 0.0;
    double series = 0.0;
};

struct TableEntry {
    int i = 0;  ///< 0 for one-degree classes, m otherwise
    int j = 0;  ///< basis index k for one-degree classes, n otherwise
    double prob = 0.0;
};

namespace stats {

/// Cap on the terms of any single brute-force axis.
inline constexpr int kMaxTerms = 100000;
/// Relative size of the last accumulated E^2-weighted term.
inline constexpr double kTermTol = 1e-16;

/// Arguments of the layer-type moment forms Q1, Q2: 1F2 parameters (beta, conj beta)
/// and argument y = J / q. Q4 and Q6 are the same forms at beta = conj beta = 2.
struct LayerSubstitution {
    Complex beta;
    Complex beta_bar;
    double y = 0.0;

    static LayerSubstitution of(const EnergySequence& layer_seq, double J);
};
/// <(k+1)^2> and <(k+1)^4> under P(k) proportional to y^k / ((beta)_k (beta_bar)_k).
double q1_closed(const LayerSubstitution& s);
double q2_closed(const LayerSubstitution& s);

/// One-degree classes: index k.
double prob(const CSClass& cls, int k, const CSLabel& label, const LayerParams& p);
/// Two-degree classes: index (m, n).
double prob(const CSClass& cls, int m, int n, const CSLabel& label, const LayerParams& p);

/// Eigenvalue of the number operator on basis index (i, j), same indexing as TruncatedState.
double number_eigenvalue(const CSClass& cls, const LayerParams& p, int i, int j);

StatReport mandel_q(const CSClass& cls, const CSLabel& label, const LayerParams& p, double tol = 1e-8);

/// Q1, Q2 (fixed-m classes) or Q3..Q6 (product). Throws UnsupportedClass otherwise.
std::map<std::string, ComponentValue> q_components(const CSClass& cls, const CSLabel& label, const LayerParams& p);

/// Nonzero probabilities with every index <= k_max, sorted by (i, j).
std::vector<TableEntry> distribution_table(const CSClass& cls, const CSLabel& label, const LayerParams& p, int k_max);

}  // namespace stats
}  // namespace gkcs
