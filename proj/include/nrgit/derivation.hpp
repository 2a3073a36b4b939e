#pragma once

#include "nrgit/graded.hpp"

namespace nrgit {

/// r commuting derivations of common positive weight w on a graded algebra.
/// Construction validates: weight homogeneity of every image, preservation
/// of relations, pairwise commutation, and local nilpotence.
class DerivationSet {
public:
    DerivationSet(GradedAlgebra algebra, int w, std::vector<std::vector<Polynomial>> images);

    const GradedAlgebra& algebra() const { return algebra_; }
    std::size_t r() const { return images_.size(); }
    int w() const { return w_; }
    const std::vector<std::vector<Polynomial>>& images() const { return images_; }
    const Polynomial& image(std::size_t i, std::size_t j) const { return images_[i][j]; }

    /// Leibniz extension of xi_i, reduced mod relations.
    Polynomial apply(std::size_t i, const Polynomial& f) const;
    /// Leibniz extension without the final normal form.
    Polynomial apply_raw(std::size_t i, const Polynomial& f) const;

private:
    GradedAlgebra algebra_;
    int w_;
    std::vector<std::vector<Polynomial>> images_;
};

/// sigma*(f) = sum_alpha u^alpha xi^alpha(f) / alpha!, an element of
/// A[u_1..u_r]; base ring variables come first in `ring`.
struct CoactionResult {
    RingPtr ring;
    std::size_t base_vars; // u_i is variable base_vars + i
    Polynomial value;
};
CoactionResult coaction(const DerivationSet& D, const Polynomial& f);

/// Entries m_ij = xi_i . y_j reduced to normal form; r rows, one column per
/// ring variable.
struct ActionMatrix {
    std::vector<std::vector<Polynomial>> entries;
};
ActionMatrix action_matrix(const DerivationSet& D);

/// Fit_k = ideal of (r-k) x (r-k) minors of M; <1> for k >= r, <0> for k < 0.
Ideal fitting_ideal(const DerivationSet& D, const ActionMatrix& M, int k);

struct FittingLadder {
    std::vector<Ideal> fits; // index i holds Fit_{i-1}, i = 0..r+1
    const Ideal& fit(int k) const;
    int r() const { return static_cast<int>(fits.size()) - 2; }
};
FittingLadder fitting_ladder(const DerivationSet& D, const ActionMatrix& M);

/// r - rank(M(point)) over Q; the point must satisfy every relation.
int stab_dim_at_point(const DerivationSet& D, const ActionMatrix& M,
                      const std::vector<Rational>& point);

struct UUResult {
    bool holds = false;
    int k = 0; // least index with Fit_k != <0> mod relations
    std::vector<std::string> witness; // on failure: GB of Fit_k + relations
};
/// Condition UU on an affine chart: Fit_{k-1} = <0> and Fit_k = <1>.
UUResult check_UU(const DerivationSet& D);

/// A derivation set on the cone transported to a chart's affine model.
struct ChartAction {
    Chart chart;
    DerivationSet action;
};
ChartAction restrict_to_chart(const DerivationSet& coneD, const Chart& chart);

/// View an affine instance as the single trivial chart (f = 1), so the WUU
/// and blow-up machinery applies uniformly.
ChartAction affine_as_chart(const DerivationSet& D);

/// A weight-0 determinant candidate a = det(xi_rows . gs) for the WUU
/// witness; rows/gs empty means the trivial witness a = 1 (Fit_k already the
/// unit ideal on the chart).
struct WUUCandidate {
    Polynomial a;
    std::vector<std::size_t> rows;
    std::vector<Polynomial> gs; // weight -w chart elements, one per column
};

/// All candidate determinants over a weight-(-w) monomial pool of the given
/// degree bound, filtered to non-nilpotent results.
std::vector<WUUCandidate> candidate_a_elements(const DerivationSet& chartD, int k,
                                               int pool_degree);

enum class WUUStatus { Holds, Fails, Inconclusive };

struct WUUResult {
    WUUStatus status = WUUStatus::Fails;
    int k = 0;            // min over charts of the least nonvanishing Fitting index
    int chart_index = -1; // witnessing chart (into the x0min chart list)
    std::optional<WUUCandidate> a;
    std::string message;
};

/// Condition WUU for a projective-cone instance at degree m. `x0` must be the
/// (nonempty) result of max_weight_and_x0min; `charts` the transported
/// actions, one per x0 chart.
WUUResult check_WUU(const X0MinResult& x0, const std::vector<ChartAction>& charts,
                    int pool_degree = 2);

} // namespace nrgit
