#pragma once

#include "nrgit/derivation.hpp"

namespace nrgit {

/// Slice coordinates on a UU chart: after an optional constant basis change
/// of the derivations, the rows `uprime` admit elements xs with
/// xi_{uprime[i]} . xs[j] = delta_ij, and the rows `s_subset` span the
/// cokernel of the action matrix.
struct SliceData {
    DerivationSet prime; // derivations in the (possibly changed) basis
    std::vector<std::vector<Rational>> basis_change; // new = C * old, r x r
    std::vector<std::size_t> s_subset;               // k rows spanning coker
    std::vector<std::size_t> uprime;                 // r-k rows with slices
    std::vector<Polynomial> xs;                      // aligned with uprime, weight -w
};

/// Requires check_UU to hold with rank k. The seed drives the deterministic
/// random basis-change fallback (retry bound 20).
SliceData find_slices(const DerivationSet& chartD, int k, unsigned seed = 0);

/// pi(f) = (prod_i exp(-x_i xi_i))(f), invariant under all r derivations
/// (verified; MathError on failure).
Polynomial dixmier_project(const SliceData& slices, const Polynomial& f);

struct InvariantPresentation {
    std::vector<std::string> names;     // one per nonzero invariant generator
    std::vector<Polynomial> generators; // pi(var), as elements of the chart ring
    Ideal relations;                    // in a fresh ring on `names`
};
InvariantPresentation invariant_presentation(const SliceData& slices);

/// If the invariants agree at p and q: the U-element t (in the prime basis,
/// zero in the s_subset slots) with flow(p, t) = q, verified exactly via the
/// coaction. Disagreeing invariants give nullopt.
std::optional<std::vector<Rational>> solve_group_element(const SliceData& slices,
                                                         const InvariantPresentation& inv,
                                                         const std::vector<Rational>& p,
                                                         const std::vector<Rational>& q);

struct ThetaWindow {
    bool single_weight = false; // semistable set declared empty
    Rational theta = 0;
    int max_w = 0;
    int second_w = 0;
};
ThetaWindow theta_window(const std::vector<int>& W);

/// v != v_{lambda=max} != 0: the max-weight coordinate block is nonzero and
/// so is some lower-weight coordinate.
bool theta_semistable(const ThetaWindow& win, const std::vector<int>& weights,
                      const std::vector<Rational>& coords);

/// Basis of the degree-m U-invariant sections (the exact nullspace of the
/// derivation action on the graded pieces), as (weight, cone element) pairs
/// with weights descending.
std::vector<std::pair<int, Polynomial>> invariant_sections(const DerivationSet& coneD, int m);

/// Weights (with multiplicity, descending) of the degree-m U-invariant
/// sections.
std::vector<int> invariant_section_weights(const DerivationSet& coneD, int m);

struct TransitionEntry {
    int j, i;     // pi_i^*(g) = f_j / f_i
    Polynomial g; // in chart i's invariant presentation ring
};
struct TransitionData {
    std::vector<TransitionEntry> entries;
    bool cocycle_verified = true;
    int skipped_pairs = 0; // empty overlaps
};

/// Transition cocycle data between the quotiented charts of the cone. Charts
/// without quotient data (nullopt slot) contribute no g_ji on their side.
TransitionData glue_transitions(const GradedAlgebra& cone,
                                const std::vector<ChartAction>& charts,
                                const std::vector<std::optional<SliceData>>& slices,
                                const std::vector<std::optional<InvariantPresentation>>& invs);

} // namespace nrgit
