#pragma once

#include "nrgit/ideal.hpp"

namespace nrgit {

enum class Mode { Affine, ProjectiveCone };

/// Finitely presented algebra with an integer Gm-weight per generator and
/// weight-homogeneous relations. In projective-cone mode every generator has
/// projective degree 1 and relations are also degree-homogeneous.
class GradedAlgebra {
public:
    GradedAlgebra(RingPtr ring, std::vector<int> weights, Mode mode, Ideal relations);

    const RingPtr& ring() const { return ring_; }
    const std::vector<int>& weights() const { return weights_; }
    Mode mode() const { return mode_; }
    const Ideal& relations() const { return relations_; }

    int weight_of(const Monomial& m) const;
    /// Weight if f is weight-homogeneous (nonzero), nullopt otherwise.
    std::optional<int> homogeneous_weight(const Polynomial& f) const;
    bool is_zero_algebra() const; // 1 in relations

private:
    RingPtr ring_;
    std::vector<int> weights_;
    Mode mode_;
    Ideal relations_;
};

/// Split normal_form(f) into weight-homogeneous components, sorted by weight.
std::vector<std::pair<int, Polynomial>> weight_decompose(const GradedAlgebra& S,
                                                         const Polynomial& f);

/// Vector-space basis of the degree-m, weight-w piece as monomial
/// representatives whose normal forms are linearly independent.
std::vector<Polynomial> graded_piece_basis(const GradedAlgebra& S, int m, int w);

/// Principal chart X_f of the cone, with an affine (weight <= 0) model whose
/// variables stand for g/f for the remaining cone generators g.
struct Chart {
    Polynomial f;  // inverted element, in the base ring
    int f_weight;  // = w_max

    // localization of the cone: base ring + z with z*f - 1
    RingPtr loc_ring;
    std::vector<int> loc_weights;
    Ideal loc_relations;

    GradedAlgebra affine;                  // the affine model
    std::vector<Polynomial> affine_images; // chart var i -> element of loc_ring

    /// Express an element of the localization in the affine chart variables;
    /// nullopt if it is not a degree-0 element of the localization.
    std::optional<Polynomial> express_in_affine(const Polynomial& loc_elem) const;
};

Chart make_chart(const GradedAlgebra& base, const Polynomial& f, int m = 1);

struct X0MinResult {
    int w_max = 0;
    std::vector<Polynomial> max_basis; // (m, w_max) basis, charts for the non-nilpotent ones
    std::vector<Chart> charts;
    bool nonempty = false;
    /// Advisory: the chart elements + relations generate an irrelevant ideal
    /// (a power of every variable), i.e. the charts cover X0_min at this m.
    bool covers = false;
};

X0MinResult max_weight_and_x0min(const GradedAlgebra& S, int m);

GradedAlgebra zmin_presentation(const GradedAlgebra& S, int m);

} // namespace nrgit
