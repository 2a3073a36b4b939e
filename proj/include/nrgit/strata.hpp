#pragma once

#include "nrgit/derivation.hpp"

namespace nrgit {

/// Locally closed stratum S_delta = V(Fit_{delta-1}) \ V(Fit_delta),
/// represented scheme-theoretically as a pair of ideals.
struct Stratum {
    int delta;
    Ideal closed_ideal;  // Fit_{delta-1} + relations
    Ideal removed_ideal; // Fit_delta + relations
    bool empty;          // V(closed) contained in V(removed)
};

std::vector<Stratum> stratify(const DerivationSet& D);

/// The unique delta with point in S_delta; equals stab_dim_at_point.
int point_stratum(const std::vector<Stratum>& strata, const std::vector<Rational>& point);

/// Replace the algebra by ambient/(Fit_{delta-1}); derivations descend after
/// verifying they preserve the Fitting ideal.
DerivationSet restrict_to_stratum_closure(const DerivationSet& D, int delta);

} // namespace nrgit
