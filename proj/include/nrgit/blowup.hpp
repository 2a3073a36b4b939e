#pragma once

#include "nrgit/quotient.hpp"

namespace nrgit {

/// Blow-up centre on a chart: I_f = (negative-weight generators) + Fit_k,
/// J_f = { f : sigma*(f) lies in I_f . A[u] }, its U-invariant sweep.
struct CentreData {
    Ideal I_f; // includes the chart relations
    Ideal J_f; // generators in the chart ring, xi-stable
    int k = 0;
};
CentreData centre_ideal(const DerivationSet& chartD, int k);

/// Affine blow-up chart A[J_f/a] for a degree-one (weight-0 determinant)
/// element a of J_f, with the lifted derivations. A fresh variable z_h is
/// introduced per J_f generator h, except when a divides h exactly (then
/// h/a already lives in the chart ring); relations are <a z_h - h> plus the
/// chart relations, saturated at a.
struct BlowupChart {
    WUUCandidate cand;              // a with its determinant rows and columns
    std::vector<Polynomial> j_gens; // J_f generators, in the base chart ring
    std::vector<int> z_index;       // per generator: upstairs var index, or -1
    std::size_t base_vars = 0;      // upstairs vars [0, base_vars) are the chart's
    DerivationSet lifted;
};
BlowupChart blowup_chart(const DerivationSet& chartD, const CentreData& centre,
                         const WUUCandidate& cand);

/// b_i = the candidate determinant with the i-th derivation row replaced by
/// the column elements (g_1..g_{r-k}); verified xi_i.b_j = delta_ij * a and
/// b_i in J_f.
std::vector<Polynomial> b_elements(const DerivationSet& chartD, const CentreData& centre,
                                   const WUUCandidate& cand);

/// The theorem check: upstairs Fit_{k-1} vanishes and Fit_k is the unit
/// ideal, with det(xi_i . (b_j / a)) = 1 as the certificate.
struct BlowupVerification {
    bool holds = false;
    int k = 0;
    std::string witness; // the certifying determinant, as a string
};
BlowupVerification verify_uu_upstairs(const BlowupChart& bc, const DerivationSet& chartD,
                                      const CentreData& centre, int k);

} // namespace nrgit
