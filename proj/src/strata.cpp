#include "nrgit/strata.hpp"

namespace nrgit {

std::vector<Stratum> stratify(const DerivationSet& D) {
    ActionMatrix M = action_matrix(D);
    FittingLadder L = fitting_ladder(D, M);
    const Ideal& rel = D.algebra().relations();
    std::vector<Stratum> out;
    for (int delta = 0; delta <= static_cast<int>(D.r()); ++delta) {
        Ideal closed = ideal_sum(rel, L.fit(delta - 1));
        Ideal removed = ideal_sum(rel, L.fit(delta));
        bool empty = true;
        for (const Polynomial& g : removed.gens())
            if (!radical_membership(g, closed)) {
                empty = false;
                break;
            }
        out.push_back(Stratum{delta, std::move(closed), std::move(removed), empty});
    }
    return out;
}

int point_stratum(const std::vector<Stratum>& strata, const std::vector<Rational>& point) {
    for (const Stratum& s : strata) {
        bool on_closed = true;
        for (const Polynomial& g : s.closed_ideal.gens())
            if (g.evaluate(point) != 0) {
                on_closed = false;
                break;
            }
        if (!on_closed) continue;
        bool off_removed = false;
        for (const Polynomial& g : s.removed_ideal.gens())
            if (g.evaluate(point) != 0) {
                off_removed = true;
                break;
            }
        if (off_removed) return s.delta;
    }
    throw MathError("point lies in no stratum (does it satisfy the relations?)");
}

DerivationSet restrict_to_stratum_closure(const DerivationSet& D, int delta) {
    ActionMatrix M = action_matrix(D);
    FittingLadder L = fitting_ladder(D, M);
    const Ideal& fit = L.fit(delta - 1);
    Ideal new_rel = ideal_sum(D.algebra().relations(), fit);
    for (std::size_t i = 0; i < D.r(); ++i)
        for (const Polynomial& g : fit.gens())
            if (!new_rel.contains(D.apply_raw(i, g)))
                throw MathError("derivation does not preserve Fit_{delta-1}: xi_" +
                                std::to_string(i + 1) + " on " + g.str());
    GradedAlgebra A(D.algebra().ring(), D.algebra().weights(), D.algebra().mode(), new_rel);
    std::vector<std::vector<Polynomial>> images;
    for (std::size_t i = 0; i < D.r(); ++i) {
        std::vector<Polynomial> row;
        for (std::size_t j = 0; j < D.algebra().ring()->size(); ++j)
            row.push_back(new_rel.normal_form(D.image(i, j)));
        images.push_back(std::move(row));
    }
    return DerivationSet(std::move(A), D.w(), std::move(images));
}

} // namespace nrgit
