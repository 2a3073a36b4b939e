#pragma once

#include "nrgit/groebner.hpp"

#include <map>

namespace nrgit {

/// Membership certificate: f == sum_j quotients[j] * gens[j] + remainder,
/// re-checkable by plain arithmetic. Quotients are over the ideal's
/// *original* generators, not the Groebner basis.
struct Certificate {
    std::vector<Polynomial> quotients;
    Polynomial remainder;
};

/// An ideal of Q[x1..xn], immutable after construction (so the per-order
/// Groebner cache never goes stale).
class Ideal {
public:
    Ideal(RingPtr ring, std::vector<Polynomial> gens);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Polynomial>& gens() const { return gens_; }

    const GroebnerBasis& groebner(const MonomialOrder& ord = MonomialOrder::grevlex(),
                                  const GroebnerOptions& opts = {}) const;

    Polynomial normal_form(const Polynomial& f,
                           const MonomialOrder& ord = MonomialOrder::grevlex()) const;
    bool contains(const Polynomial& f) const;
    Certificate certificate(const Polynomial& f) const;

    bool is_whole_ring() const; // 1 in I
    bool is_zero_ideal() const;
    bool contains_ideal(const Ideal& other) const;
    bool equals(const Ideal& other) const;

    /// Same ideal presented in a larger ring (var_map as in Polynomial::map_to).
    Ideal map_to(const RingPtr& target, const std::vector<int>& var_map) const;

private:
    RingPtr ring_;
    std::vector<Polynomial> gens_;
    mutable std::map<std::string, GroebnerBasis> cache_;
};

Ideal ideal_sum(const Ideal& a, const Ideal& b);
Ideal ideal_sum(const Ideal& a, const std::vector<Polynomial>& extra);
Ideal ideal_intersect(const Ideal& a, const Ideal& b);

/// (I : f) = { g : g*f in I }.
Ideal ideal_quotient(const Ideal& I, const Polynomial& f);

/// (I : f^inf) together with the saturation exponent (least s with
/// (I : f^s) == (I : f^inf)).
std::pair<Ideal, int> saturation(const Ideal& I, const Polynomial& f);

/// I intersect Q[vars not in kill]; generators of the result avoid the
/// killed variables. kill is a mask over ring variables.
Ideal eliminate(const Ideal& I, const std::vector<char>& kill);

/// f in radical(I), by the Rabinowitsch trick.
bool radical_membership(const Polynomial& f, const Ideal& I);

/// Kernel of the ring map Q[source] -> Q[target]/target_relations sending
/// source variable i to images[i]. Result lives in a fresh ring on
/// source_names.
Ideal kernel_of_ring_map(const std::vector<std::string>& source_names,
                         const std::vector<Polynomial>& images, const Ideal& target_relations);

/// Express f (an element of the target ring, modulo target_relations) as a
/// polynomial in the given images; nullopt if f is not in the generated
/// subalgebra. The result lives in a fresh ring on source_names.
std::optional<Polynomial> express_in_subring(const Polynomial& f,
                                             const std::vector<std::string>& source_names,
                                             const std::vector<Polynomial>& images,
                                             const Ideal& target_relations);

/// Signals a mathematically well-posed computation that failed a required
/// side condition (e.g. inexact division where exactness was promised).
struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact division f / g; throws MathError if g does not divide f.
Polynomial exact_divide(const Polynomial& f, const Polynomial& g);

} // namespace nrgit
