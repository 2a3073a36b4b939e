#include "nrgit/ideal.hpp"

#include <algorithm>

namespace nrgit {

namespace {

std::string fresh_name(const RingPtr& ring, std::string base) {
    while (ring->index_of(base) >= 0) base += "_";
    return base;
}

} // namespace

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> gens)
    : ring_(std::move(ring)), gens_(std::move(gens)) {
    for (const Polynomial& g : gens_)
        if (!g.is_zero() && !(*g.ring() == *ring_))
            throw std::invalid_argument("ideal generator from wrong ring");
}

const GroebnerBasis& Ideal::groebner(const MonomialOrder& ord, const GroebnerOptions& opts) const {
    auto it = cache_.find(ord.key());
    if (it != cache_.end()) return it->second;
    GroebnerBasis gb = buchberger(gens_, ord, opts);
    return cache_.emplace(ord.key(), std::move(gb)).first->second;
}

Polynomial Ideal::normal_form(const Polynomial& f, const MonomialOrder& ord) const {
    const GroebnerBasis& gb = groebner(ord);
    long budget = default_step_budget();
    return normal_form_against(f, gb.basis, ord, &budget);
}

bool Ideal::contains(const Polynomial& f) const { return normal_form(f).is_zero(); }

Certificate Ideal::certificate(const Polynomial& f) const {
    const GroebnerBasis& gb = groebner();
    long budget = default_step_budget();
    DivisionResult div = divide(f, gb.basis, MonomialOrder::grevlex(), &budget);
    Certificate cert;
    cert.remainder = div.remainder;
    cert.quotients.assign(gens_.size(), Polynomial::zero(ring_));
    for (std::size_t b = 0; b < gb.basis.size(); ++b) {
        if (div.quotients[b].is_zero()) continue;
        for (std::size_t j = 0; j < gens_.size(); ++j)
            if (!gb.reps[b][j].is_zero()) cert.quotients[j] += div.quotients[b] * gb.reps[b][j];
    }
    return cert;
}

bool Ideal::is_whole_ring() const {
    const auto& basis = groebner().basis;
    return basis.size() == 1 && basis[0].is_constant();
}

bool Ideal::is_zero_ideal() const { return groebner().basis.empty(); }

bool Ideal::contains_ideal(const Ideal& other) const {
    return std::all_of(other.gens_.begin(), other.gens_.end(),
                       [&](const Polynomial& g) { return contains(g); });
}

bool Ideal::equals(const Ideal& other) const {
    return contains_ideal(other) && other.contains_ideal(*this);
}

Ideal Ideal::map_to(const RingPtr& target, const std::vector<int>& var_map) const {
    std::vector<Polynomial> mapped;
    for (const Polynomial& g : gens_) mapped.push_back(g.map_to(target, var_map));
    return Ideal(target, std::move(mapped));
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) { return ideal_sum(a, b.gens()); }

Ideal ideal_sum(const Ideal& a, const std::vector<Polynomial>& extra) {
    std::vector<Polynomial> gens = a.gens();
    gens.insert(gens.end(), extra.begin(), extra.end());
    return Ideal(a.ring(), std::move(gens));
}

Ideal ideal_intersect(const Ideal& a, const Ideal& b) {
    const RingPtr& ring = a.ring();
    std::string tname = fresh_name(ring, "t");
    RingPtr ext = extend_ring(ring, {tname});
    std::vector<int> up(ring->size());
    for (std::size_t i = 0; i < ring->size(); ++i) up[i] = static_cast<int>(i);
    Polynomial t = Polynomial::variable(ext, ring->size());
    Polynomial one_minus_t = Polynomial::constant(ext, 1) - t;

    std::vector<Polynomial> gens;
    for (const Polynomial& g : a.gens()) gens.push_back(t * g.map_to(ext, up));
    for (const Polynomial& g : b.gens()) gens.push_back(one_minus_t * g.map_to(ext, up));

    std::vector<char> kill(ext->size(), 0);
    kill[ring->size()] = 1;
    Ideal upstairs(ext, std::move(gens));
    Ideal elim = eliminate(upstairs, kill);

    std::vector<int> down(ext->size(), -1);
    for (std::size_t i = 0; i < ring->size(); ++i) down[i] = static_cast<int>(i);
    return elim.map_to(ring, down);
}

Polynomial exact_divide(const Polynomial& f, const Polynomial& g) {
    if (g.is_zero()) throw MathError("division by zero polynomial");
    long budget = default_step_budget();
    DivisionResult div = divide(f, {g}, MonomialOrder::grevlex(), &budget);
    if (!div.remainder.is_zero())
        throw MathError("exact division failed: " + g.str() + " does not divide " + f.str());
    return div.quotients[0];
}

Ideal ideal_quotient(const Ideal& I, const Polynomial& f) {
    if (f.is_zero()) // (I : 0) is the whole ring
        return Ideal(I.ring(), {Polynomial::constant(I.ring(), 1)});
    Ideal meet = ideal_intersect(I, Ideal(I.ring(), {f}));
    std::vector<Polynomial> gens;
    for (const Polynomial& g : meet.groebner().basis) gens.push_back(exact_divide(g, f));
    return Ideal(I.ring(), std::move(gens));
}

std::pair<Ideal, int> saturation(const Ideal& I, const Polynomial& f) {
    Ideal cur = I;
    int s = 0;
    for (;;) {
        Ideal next = ideal_quotient(cur, f);
        if (next.equals(cur)) return {cur, s};
        cur = next;
        ++s;
    }
}

Ideal eliminate(const Ideal& I, const std::vector<char>& kill) {
    MonomialOrder ord = MonomialOrder::block(kill);
    const GroebnerBasis& gb = I.groebner(ord);
    std::vector<Polynomial> gens;
    for (const Polynomial& g : gb.basis) {
        bool clean = true;
        for (const auto& [m, c] : g.terms())
            for (std::size_t v = 0; v < kill.size() && clean; ++v)
                if (kill[v] && m[v] != 0) clean = false;
        if (clean) gens.push_back(g);
    }
    return Ideal(I.ring(), std::move(gens));
}

bool radical_membership(const Polynomial& f, const Ideal& I) {
    const RingPtr& ring = I.ring();
    std::string tname = fresh_name(ring, "t");
    RingPtr ext = extend_ring(ring, {tname});
    std::vector<int> up(ring->size());
    for (std::size_t i = 0; i < ring->size(); ++i) up[i] = static_cast<int>(i);
    Polynomial t = Polynomial::variable(ext, ring->size());
    std::vector<Polynomial> gens;
    for (const Polynomial& g : I.gens()) gens.push_back(g.map_to(ext, up));
    gens.push_back(Polynomial::constant(ext, 1) - t * f.map_to(ext, up));
    return Ideal(ext, std::move(gens)).is_whole_ring();
}

namespace {

/// Combined ring [target vars (renamed on collision) | source vars] with the
/// graph ideal ⟨target_relations, s_i − images_i⟩ and the target-block
/// elimination mask.
struct GraphIdeal {
    RingPtr comb;
    std::size_t tcount;
    std::vector<int> up; // target -> comb
    Ideal ideal;
    std::vector<char> kill;
};

GraphIdeal build_graph_ideal(const std::vector<std::string>& source_names,
                             const std::vector<Polynomial>& images,
                             const Ideal& target_relations) {
    const RingPtr& target = target_relations.ring();
    if (images.size() != source_names.size())
        throw std::invalid_argument("one image per source variable required");

    std::vector<std::string> names;
    for (const std::string& n : target->names) {
        std::string nn = n;
        while (std::find(source_names.begin(), source_names.end(), nn) != source_names.end() ||
               std::find(names.begin(), names.end(), nn) != names.end())
            nn += "@";
        names.push_back(nn);
    }
    std::size_t tcount = names.size();
    for (const std::string& n : source_names) names.push_back(n);
    RingPtr comb = make_ring(names);

    std::vector<int> up(target->size());
    for (std::size_t i = 0; i < target->size(); ++i) up[i] = static_cast<int>(i);

    std::vector<Polynomial> gens;
    for (const Polynomial& g : target_relations.gens()) gens.push_back(g.map_to(comb, up));
    for (std::size_t i = 0; i < images.size(); ++i)
        gens.push_back(Polynomial::variable(comb, tcount + i) - images[i].map_to(comb, up));

    std::vector<char> kill(comb->size(), 0);
    for (std::size_t i = 0; i < tcount; ++i) kill[i] = 1;
    return {comb, tcount, std::move(up), Ideal(comb, std::move(gens)), std::move(kill)};
}

} // namespace

Ideal kernel_of_ring_map(const std::vector<std::string>& source_names,
                         const std::vector<Polynomial>& images, const Ideal& target_relations) {
    GraphIdeal gi = build_graph_ideal(source_names, images, target_relations);
    Ideal elim = eliminate(gi.ideal, gi.kill);
    RingPtr source = make_ring(source_names);
    std::vector<int> down(gi.comb->size(), -1);
    for (std::size_t i = 0; i < source_names.size(); ++i)
        down[gi.tcount + i] = static_cast<int>(i);
    return elim.map_to(source, down);
}

std::optional<Polynomial> express_in_subring(const Polynomial& f,
                                             const std::vector<std::string>& source_names,
                                             const std::vector<Polynomial>& images,
                                             const Ideal& target_relations) {
    GraphIdeal gi = build_graph_ideal(source_names, images, target_relations);
    MonomialOrder ord = MonomialOrder::block(gi.kill);
    const GroebnerBasis& gb = gi.ideal.groebner(ord);
    long budget = default_step_budget();
    Polynomial nf = normal_form_against(f.map_to(gi.comb, gi.up), gb.basis, ord, &budget);
    for (const auto& [m, c] : nf.terms())
        for (std::size_t v = 0; v < gi.tcount; ++v)
            if (m[v] != 0) return std::nullopt;
    RingPtr source = make_ring(source_names);
    std::vector<int> down(gi.comb->size(), -1);
    for (std::size_t i = 0; i < source_names.size(); ++i)
        down[gi.tcount + i] = static_cast<int>(i);
    return nf.map_to(source, down);
}

} // namespace nrgit
