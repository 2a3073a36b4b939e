#include "nrgit/graded.hpp"

#include <algorithm>
#include <map>

namespace nrgit {

namespace {

std::string fresh_name(const RingPtr& ring, std::string base) {
    while (ring->index_of(base) >= 0) base += "_";
    return base;
}

void enumerate_monomials(std::size_t nvars, int degree, Monomial& cur, std::size_t var,
                         std::vector<Monomial>& out) {
    if (var + 1 == nvars) {
        cur[var] = degree;
        out.push_back(cur);
        cur[var] = 0;
        return;
    }
    for (int e = degree; e >= 0; --e) {
        cur[var] = e;
        enumerate_monomials(nvars, degree - e, cur, var + 1, out);
    }
    cur[var] = 0;
}

std::vector<Monomial> monomials_of_degree(std::size_t nvars, int degree) {
    std::vector<Monomial> out;
    Monomial cur(nvars, 0);
    if (nvars == 0) return out;
    enumerate_monomials(nvars, degree, cur, 0, out);
    return out;
}

/// Incremental exact Gaussian elimination: keeps candidates whose normal
/// forms are independent of everything accepted so far.
class IndependenceSieve {
public:
    bool accept(Polynomial nf) {
        MonomialOrder ord = MonomialOrder::grevlex();
        for (;;) {
            if (nf.is_zero()) return false;
            const Monomial& lm = nf.leading_monomial(ord);
            auto it = pivots_.find(lm);
            if (it == pivots_.end()) {
                nf = nf * (Rational(1) / nf.leading_coefficient(ord));
                pivots_.emplace(lm, std::move(nf));
                return true;
            }
            nf -= nf.leading_coefficient(ord) * it->second;
        }
    }

private:
    std::map<Monomial, Polynomial> pivots_;
};

} // namespace

GradedAlgebra::GradedAlgebra(RingPtr ring, std::vector<int> weights, Mode mode, Ideal relations)
    : ring_(std::move(ring)), weights_(std::move(weights)), mode_(mode),
      relations_(std::move(relations)) {
    if (weights_.size() != ring_->size())
        throw std::invalid_argument("one weight per ring variable required");
    if (mode_ == Mode::Affine)
        for (std::size_t i = 0; i < weights_.size(); ++i)
            if (weights_[i] > 0)
                throw std::invalid_argument("affine mode requires nonpositive weights, got " +
                                            ring_->names[i] + " of weight " +
                                            std::to_string(weights_[i]));
    for (const Polynomial& g : relations_.gens()) {
        if (g.is_zero()) continue;
        if (!homogeneous_weight(g))
            throw std::invalid_argument("relation not weight-homogeneous: " + g.str());
        if (mode_ == Mode::ProjectiveCone) {
            int deg = total_degree(g.terms().begin()->first);
            for (const auto& [m, c] : g.terms())
                if (total_degree(m) != deg)
                    throw std::invalid_argument("relation not degree-homogeneous: " + g.str());
        }
    }
}

int GradedAlgebra::weight_of(const Monomial& m) const {
    int w = 0;
    for (std::size_t i = 0; i < m.size(); ++i) w += m[i] * weights_[i];
    return w;
}

std::optional<int> GradedAlgebra::homogeneous_weight(const Polynomial& f) const {
    if (f.is_zero()) return std::nullopt;
    int w = weight_of(f.terms().begin()->first);
    for (const auto& [m, c] : f.terms())
        if (weight_of(m) != w) return std::nullopt;
    return w;
}

bool GradedAlgebra::is_zero_algebra() const { return relations_.is_whole_ring(); }

std::vector<std::pair<int, Polynomial>> weight_decompose(const GradedAlgebra& S,
                                                         const Polynomial& f) {
    Polynomial nf = S.relations().normal_form(f);
    std::map<int, Polynomial> parts;
    for (const auto& [m, c] : nf.terms()) {
        auto [it, fresh] = parts.try_emplace(S.weight_of(m), Polynomial::zero(S.ring()));
        it->second.add_term(m, c);
    }
    return {parts.begin(), parts.end()};
}

std::vector<Polynomial> graded_piece_basis(const GradedAlgebra& S, int m, int w) {
    if (S.mode() != Mode::ProjectiveCone)
        throw MathError("graded_piece_basis requires projective-cone mode "
                        "(affine pieces may be infinite-dimensional)");
    std::vector<Monomial> monos = monomials_of_degree(S.ring()->size(), m);
    // deterministic candidate order: descending lex, so earlier-declared
    // variables become the preferred representatives
    std::sort(monos.begin(), monos.end(), [](const Monomial& a, const Monomial& b) {
        return MonomialOrder::lex().less(b, a);
    });
    IndependenceSieve sieve;
    std::vector<Polynomial> basis;
    for (const Monomial& mono : monos) {
        if (S.weight_of(mono) != w) continue;
        Polynomial cand = Polynomial::monomial(S.ring(), mono, 1);
        if (sieve.accept(S.relations().normal_form(cand))) basis.push_back(cand);
    }
    return basis;
}

std::optional<Polynomial> Chart::express_in_affine(const Polynomial& loc_elem) const {
    return express_in_subring(loc_elem, affine.ring()->names, affine_images, loc_relations);
}

Chart make_chart(const GradedAlgebra& base, const Polynomial& f, int m) {
    auto fw = base.homogeneous_weight(f);
    if (!fw) throw MathError("chart element must be weight-homogeneous and nonzero");

    const RingPtr& R = base.ring();
    RingPtr loc = extend_ring(R, {fresh_name(R, "z")});
    std::vector<int> up(R->size());
    for (std::size_t i = 0; i < R->size(); ++i) up[i] = static_cast<int>(i);
    Polynomial z = Polynomial::variable(loc, R->size());

    std::vector<int> loc_weights = base.weights();
    loc_weights.push_back(-*fw);
    std::vector<Polynomial> lgens;
    for (const Polynomial& g : base.relations().gens()) lgens.push_back(g.map_to(loc, up));
    lgens.push_back(z * f.map_to(loc, up) - Polynomial::constant(loc, 1));
    Ideal loc_relations(loc, std::move(lgens));

    // affine chart variables stand for g/f: one per cone variable when m = 1
    // (dropping f's own variable), one per degree-m basis monomial otherwise.
    std::vector<std::string> names;
    std::vector<int> weights;
    std::vector<Polynomial> images;
    int fvar = -1;
    if (m == 1 && f.terms().size() == 1) {
        const Monomial& fm = f.terms().begin()->first;
        if (total_degree(fm) == 1)
            for (std::size_t i = 0; i < fm.size(); ++i)
                if (fm[i] == 1) fvar = static_cast<int>(i);
    }
    if (m == 1) {
        for (std::size_t i = 0; i < R->size(); ++i) {
            if (static_cast<int>(i) == fvar) continue;
            names.push_back(R->names[i]);
            weights.push_back(base.weights()[i] - *fw);
            images.push_back(Polynomial::variable(loc, i) * z);
        }
    } else {
        std::vector<Polynomial> degm;
        for (const Monomial& mono : monomials_of_degree(R->size(), m))
            degm.push_back(Polynomial::monomial(R, mono, 1));
        std::sort(degm.begin(), degm.end(), [](const Polynomial& a, const Polynomial& b) {
            return MonomialOrder::lex().less(b.terms().begin()->first,
                                             a.terms().begin()->first);
        });
        int idx = 0;
        for (const Polynomial& g : degm) {
            names.push_back("c" + std::to_string(idx++));
            weights.push_back(base.weight_of(g.terms().begin()->first) - *fw);
            images.push_back(g.map_to(loc, up) * z);
        }
    }

    Ideal kernel = kernel_of_ring_map(names, images, loc_relations);
    GradedAlgebra affine(kernel.ring(), std::move(weights), Mode::Affine, kernel);
    return Chart{f,      *fw,    std::move(loc), std::move(loc_weights), std::move(loc_relations),
                 std::move(affine), std::move(images)};
}

X0MinResult max_weight_and_x0min(const GradedAlgebra& S, int m) {
    if (S.mode() != Mode::ProjectiveCone)
        throw MathError("max_weight_and_x0min requires projective-cone mode");
    if (S.is_zero_algebra()) throw MathError("zero algebra has no X0_min");

    std::map<int, bool> seen;
    for (const Monomial& mono : monomials_of_degree(S.ring()->size(), m))
        seen.emplace(S.weight_of(mono), false);

    X0MinResult out;
    bool found = false;
    for (auto it = seen.rbegin(); it != seen.rend() && !found; ++it) {
        std::vector<Polynomial> basis = graded_piece_basis(S, m, it->first);
        if (basis.empty()) continue;
        found = true;
        out.w_max = it->first;
        out.max_basis = std::move(basis);
    }
    if (!found) return out; // every degree-m monomial is zero in the algebra

    for (const Polynomial& f : out.max_basis)
        if (!radical_membership(f, S.relations())) out.charts.push_back(make_chart(S, f, m));
    out.nonempty = !out.charts.empty();

    if (out.nonempty) {
        std::vector<Polynomial> gens = S.relations().gens();
        for (const Chart& c : out.charts) gens.push_back(c.f);
        Ideal irrel(S.ring(), std::move(gens));
        out.covers = true;
        for (std::size_t i = 0; i < S.ring()->size() && out.covers; ++i)
            if (!radical_membership(Polynomial::variable(S.ring(), i), irrel))
                out.covers = false;
    }
    return out;
}

GradedAlgebra zmin_presentation(const GradedAlgebra& S, int m) {
    X0MinResult x0 = max_weight_and_x0min(S, m);
    if (!x0.nonempty) throw MathError("X0_min is empty; Z_min has no presentation");

    std::vector<std::string> names;
    for (std::size_t i = 0; i < x0.max_basis.size(); ++i) {
        const Polynomial& f = x0.max_basis[i];
        std::string n;
        if (f.terms().size() == 1 && total_degree(f.terms().begin()->first) == 1) {
            const Monomial& mono = f.terms().begin()->first;
            for (std::size_t v = 0; v < mono.size(); ++v)
                if (mono[v] == 1) n = S.ring()->names[v];
        }
        if (n.empty()) n = "Z" + std::to_string(i);
        while (std::find(names.begin(), names.end(), n) != names.end()) n += "_";
        names.push_back(n);
    }
    Ideal kernel = kernel_of_ring_map(names, x0.max_basis, S.relations());
    std::vector<int> weights(names.size(), x0.w_max);
    return GradedAlgebra(kernel.ring(), std::move(weights), Mode::ProjectiveCone, kernel);
}

} // namespace nrgit
