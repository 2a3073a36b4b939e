#include "nrgit/blowup.hpp"

#include <algorithm>

namespace nrgit {

namespace {

Polynomial det(const std::vector<std::vector<Polynomial>>& m, const RingPtr& ring) {
    std::size_t n = m.size();
    if (n == 0) return Polynomial::constant(ring, 1);
    if (n == 1) return m[0][0];
    Polynomial out = Polynomial::zero(ring);
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c].is_zero()) continue;
        std::vector<std::vector<Polynomial>> sub;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Polynomial> row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) row.push_back(m[i][j]);
            sub.push_back(std::move(row));
        }
        Polynomial term = m[0][c] * det(sub, ring);
        out += (c % 2 == 0) ? term : -term;
    }
    return out;
}

std::vector<int> identity_map(std::size_t n) {
    std::vector<int> up(n);
    for (std::size_t i = 0; i < n; ++i) up[i] = static_cast<int>(i);
    return up;
}

/// q with a*q == f modulo rel; nullopt if f is not in <a> + rel.
std::optional<Polynomial> divide_mod(const Ideal& rel, const Polynomial& a,
                                     const Polynomial& f) {
    std::vector<Polynomial> gens = rel.gens();
    gens.push_back(a);
    Ideal div(rel.ring(), std::move(gens));
    Certificate cert = div.certificate(f);
    if (!cert.remainder.is_zero()) return std::nullopt;
    return cert.quotients.back();
}

} // namespace

CentreData centre_ideal(const DerivationSet& chartD, int k) {
    const GradedAlgebra& A = chartD.algebra();
    const RingPtr& R = A.ring();
    ActionMatrix M = action_matrix(chartD);

    std::vector<Polynomial> seed;
    for (std::size_t j = 0; j < R->size(); ++j)
        if (A.weights()[j] < 0) seed.push_back(Polynomial::variable(R, j));
    Ideal fit = fitting_ideal(chartD, M, k);
    for (const Polynomial& g : fit.gens())
        if (!g.is_zero()) seed.push_back(g);
    Ideal I = ideal_sum(A.relations(), seed);

    // J_f = kernel of y |-> sigma*(y) into A[u] / I_f A[u]
    std::vector<Polynomial> images;
    RingPtr ext;
    for (std::size_t j = 0; j < R->size(); ++j) {
        CoactionResult co = coaction(chartD, Polynomial::variable(R, j));
        if (!ext) ext = co.ring;
        images.push_back(co.value.map_to(ext, identity_map(co.ring->size())));
    }
    Ideal J = kernel_of_ring_map(R->names, images, I.map_to(ext, identity_map(R->size())))
                  .map_to(R, identity_map(R->size()));

    for (const Polynomial& h : J.gens())
        if (!I.contains(h))
            throw MathError("centre sweep J escapes I on generator " + h.str());
    Ideal Jfull = ideal_sum(A.relations(), J.gens());
    for (std::size_t i = 0; i < chartD.r(); ++i)
        for (const Polynomial& h : J.gens())
            if (!Jfull.contains(chartD.apply_raw(i, h)))
                throw MathError("centre J is not xi-stable on generator " + h.str());
    return CentreData{std::move(I), std::move(J), k};
}

BlowupChart blowup_chart(const DerivationSet& chartD, const CentreData& centre,
                         const WUUCandidate& cand) {
    const GradedAlgebra& A = chartD.algebra();
    const RingPtr& R = A.ring();
    const Polynomial& a = cand.a;

    std::vector<Polynomial> j_gens;
    for (const Polynomial& h : centre.J_f.gens())
        if (!h.is_zero()) j_gens.push_back(h);

    // a fresh z_h per generator, unless h/a is already a chart element
    std::vector<int> z_index(j_gens.size(), -1);
    std::vector<std::string> names = R->names;
    std::vector<int> weights = A.weights();
    for (std::size_t t = 0; t < j_gens.size(); ++t) {
        bool exact = true;
        try {
            exact_divide(j_gens[t], a);
        } catch (const MathError&) {
            exact = false;
        }
        if (exact) continue;
        auto hw = A.homogeneous_weight(j_gens[t]);
        if (!hw) throw MathError("centre generator is not weight-homogeneous: " +
                                 j_gens[t].str());
        std::string nm = "z" + std::to_string(t);
        while (std::find(names.begin(), names.end(), nm) != names.end()) nm += "_";
        z_index[t] = static_cast<int>(names.size());
        names.push_back(nm);
        weights.push_back(*hw); // weight(h) - weight(a), and a has weight 0
    }

    RingPtr up = make_ring(names);
    std::vector<int> upmap = identity_map(R->size());
    Polynomial a_up = a.map_to(up, upmap);

    std::vector<Polynomial> rel_gens;
    for (const Polynomial& g : A.relations().gens()) rel_gens.push_back(g.map_to(up, upmap));
    for (std::size_t t = 0; t < j_gens.size(); ++t) {
        if (z_index[t] < 0) continue;
        rel_gens.push_back(a_up * Polynomial::variable(up, z_index[t]) -
                           j_gens[t].map_to(up, upmap));
    }
    Ideal rel_up = saturation(Ideal(up, std::move(rel_gens)), a_up).first;
    GradedAlgebra algebra_up(up, weights, Mode::Affine, rel_up);

    std::vector<std::vector<Polynomial>> images;
    for (std::size_t i = 0; i < chartD.r(); ++i) {
        std::vector<Polynomial> row;
        for (std::size_t j = 0; j < R->size(); ++j)
            row.push_back(rel_up.normal_form(chartD.image(i, j).map_to(up, upmap)));
        row.resize(up->size(), Polynomial::zero(up));
        for (std::size_t t = 0; t < j_gens.size(); ++t) {
            if (z_index[t] < 0) continue;
            // xi.z_h = (xi.h - z_h * xi.a) / a, exact in the saturated ring
            Polynomial num = chartD.apply_raw(i, j_gens[t]).map_to(up, upmap) -
                             Polynomial::variable(up, z_index[t]) *
                                 chartD.apply_raw(i, a).map_to(up, upmap);
            auto q = divide_mod(rel_up, a_up, num);
            if (!q)
                throw MathError("lifted derivation: a does not divide xi_" +
                                std::to_string(i + 1) + ".(" + j_gens[t].str() + ")");
            row[static_cast<std::size_t>(z_index[t])] = rel_up.normal_form(*q);
        }
        images.push_back(std::move(row));
    }
    DerivationSet lifted(std::move(algebra_up), chartD.w(), std::move(images));
    return BlowupChart{cand, std::move(j_gens), std::move(z_index), R->size(),
                       std::move(lifted)};
}

std::vector<Polynomial> b_elements(const DerivationSet& chartD, const CentreData& centre,
                                   const WUUCandidate& cand) {
    const RingPtr& R = chartD.algebra().ring();
    const Ideal& rel = chartD.algebra().relations();
    std::size_t s = cand.rows.size();
    std::vector<Polynomial> bs;
    for (std::size_t i = 0; i < s; ++i) {
        std::vector<std::vector<Polynomial>> m;
        for (std::size_t l = 0; l < s; ++l) {
            std::vector<Polynomial> row;
            for (std::size_t t = 0; t < s; ++t)
                row.push_back(l == i ? cand.gs[t]
                                     : chartD.apply_raw(cand.rows[l], cand.gs[t]));
            m.push_back(std::move(row));
        }
        bs.push_back(rel.normal_form(det(m, R)));
    }
    Ideal Jfull = ideal_sum(rel, centre.J_f.gens());
    for (std::size_t l = 0; l < s; ++l)
        for (std::size_t i = 0; i < s; ++i) {
            Polynomial want = (l == i) ? cand.a : Polynomial::zero(R);
            if (!rel.normal_form(chartD.apply_raw(cand.rows[l], bs[i]) - want).is_zero())
                throw MathError("b-element identity xi.b = delta*a fails at (" +
                                std::to_string(l + 1) + "," + std::to_string(i + 1) + ")");
        }
    for (const Polynomial& b : bs)
        if (!Jfull.contains(b)) throw MathError("b-element outside J: " + b.str());
    return bs;
}

BlowupVerification verify_uu_upstairs(const BlowupChart& bc, const DerivationSet& chartD,
                                      const CentreData& centre, int k) {
    UUResult uu = check_UU(bc.lifted);
    BlowupVerification out;
    out.k = uu.k;
    if (!uu.holds || uu.k != k) return out;

    // certificate: det(xi_i . (b_j / a)) = 1 upstairs
    const RingPtr& up = bc.lifted.algebra().ring();
    const Ideal& rel_up = bc.lifted.algebra().relations();
    std::vector<int> upmap = identity_map(bc.base_vars);
    Polynomial a_up = bc.cand.a.map_to(up, upmap);
    std::vector<Polynomial> bs = b_elements(chartD, centre, bc.cand);
    std::size_t s = bs.size();
    std::vector<std::vector<Polynomial>> W(s, std::vector<Polynomial>(s));
    for (std::size_t i = 0; i < s; ++i) {
        auto q = divide_mod(rel_up, a_up, bs[i].map_to(up, upmap));
        if (!q) throw MathError("b/a is not regular upstairs: " + bs[i].str());
        for (std::size_t l = 0; l < s; ++l)
            W[l][i] = bc.lifted.apply(bc.cand.rows[l], rel_up.normal_form(*q));
    }
    Polynomial d = rel_up.normal_form(det(W, up));
    out.witness = d.str();
    out.holds = (d == Polynomial::constant(up, 1));
    return out;
}

} // namespace nrgit
