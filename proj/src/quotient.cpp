#include "nrgit/quotient.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>

namespace nrgit {

namespace {

void combinations(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> cur(k);
    auto rec = [&](auto&& self, std::size_t start, std::size_t depth) -> void {
        if (depth == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i + (k - depth) <= n; ++i) {
            cur[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    if (k <= n) rec(rec, 0, 0);
}

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

/// adj(M) with M * adj(M) = det(M) * Id.
std::vector<std::vector<Polynomial>> adjugate(const std::vector<std::vector<Polynomial>>& m,
                                              const RingPtr& ring) {
    std::size_t n = m.size();
    std::vector<std::vector<Polynomial>> adj(n,
                                             std::vector<Polynomial>(n, Polynomial::zero(ring)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < n; ++t) {
            std::vector<std::vector<Polynomial>> sub;
            for (std::size_t a = 0; a < n; ++a) {
                if (a == i) continue;
                std::vector<Polynomial> row;
                for (std::size_t b = 0; b < n; ++b)
                    if (b != t) row.push_back(m[a][b]);
                sub.push_back(std::move(row));
            }
            Polynomial cof = det(sub, ring);
            adj[t][i] = ((i + t) % 2 == 0) ? cof : -cof;
        }
    return adj;
}

Polynomial weight_part(const GradedAlgebra& A, const Polynomial& f, int w) {
    Polynomial out = Polynomial::zero(A.ring());
    for (const auto& [m, c] : f.terms())
        if (A.weight_of(m) == w) out.add_term(m, c);
    return out;
}

std::optional<std::vector<std::vector<Rational>>> invert_constant(
    const std::vector<std::vector<Rational>>& m) {
    std::size_t n = m.size();
    std::vector<std::vector<Rational>> a = m;
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(a[col], a[pivot]);
        std::swap(inv[col], inv[pivot]);
        Rational d = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) continue;
            Rational f = a[i][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

/// Try to build slice elements from the rows `kept` of D's action matrix;
/// nullopt if this row choice does not work out.
std::optional<std::vector<Polynomial>> slices_from_rows(const DerivationSet& D,
                                                        const std::vector<std::size_t>& kept) {
    const GradedAlgebra& A = D.algebra();
    const RingPtr& R = A.ring();
    std::size_t s = kept.size();
    ActionMatrix M = action_matrix(D);

    // minor ideal of the kept rows; generators ordered [relations..., minors...]
    std::vector<std::vector<std::size_t>> col_sets;
    combinations(R->size(), s, col_sets);
    std::vector<Polynomial> gens = A.relations().gens();
    std::size_t rel_count = gens.size();
    for (const auto& cols : col_sets) {
        std::vector<std::vector<Polynomial>> sub;
        for (std::size_t i : kept) {
            std::vector<Polynomial> row;
            for (std::size_t j : cols) row.push_back(M.entries[i][j]);
            sub.push_back(std::move(row));
        }
        gens.push_back(det(sub, R));
    }
    Ideal test(R, gens);
    if (!test.is_whole_ring()) return std::nullopt;

    Certificate cert = test.certificate(Polynomial::constant(R, 1));
    if (!cert.remainder.is_zero()) return std::nullopt;

    // Cramer: 1 = sum_D c_D det(M_D) mod relations, so
    // e_i = sum_D c_D M_D adj(M_D) e_i gives lifts omega_i over the columns.
    std::vector<std::vector<Polynomial>> v(
        s, std::vector<Polynomial>(R->size(), Polynomial::zero(R)));
    for (std::size_t d = 0; d < col_sets.size(); ++d) {
        const Polynomial& c = cert.quotients[rel_count + d];
        if (c.is_zero()) continue;
        std::vector<std::vector<Polynomial>> sub;
        for (std::size_t i : kept) {
            std::vector<Polynomial> row;
            for (std::size_t j : col_sets[d]) row.push_back(M.entries[i][j]);
            sub.push_back(std::move(row));
        }
        auto adj = adjugate(sub, R);
        for (std::size_t t = 0; t < s; ++t)
            for (std::size_t i = 0; i < s; ++i)
                v[i][col_sets[d][t]] += c * adj[t][i];
    }

    // weight recipe: x_i = sum over weight(-w) variables of the weight-0
    // part of the lift coefficient times the variable
    std::vector<Polynomial> xs;
    for (std::size_t i = 0; i < s; ++i) {
        Polynomial x = Polynomial::zero(R);
        for (std::size_t j = 0; j < R->size(); ++j) {
            if (A.weights()[j] != -D.w()) continue;
            Polynomial c0 = weight_part(A, v[i][j], 0);
            if (!c0.is_zero()) x += c0 * Polynomial::variable(R, j);
        }
        xs.push_back(A.relations().normal_form(x));
    }

    // verify xi_kept[l] . x_i = delta_li; repair via an invertible constant
    // recombination if needed
    std::vector<std::vector<Polynomial>> T(s, std::vector<Polynomial>(s, Polynomial::zero(R)));
    bool is_delta = true, is_const = true;
    std::vector<std::vector<Rational>> Tc(s, std::vector<Rational>(s, 0));
    for (std::size_t l = 0; l < s; ++l)
        for (std::size_t i = 0; i < s; ++i) {
            T[l][i] = A.relations().normal_form(D.apply_raw(kept[l], xs[i]));
            auto c = T[l][i].as_constant();
            if (!c) {
                is_const = false;
            } else {
                Tc[l][i] = *c;
            }
            if (!(T[l][i] == Polynomial::constant(R, l == i ? 1 : 0))) is_delta = false;
        }
    if (is_delta) return xs;
    if (!is_const) return std::nullopt;
    auto inv = invert_constant(Tc);
    if (!inv) return std::nullopt;
    std::vector<Polynomial> repaired;
    for (std::size_t i = 0; i < s; ++i) {
        Polynomial x = Polynomial::zero(R);
        for (std::size_t t = 0; t < s; ++t) x += xs[t] * (*inv)[t][i];
        repaired.push_back(x);
    }
    for (std::size_t l = 0; l < s; ++l)
        for (std::size_t i = 0; i < s; ++i)
            if (!(A.relations().normal_form(D.apply_raw(kept[l], repaired[i])) ==
                  Polynomial::constant(R, l == i ? 1 : 0)))
                return std::nullopt;
    return repaired;
}

} // namespace

SliceData find_slices(const DerivationSet& chartD, int k, unsigned seed) {
    int r = static_cast<int>(chartD.r());
    if (k < 0 || k > r) throw MathError("invalid cokernel rank k");
    std::size_t s = static_cast<std::size_t>(r - k);

    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coef(-2, 2);

    DerivationSet cur = chartD;
    std::vector<std::vector<Rational>> C(r, std::vector<Rational>(r, 0));
    for (int i = 0; i < r; ++i) C[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;

    for (int attempt = 0; attempt <= 20; ++attempt) {
        std::vector<std::vector<std::size_t>> row_sets;
        combinations(static_cast<std::size_t>(r), s, row_sets);
        for (const auto& kept : row_sets) {
            auto xs = slices_from_rows(cur, kept);
            if (!xs) continue;
            std::vector<std::size_t> sset;
            for (std::size_t i = 0; i < static_cast<std::size_t>(r); ++i)
                if (std::find(kept.begin(), kept.end(), i) == kept.end()) sset.push_back(i);
            return SliceData{std::move(cur), C, std::move(sset), kept, std::move(*xs)};
        }
        // deterministic random constant basis change and retry
        std::vector<std::vector<Rational>> Cn;
        std::vector<std::vector<Polynomial>> images;
        do {
            Cn.assign(static_cast<std::size_t>(r), std::vector<Rational>(r, 0));
            for (auto& row : Cn)
                for (auto& e : row) e = coef(rng);
        } while (!invert_constant(Cn));
        images.clear();
        for (int i = 0; i < r; ++i) {
            std::vector<Polynomial> row;
            for (std::size_t j = 0; j < chartD.algebra().ring()->size(); ++j) {
                Polynomial img = Polynomial::zero(chartD.algebra().ring());
                for (int t = 0; t < r; ++t)
                    img += chartD.image(static_cast<std::size_t>(t), j) *
                           Cn[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
                row.push_back(std::move(img));
            }
            images.push_back(std::move(row));
        }
        cur = DerivationSet(chartD.algebra(), chartD.w(), std::move(images));
        C = Cn;
    }
    throw MathError("no slice coordinate subset found after 20 basis changes");
}

Polynomial dixmier_project(const SliceData& slices, const Polynomial& f) {
    const DerivationSet& D = slices.prime;
    const Ideal& rel = D.algebra().relations();
    Polynomial g = rel.normal_form(f);
    for (std::size_t t = 0; t < slices.uprime.size(); ++t) {
        std::size_t i = slices.uprime[t];
        const Polynomial& x = slices.xs[t];
        Polynomial acc = Polynomial::zero(g.ring());
        Polynomial cur = g;
        Polynomial xpow = Polynomial::constant(g.ring(), 1);
        Rational fact = 1;
        for (int n = 0; !cur.is_zero(); ++n) {
            if (n > 1000) throw MathError("Dixmier projection did not terminate");
            acc += xpow * cur * (Rational(1) / fact);
            cur = D.apply(i, cur);
            xpow = rel.normal_form(xpow * -x);
            fact *= Rational(n + 1);
        }
        g = rel.normal_form(acc);
    }
    for (std::size_t i = 0; i < D.r(); ++i)
        if (!D.apply(i, g).is_zero())
            throw MathError("Dixmier projection image is not invariant under xi_" +
                            std::to_string(i + 1));
    return g;
}

InvariantPresentation invariant_presentation(const SliceData& slices) {
    const DerivationSet& D = slices.prime;
    const GradedAlgebra& A = D.algebra();
    const RingPtr& R = A.ring();

    std::vector<std::string> names;
    std::vector<Polynomial> gens;
    // sanity: A^u = A/(xs), so each generator projects to itself mod (xs)
    Ideal mod_xs = ideal_sum(A.relations(), slices.xs);
    for (std::size_t j = 0; j < R->size(); ++j) {
        Polynomial p = dixmier_project(slices, Polynomial::variable(R, j));
        if (!mod_xs.contains(p - Polynomial::variable(R, j)))
            throw MathError("invariant presentation sanity check failed on " + R->names[j]);
        if (p.is_zero()) continue;
        names.push_back(R->names[j]);
        gens.push_back(std::move(p));
    }
    Ideal relations = kernel_of_ring_map(names, gens, A.relations());
    return InvariantPresentation{std::move(names), std::move(gens), std::move(relations)};
}

std::optional<std::vector<Rational>> solve_group_element(const SliceData& slices,
                                                         const InvariantPresentation& inv,
                                                         const std::vector<Rational>& p,
                                                         const std::vector<Rational>& q) {
    const DerivationSet& D = slices.prime;
    for (const Polynomial& g : D.algebra().relations().gens())
        if (g.evaluate(p) != 0 || g.evaluate(q) != 0)
            throw MathError("point fails chart relation " + g.str());

    for (const Polynomial& g : inv.generators)
        if (g.evaluate(p) != g.evaluate(q)) return std::nullopt;

    std::vector<Rational> t(D.r(), 0);
    for (std::size_t i = 0; i < slices.uprime.size(); ++i)
        t[slices.uprime[i]] = slices.xs[i].evaluate(q) - slices.xs[i].evaluate(p);

    const RingPtr& R = D.algebra().ring();
    std::vector<Rational> pt = p;
    pt.insert(pt.end(), t.begin(), t.end());
    for (std::size_t j = 0; j < R->size(); ++j) {
        CoactionResult co = coaction(D, Polynomial::variable(R, j));
        if (co.value.evaluate(pt) != q[j])
            throw MathError("group element verification failed on " + R->names[j] +
                            " (not a single-orbit fiber?)");
    }
    return t;
}

ThetaWindow theta_window(const std::vector<int>& W) {
    if (W.empty()) throw MathError("theta window needs a nonempty weight list");
    ThetaWindow win;
    win.max_w = *std::max_element(W.begin(), W.end());
    win.single_weight = true;
    for (int w : W)
        if (w < win.max_w) {
            win.second_w = win.single_weight ? w : std::max(win.second_w, w);
            win.single_weight = false;
        }
    if (!win.single_weight) win.theta = -Rational(win.max_w + win.second_w) / 2;
    return win;
}

bool theta_semistable(const ThetaWindow& win, const std::vector<int>& weights,
                      const std::vector<Rational>& coords) {
    if (win.single_weight) return false;
    if (weights.size() != coords.size())
        throw std::invalid_argument("one weight per coordinate required");
    bool max_nonzero = false, lower_nonzero = false;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (coords[i] == 0) continue;
        if (weights[i] == win.max_w)
            max_nonzero = true;
        else
            lower_nonzero = true;
    }
    return max_nonzero && lower_nonzero;
}

namespace {

/// Basis of { c : c M = 0 } for the row-space matrix m (rows = vectors).
std::vector<std::vector<Rational>> left_nullspace(const std::vector<std::vector<Rational>>& m) {
    std::size_t n = m.size();
    std::size_t cols = n ? m[0].size() : 0;
    // row-reduce [M | I] to read off vanishing row combinations
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(cols + n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = m[i][j];
        a[i][cols + i] = 1;
    }
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < n; ++col) {
        std::size_t pivot = row;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) continue;
        std::swap(a[row], a[pivot]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || a[i][col] == 0) continue;
            Rational f = a[i][col] / a[row][col];
            for (std::size_t j = 0; j < cols + n; ++j) a[i][j] -= f * a[row][j];
        }
        ++row;
    }
    std::vector<std::vector<Rational>> out;
    for (std::size_t i = row; i < n; ++i)
        out.push_back(std::vector<Rational>(a[i].begin() + cols, a[i].end()));
    return out;
}

} // namespace

std::vector<std::pair<int, Polynomial>> invariant_sections(const DerivationSet& coneD, int m) {
    const GradedAlgebra& S = coneD.algebra();
    // weights present among degree-m monomials
    std::map<int, char> wset;
    {
        Monomial cur(S.ring()->size(), 0);
        auto rec = [&](auto&& self, std::size_t var, int deg) -> void {
            if (var + 1 == S.ring()->size()) {
                cur[var] = deg;
                wset[S.weight_of(cur)] = 1;
                cur[var] = 0;
                return;
            }
            for (int e = deg; e >= 0; --e) {
                cur[var] = e;
                self(self, var + 1, deg - e);
            }
        };
        if (S.ring()->size() > 0) rec(rec, 0, m);
    }

    std::vector<std::pair<int, Polynomial>> out;
    for (auto it = wset.rbegin(); it != wset.rend(); ++it) {
        int w = it->first;
        std::vector<Polynomial> basis = graded_piece_basis(S, m, w);
        if (basis.empty()) continue;
        // kernel of b -> (xi_i . b)_i on this piece
        std::map<std::pair<std::size_t, Monomial>, std::size_t> colindex;
        std::vector<std::vector<std::pair<std::pair<std::size_t, Monomial>, Rational>>> sparse;
        for (const Polynomial& b : basis) {
            sparse.push_back({});
            for (std::size_t i = 0; i < coneD.r(); ++i) {
                Polynomial img = coneD.apply(i, b);
                for (const auto& [mo, c] : img.terms()) {
                    colindex.emplace(std::make_pair(i, mo), colindex.size());
                    sparse.back().push_back({{i, mo}, c});
                }
            }
        }
        std::vector<std::vector<Rational>> dense(basis.size(),
                                                 std::vector<Rational>(colindex.size(), 0));
        for (std::size_t b = 0; b < sparse.size(); ++b)
            for (const auto& [key, c] : sparse[b]) dense[b][colindex.at(key)] = c;
        for (const auto& combo : left_nullspace(dense)) {
            Polynomial section = Polynomial::zero(S.ring());
            for (std::size_t b = 0; b < basis.size(); ++b)
                if (combo[b] != 0) section += basis[b] * combo[b];
            out.push_back({w, std::move(section)});
        }
    }
    return out;
}

std::vector<int> invariant_section_weights(const DerivationSet& coneD, int m) {
    std::vector<int> out;
    for (const auto& [w, s] : invariant_sections(coneD, m)) out.push_back(w);
    return out;
}

TransitionData glue_transitions(const GradedAlgebra& cone,
                                const std::vector<ChartAction>& charts,
                                const std::vector<std::optional<SliceData>>& slices,
                                const std::vector<std::optional<InvariantPresentation>>& invs) {
    const RingPtr& R = cone.ring();
    std::vector<int> up(R->size());
    for (std::size_t i = 0; i < R->size(); ++i) up[i] = static_cast<int>(i);

    TransitionData out;
    std::size_t n = charts.size();

    auto overlap_empty = [&](const std::vector<std::size_t>& idxs) {
        // R + one inverse variable per chart in idxs
        std::vector<Polynomial> gens;
        std::vector<std::string> names = R->names;
        for (std::size_t t = 0; t < idxs.size(); ++t) {
            std::string nm = "zz" + std::to_string(t);
            while (std::find(names.begin(), names.end(), nm) != names.end()) nm += "_";
            names.push_back(nm);
        }
        RingPtr comb = make_ring(names);
        std::vector<int> cup(R->size());
        for (std::size_t i = 0; i < R->size(); ++i) cup[i] = static_cast<int>(i);
        for (const Polynomial& g : cone.relations().gens()) gens.push_back(g.map_to(comb, cup));
        for (std::size_t t = 0; t < idxs.size(); ++t)
            gens.push_back(Polynomial::variable(comb, R->size() + t) *
                               charts[idxs[t]].chart.f.map_to(comb, cup) -
                           Polynomial::constant(comb, 1));
        return Ideal(comb, std::move(gens)).is_whole_ring();
    };

    // map an element of chart t's invariant ring into the localized cone ring
    // comb (with z-variable position zpos for chart t)
    auto inv_value = [&](std::size_t t, const Polynomial& g, const RingPtr& comb,
                         std::size_t zpos) {
        const Chart& ch = charts[t].chart;
        std::vector<int> lmap(ch.loc_ring->size(), -1);
        for (std::size_t i = 0; i < R->size(); ++i) lmap[i] = static_cast<int>(i);
        lmap[R->size()] = static_cast<int>(zpos);
        // chart affine variable -> loc image -> comb
        std::vector<Polynomial> affine_to_comb;
        for (const Polynomial& img : ch.affine_images)
            affine_to_comb.push_back(img.map_to(comb, lmap));
        // invariant generator -> chart affine element -> comb
        std::vector<Polynomial> gen_to_comb;
        for (const Polynomial& gen : invs[t]->generators)
            gen_to_comb.push_back(gen.substitute(comb, affine_to_comb));
        return g.substitute(comb, gen_to_comb);
    };

    std::vector<std::vector<std::optional<Polynomial>>> gtable(
        n, std::vector<std::optional<Polynomial>>(n));

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || !slices[i] || !invs[i]) continue;
            if (overlap_empty({i, j})) {
                ++out.skipped_pairs;
                continue;
            }
            const Chart& ci = charts[i].chart;
            Polynomial fjz = charts[j].chart.f.map_to(ci.loc_ring, up) *
                             Polynomial::variable(ci.loc_ring, R->size());
            auto tfj = ci.express_in_affine(ci.loc_relations.normal_form(fjz));
            if (!tfj) throw MathError("f_j/f_i is not regular on chart " + ci.f.str());
            Polynomial proj = dixmier_project(*slices[i], *tfj);
            auto g = express_in_subring(proj, invs[i]->names, invs[i]->generators,
                                        charts[i].action.algebra().relations());
            if (!g)
                throw MathError("transition f_j/f_i is not expressible in invariants on chart " +
                                ci.f.str());
            gtable[j][i] = *g;
            out.entries.push_back(
                TransitionEntry{static_cast<int>(j), static_cast<int>(i), *g});
        }

    // cocycle on triples: g_ij g_jl g_li = 1 in the triple localization
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t l = j + 1; l < n; ++l) {
                if (!gtable[i][j] || !gtable[j][l] || !gtable[l][i]) continue;
                if (overlap_empty({i, j, l})) continue;
                std::vector<std::string> names = R->names;
                for (int t = 0; t < 3; ++t) {
                    std::string nm = "zz" + std::to_string(t);
                    while (std::find(names.begin(), names.end(), nm) != names.end()) nm += "_";
                    names.push_back(nm);
                }
                RingPtr comb = make_ring(names);
                std::vector<int> cup(R->size());
                for (std::size_t v = 0; v < R->size(); ++v) cup[v] = static_cast<int>(v);
                std::vector<Polynomial> gens;
                for (const Polynomial& g : cone.relations().gens())
                    gens.push_back(g.map_to(comb, cup));
                std::array<std::size_t, 3> idx = {i, j, l};
                for (int t = 0; t < 3; ++t)
                    gens.push_back(Polynomial::variable(comb, R->size() + t) *
                                       charts[idx[t]].chart.f.map_to(comb, cup) -
                                   Polynomial::constant(comb, 1));
                Ideal triple(comb, std::move(gens));

                Polynomial prod = inv_value(j, *gtable[i][j], comb, R->size() + 1) *
                                  inv_value(l, *gtable[j][l], comb, R->size() + 2) *
                                  inv_value(i, *gtable[l][i], comb, R->size() + 0);
                if (!triple.normal_form(prod - Polynomial::constant(comb, 1)).is_zero()) {
                    out.cocycle_verified = false;
                    throw MathError("cocycle failure on charts (" + charts[i].chart.f.str() +
                                    ", " + charts[j].chart.f.str() + ", " +
                                    charts[l].chart.f.str() + ")");
                }
            }
    return out;
}

} // namespace nrgit
