#include "nrgit/derivation.hpp"

#include <algorithm>

namespace nrgit {

namespace {

std::string fresh_name(const RingPtr& ring, std::string base) {
    while (ring->index_of(base) >= 0) base += "_";
    return base;
}

Polynomial leibniz(const std::vector<Polynomial>& images, const Polynomial& f) {
    Polynomial out = Polynomial::zero(f.ring());
    for (std::size_t j = 0; j < images.size(); ++j) {
        if (images[j].is_zero()) continue;
        out += f.derivative(j) * images[j];
    }
    return out;
}

Polynomial det(const std::vector<std::vector<Polynomial>>& m, const RingPtr& ring) {
    std::size_t n = m.size();
    if (n == 0) return Polynomial::constant(ring, 1);
    if (n == 1) return m[0][0];
    Polynomial out = Polynomial::zero(ring);
    // expand along the first row
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
    rec(rec, 0, 0);
}

int rational_rank(std::vector<std::vector<Rational>> m) {
    int rank = 0;
    std::size_t rows = m.size();
    std::size_t cols = rows ? m[0].size() : 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pivot = row;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[row], m[pivot]);
        for (std::size_t i = row + 1; i < rows; ++i) {
            if (m[i][col] == 0) continue;
            Rational factor = m[i][col] / m[row][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= factor * m[row][j];
        }
        ++row;
        ++rank;
    }
    return rank;
}

} // namespace

DerivationSet::DerivationSet(GradedAlgebra algebra, int w,
                             std::vector<std::vector<Polynomial>> images)
    : algebra_(std::move(algebra)), w_(w), images_(std::move(images)) {
    if (w_ <= 0) throw std::invalid_argument("derivation weight must be positive");
    const RingPtr& R = algebra_.ring();
    for (const auto& row : images_)
        if (row.size() != R->size())
            throw std::invalid_argument("one derivation image per ring variable required");

    for (std::size_t i = 0; i < images_.size(); ++i)
        for (std::size_t j = 0; j < R->size(); ++j) {
            const Polynomial& img = images_[i][j];
            if (img.is_zero()) continue;
            auto hw = algebra_.homogeneous_weight(img);
            if (!hw || *hw != algebra_.weights()[j] + w_)
                throw std::invalid_argument(
                    "derivation image not weight-homogeneous of weight(var)+w: xi_" +
                    std::to_string(i + 1) + "." + R->names[j] + " = " + img.str());
            if (algebra_.mode() == Mode::ProjectiveCone)
                for (const auto& [m, c] : img.terms())
                    if (total_degree(m) != 1)
                        throw std::invalid_argument(
                            "cone-mode derivation image must have projective degree 1: " +
                            img.str());
        }

    for (std::size_t i = 0; i < images_.size(); ++i)
        for (const Polynomial& g : algebra_.relations().gens())
            if (!algebra_.relations().normal_form(apply_raw(i, g)).is_zero())
                throw std::invalid_argument("derivation " + std::to_string(i + 1) +
                                            " does not preserve relation " + g.str());

    for (std::size_t i = 0; i < images_.size(); ++i)
        for (std::size_t j = i + 1; j < images_.size(); ++j)
            for (std::size_t v = 0; v < R->size(); ++v) {
                Polynomial lhs = apply_raw(i, images_[j][v]) - apply_raw(j, images_[i][v]);
                if (!algebra_.relations().normal_form(lhs).is_zero())
                    throw std::invalid_argument("derivations " + std::to_string(i + 1) +
                                                " and " + std::to_string(j + 1) +
                                                " do not commute on " + R->names[v]);
            }

    // local nilpotence, forced by homogeneity; bound from the weight ladder
    int max_w = 0;
    for (int wv : algebra_.weights()) max_w = std::max(max_w, wv);
    for (std::size_t i = 0; i < images_.size(); ++i)
        for (std::size_t j = 0; j < R->size(); ++j) {
            int steps = (max_w - algebra_.weights()[j]) / w_ + 2;
            Polynomial g = Polynomial::variable(R, j);
            for (int n = 0; n < steps && !g.is_zero(); ++n) g = apply(i, g);
            if (!g.is_zero())
                throw std::invalid_argument("derivation " + std::to_string(i + 1) +
                                            " is not locally nilpotent on " + R->names[j]);
        }
}

Polynomial DerivationSet::apply_raw(std::size_t i, const Polynomial& f) const {
    return leibniz(images_[i], f);
}

Polynomial DerivationSet::apply(std::size_t i, const Polynomial& f) const {
    return algebra_.relations().normal_form(apply_raw(i, f));
}

CoactionResult coaction(const DerivationSet& D, const Polynomial& f) {
    const RingPtr& R = D.algebra().ring();
    std::vector<std::string> unames;
    for (std::size_t i = 0; i < D.r(); ++i)
        unames.push_back(fresh_name(R, "u" + std::to_string(i + 1)));
    RingPtr ext = extend_ring(R, unames);
    std::vector<int> up(R->size());
    for (std::size_t i = 0; i < R->size(); ++i) up[i] = static_cast<int>(i);

    std::vector<std::vector<Polynomial>> ext_images(D.r());
    for (std::size_t i = 0; i < D.r(); ++i) {
        for (std::size_t j = 0; j < R->size(); ++j)
            ext_images[i].push_back(D.image(i, j).map_to(ext, up));
        for (std::size_t u = 0; u < D.r(); ++u) ext_images[i].push_back(Polynomial::zero(ext));
    }

    Polynomial val = f.map_to(ext, up);
    for (std::size_t i = 0; i < D.r(); ++i) {
        Polynomial u = Polynomial::variable(ext, R->size() + i);
        Polynomial acc = Polynomial::zero(ext);
        Polynomial g = val;
        Polynomial upow = Polynomial::constant(ext, 1);
        Rational fact = 1;
        for (int n = 0; !g.is_zero(); ++n) {
            if (n > 1000) throw MathError("coaction did not terminate (nilpotence bug)");
            acc += upow * g * (Rational(1) / fact);
            g = leibniz(ext_images[i], g);
            upow = upow * u;
            fact *= Rational(n + 1);
        }
        val = acc;
    }
    return {ext, R->size(), val};
}

ActionMatrix action_matrix(const DerivationSet& D) {
    ActionMatrix M;
    for (std::size_t i = 0; i < D.r(); ++i) {
        std::vector<Polynomial> row;
        for (std::size_t j = 0; j < D.algebra().ring()->size(); ++j)
            row.push_back(D.algebra().relations().normal_form(D.image(i, j)));
        M.entries.push_back(std::move(row));
    }
    return M;
}

Ideal fitting_ideal(const DerivationSet& D, const ActionMatrix& M, int k) {
    const RingPtr& R = D.algebra().ring();
    int r = static_cast<int>(D.r());
    if (k >= r) return Ideal(R, {Polynomial::constant(R, 1)});
    if (k < 0) return Ideal(R, {});
    std::size_t s = static_cast<std::size_t>(r - k);
    std::size_t cols = R->size();
    if (s > cols) return Ideal(R, {});

    std::vector<std::vector<std::size_t>> row_sets, col_sets;
    combinations(static_cast<std::size_t>(r), s, row_sets);
    combinations(cols, s, col_sets);
    std::vector<Polynomial> gens;
    for (const auto& rows : row_sets)
        for (const auto& colsel : col_sets) {
            std::vector<std::vector<Polynomial>> sub;
            for (std::size_t i : rows) {
                std::vector<Polynomial> row;
                for (std::size_t j : colsel) row.push_back(M.entries[i][j]);
                sub.push_back(std::move(row));
            }
            Polynomial minor = D.algebra().relations().normal_form(det(sub, R));
            if (!minor.is_zero() &&
                std::find(gens.begin(), gens.end(), minor) == gens.end())
                gens.push_back(minor);
        }
    return Ideal(R, std::move(gens));
}

const Ideal& FittingLadder::fit(int k) const {
    int i = std::clamp(k + 1, 0, static_cast<int>(fits.size()) - 1);
    return fits[static_cast<std::size_t>(i)];
}

FittingLadder fitting_ladder(const DerivationSet& D, const ActionMatrix& M) {
    FittingLadder L;
    for (int k = -1; k <= static_cast<int>(D.r()) + 1; ++k)
        L.fits.push_back(fitting_ideal(D, M, k));
    return L;
}

int stab_dim_at_point(const DerivationSet& D, const ActionMatrix& M,
                      const std::vector<Rational>& point) {
    for (const Polynomial& g : D.algebra().relations().gens())
        if (g.evaluate(point) != 0)
            throw MathError("point fails relation " + g.str());
    std::vector<std::vector<Rational>> m;
    for (const auto& row : M.entries) {
        std::vector<Rational> vals;
        for (const Polynomial& e : row) vals.push_back(e.evaluate(point));
        m.push_back(std::move(vals));
    }
    return static_cast<int>(D.r()) - rational_rank(std::move(m));
}

UUResult check_UU(const DerivationSet& D) {
    if (D.algebra().mode() != Mode::Affine)
        throw MathError("check_UU runs on affine charts; transport the cone action first");
    ActionMatrix M = action_matrix(D);
    FittingLadder L = fitting_ladder(D, M);
    UUResult out;
    int r = static_cast<int>(D.r());
    int k = r;
    for (int i = 0; i <= r; ++i)
        if (!L.fit(i).gens().empty()) {
            k = i;
            break;
        }
    out.k = k;
    Ideal test = ideal_sum(D.algebra().relations(), L.fit(k));
    out.holds = test.is_whole_ring();
    if (!out.holds)
        for (const Polynomial& g : test.groebner().basis) out.witness.push_back(g.str());
    return out;
}

ChartAction restrict_to_chart(const DerivationSet& coneD, const Chart& chart) {
    const RingPtr& R = coneD.algebra().ring();
    const RingPtr& loc = chart.loc_ring;
    std::vector<int> up(R->size());
    for (std::size_t i = 0; i < R->size(); ++i) up[i] = static_cast<int>(i);
    Polynomial z = Polynomial::variable(loc, R->size());

    std::vector<std::vector<Polynomial>> loc_images(coneD.r());
    for (std::size_t i = 0; i < coneD.r(); ++i) {
        for (std::size_t j = 0; j < R->size(); ++j)
            loc_images[i].push_back(coneD.image(i, j).map_to(loc, up));
        // xi(z) = -z^2 xi(f)
        Polynomial xif = coneD.apply_raw(i, chart.f).map_to(loc, up);
        loc_images[i].push_back(-(z * z) * xif);
    }

    std::vector<std::vector<Polynomial>> affine_images(coneD.r());
    for (std::size_t i = 0; i < coneD.r(); ++i)
        for (const Polynomial& img : chart.affine_images) {
            Polynomial xi_img = chart.loc_relations.normal_form(leibniz(loc_images[i], img));
            auto expr = chart.express_in_affine(xi_img);
            if (!expr)
                throw MathError("chart transport failed: " + xi_img.str() +
                                " is not a degree-0 chart element");
            affine_images[i].push_back(chart.affine.relations().normal_form(*expr));
        }
    return ChartAction{chart, DerivationSet(chart.affine, coneD.w(), std::move(affine_images))};
}

ChartAction affine_as_chart(const DerivationSet& D) {
    const GradedAlgebra& A = D.algebra();
    const RingPtr& R = A.ring();
    RingPtr loc = extend_ring(R, {fresh_name(R, "z")});
    std::vector<int> up(R->size());
    for (std::size_t i = 0; i < R->size(); ++i) up[i] = static_cast<int>(i);
    std::vector<int> loc_weights = A.weights();
    loc_weights.push_back(0);
    std::vector<Polynomial> lgens;
    for (const Polynomial& g : A.relations().gens()) lgens.push_back(g.map_to(loc, up));
    lgens.push_back(Polynomial::variable(loc, R->size()) - Polynomial::constant(loc, 1));
    Ideal loc_relations(loc, std::move(lgens));
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < R->size(); ++i)
        images.push_back(Polynomial::variable(loc, i));
    Chart chart{Polynomial::constant(R, 1), 0,        std::move(loc),
                std::move(loc_weights),     std::move(loc_relations),
                A,                          std::move(images)};
    return ChartAction{std::move(chart), D};
}

std::vector<WUUCandidate> candidate_a_elements(const DerivationSet& chartD, int k,
                                               int pool_degree) {
    const GradedAlgebra& A = chartD.algebra();
    const RingPtr& R = A.ring();
    int r = static_cast<int>(chartD.r());
    std::size_t s = static_cast<std::size_t>(r - k);
    if (s == 0) return {WUUCandidate{Polynomial::constant(R, 1), {}, {}}};

    // weight-(-w) monomial pool in the chart variables
    std::vector<Monomial> pool_monos;
    for (int d = 1; d <= pool_degree; ++d) {
        // enumerate degree-d monomials
        std::vector<Monomial> all;
        Monomial cur(R->size(), 0);
        auto rec = [&](auto&& self, std::size_t var, int deg) -> void {
            if (var + 1 == R->size()) {
                cur[var] = deg;
                all.push_back(cur);
                cur[var] = 0;
                return;
            }
            for (int e = deg; e >= 0; --e) {
                cur[var] = e;
                self(self, var + 1, deg - e);
            }
        };
        if (R->size() > 0) rec(rec, 0, d);
        for (const Monomial& m : all)
            if (A.weight_of(m) == -chartD.w()) pool_monos.push_back(m);
    }
    std::sort(pool_monos.begin(), pool_monos.end(),
              [](const Monomial& a, const Monomial& b) {
                  return MonomialOrder::lex().less(b, a);
              });
    std::vector<Polynomial> pool;
    for (const Monomial& m : pool_monos) {
        Polynomial p = Polynomial::monomial(R, m, 1);
        if (!A.relations().normal_form(p).is_zero()) pool.push_back(p);
    }
    if (pool.size() < s) return {};

    std::vector<std::vector<std::size_t>> row_sets, col_sets;
    combinations(static_cast<std::size_t>(r), s, row_sets);
    combinations(pool.size(), s, col_sets);

    std::vector<WUUCandidate> out;
    for (const auto& rows : row_sets)
        for (const auto& cols : col_sets) {
            std::vector<std::vector<Polynomial>> m;
            for (std::size_t i : rows) {
                std::vector<Polynomial> row;
                for (std::size_t c : cols) row.push_back(chartD.apply(i, pool[c]));
                m.push_back(std::move(row));
            }
            Polynomial a = A.relations().normal_form(det(m, R));
            if (a.is_zero()) continue;
            if (radical_membership(a, A.relations())) continue; // nilpotent
            std::vector<Polynomial> gs;
            for (std::size_t c : cols) gs.push_back(pool[c]);
            out.push_back(WUUCandidate{std::move(a), rows, std::move(gs)});
        }
    return out;
}

WUUResult check_WUU(const X0MinResult& x0, const std::vector<ChartAction>& charts,
                    int pool_degree) {
    if (!x0.nonempty || charts.empty())
        throw MathError("check_WUU requires non-emptiness of X0_min");

    struct PerChart {
        ActionMatrix M;
        FittingLadder L;
        int k;
    };
    std::vector<PerChart> per;
    int k = charts.empty() ? 0 : static_cast<int>(charts[0].action.r());
    for (const ChartAction& ca : charts) {
        ActionMatrix M = action_matrix(ca.action);
        FittingLadder L = fitting_ladder(ca.action, M);
        int kc = static_cast<int>(ca.action.r());
        for (int i = 0; i <= kc; ++i)
            if (!L.fit(i).gens().empty()) {
                kc = i;
                break;
            }
        k = std::min(k, kc);
        per.push_back(PerChart{std::move(M), std::move(L), kc});
    }

    WUUResult out;
    out.k = k;

    // definite failure: Fit_k nilpotent (or zero) on every chart
    bool all_nilpotent = true;
    std::string nilpotent_witness;
    for (std::size_t c = 0; c < charts.size(); ++c)
        for (const Polynomial& g : per[c].L.fit(k).gens())
            if (!radical_membership(g, charts[c].action.algebra().relations())) {
                all_nilpotent = false;
            } else if (nilpotent_witness.empty()) {
                nilpotent_witness = g.str();
            }

    for (std::size_t c = 0; c < charts.size(); ++c) {
        if (per[c].k != k) continue;
        const Ideal& rel = charts[c].action.algebra().relations();
        if (ideal_sum(rel, per[c].L.fit(k)).is_whole_ring()) {
            out.status = WUUStatus::Holds;
            out.chart_index = static_cast<int>(c);
            out.a = WUUCandidate{Polynomial::constant(rel.ring(), 1), {}, {}};
            out.message = "Fit_k is the unit ideal on chart " + charts[c].chart.f.str();
            return out;
        }
        for (WUUCandidate& cand : candidate_a_elements(charts[c].action, k, pool_degree)) {
            Ideal sat = saturation(rel, cand.a).first;
            bool ok = true;
            for (const Polynomial& g : per[c].L.fit(k - 1).gens())
                if (!sat.contains(g)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            out.status = WUUStatus::Holds;
            out.chart_index = static_cast<int>(c);
            out.message = "witness a = " + cand.a.str() + " on chart " +
                          charts[c].chart.f.str();
            out.a = std::move(cand);
            return out;
        }
    }

    if (all_nilpotent) {
        out.status = WUUStatus::Fails;
        out.message = nilpotent_witness.empty()
                          ? "Fit_k vanishes identically on every chart"
                          : "every Fit_k generator is nilpotent; witness " + nilpotent_witness;
    } else {
        out.status = WUUStatus::Inconclusive;
        out.message = "no witness determinant found up to pool degree " +
                      std::to_string(pool_degree) + "; retry with a larger --pool-degree";
    }
    return out;
}

} // namespace nrgit
