#include "nrgit/pipeline.hpp"

#include "nrgit/quotient.hpp"

using nlohmann::json;

namespace nrgit {

namespace {

json ideal_strings(const Ideal& I) {
    json out = json::array();
    if (I.gens().empty()) return out;
    for (const Polynomial& g : I.groebner().basis) out.push_back(g.str());
    return out;
}

json poly_strings(const std::vector<Polynomial>& ps) {
    json out = json::array();
    for (const Polynomial& p : ps) out.push_back(p.str());
    return out;
}

struct Prepared {
    bool projective = false;
    X0MinResult x0; // synthetic nonempty single-chart view for affine input
    std::vector<ChartAction> charts;
};

Prepared prepare(const Instance& inst) {
    Prepared p;
    p.projective = inst.algebra.mode() == Mode::ProjectiveCone;
    if (!p.projective) {
        p.x0.nonempty = true;
        p.charts.push_back(affine_as_chart(inst.action));
        return p;
    }
    p.x0 = max_weight_and_x0min(inst.algebra, inst.limits.m);
    for (const Chart& ch : p.x0.charts) p.charts.push_back(restrict_to_chart(inst.action, ch));
    return p;
}

std::string chart_name(const Prepared& p, std::size_t i) {
    return p.projective ? p.x0.charts[i].f.str() : "1";
}

json uu_json(const UUResult& uu) {
    json j;
    j["holds"] = uu.holds;
    j["k"] = uu.k;
    j["witness"] = uu.witness;
    return j;
}

json wuu_json(const WUUResult& wuu) {
    json j;
    switch (wuu.status) {
        case WUUStatus::Holds: j["status"] = "holds"; break;
        case WUUStatus::Fails: j["status"] = "fails"; break;
        case WUUStatus::Inconclusive: j["status"] = "inconclusive"; break;
    }
    j["k"] = wuu.k;
    j["chart_index"] = wuu.chart_index;
    if (wuu.a) {
        j["a"] = wuu.a->a.str();
        j["a_rows"] = wuu.a->rows;
        j["a_columns"] = poly_strings(wuu.a->gs);
    }
    j["message"] = wuu.message;
    return j;
}

json common_header(const Instance& inst, const char* command) {
    json r = report_header(inst);
    r["command"] = command;
    r["mode"] = inst.algebra.mode() == Mode::Affine ? "affine" : "projective";
    if (inst.k_stable) r["k_stable_ideal"] = ideal_strings(*inst.k_stable);
    return r;
}

/// Quotient data for a single UU chart.
json chart_quotient_json(const DerivationSet& chartD, int k, unsigned seed,
                         SliceData* slices_out = nullptr,
                         InvariantPresentation* inv_out = nullptr) {
    SliceData s = find_slices(chartD, k, seed);
    InvariantPresentation inv = invariant_presentation(s);
    json j;
    j["k"] = k;
    j["slices"] = poly_strings(s.xs);
    j["uprime"] = s.uprime;
    j["s_subset"] = s.s_subset;
    json C = json::array();
    for (const auto& row : s.basis_change) {
        json r = json::array();
        for (const Rational& c : row) r.push_back(to_string(c));
        C.push_back(r);
    }
    j["basis_change"] = C;
    j["invariants"] = {{"names", inv.names},
                       {"generators", poly_strings(inv.generators)},
                       {"relations", ideal_strings(inv.relations)}};
    if (slices_out) *slices_out = s;
    if (inv_out) *inv_out = inv;
    return j;
}

json stratum_json(const Stratum& s) {
    json j;
    j["delta"] = s.delta;
    j["closed"] = ideal_strings(s.closed_ideal);
    j["removed"] = ideal_strings(s.removed_ideal);
    j["empty"] = s.empty;
    return j;
}

/// Simplest non-nilpotent candidate a on a chart where UU fails: lowest
/// total degree, then lexicographically smallest canonical string.
std::optional<WUUCandidate> pick_blowup_candidate(const DerivationSet& chartD, int k,
                                                  int pool_degree) {
    auto cands = candidate_a_elements(chartD, k, pool_degree);
    if (cands.empty()) return std::nullopt;
    const WUUCandidate* best = &cands.front();
    for (const WUUCandidate& c : cands)
        if (std::make_pair(c.a.total_degree(), c.a.str()) <
            std::make_pair(best->a.total_degree(), best->a.str()))
            best = &c;
    return *best;
}

json blowup_chart_json(const DerivationSet& chartD, int k, const Limits& limits,
                       bool with_quotient) {
    CentreData centre = centre_ideal(chartD, k);
    auto cand = pick_blowup_candidate(chartD, k, limits.pool_degree);
    if (!cand)
        throw MathError("no blow-up candidate a found; retry with a larger --pool-degree");
    BlowupChart bc = blowup_chart(chartD, centre, *cand);
    std::vector<Polynomial> bs = b_elements(chartD, centre, *cand);
    BlowupVerification v = verify_uu_upstairs(bc, chartD, centre, k);

    json j;
    j["k"] = k;
    j["I"] = ideal_strings(centre.I_f);
    j["J"] = ideal_strings(centre.J_f);
    j["a"] = cand->a.str();
    j["a_rows"] = cand->rows;
    j["a_columns"] = poly_strings(cand->gs);
    j["b_elements"] = poly_strings(bs);
    const GradedAlgebra& up = bc.lifted.algebra();
    json vars = json::array();
    for (std::size_t i = 0; i < up.ring()->size(); ++i)
        vars.push_back({{"name", up.ring()->names[i]}, {"weight", up.weights()[i]}});
    json imgs = json::array();
    for (std::size_t i = 0; i < bc.lifted.r(); ++i) {
        json row = json::array();
        for (std::size_t vv = 0; vv < up.ring()->size(); ++vv)
            row.push_back(bc.lifted.image(i, vv).str());
        imgs.push_back(row);
    }
    j["chart"] = {{"vars", vars}, {"relations", ideal_strings(up.relations())},
                  {"images", imgs}};
    j["uu_upstairs"] = {{"holds", v.holds}, {"k", v.k}, {"witness", v.witness}};
    if (!v.holds) throw MathError("UU fails on the blow-up chart (witness " + v.witness + ")");
    if (with_quotient) j["quotient"] = chart_quotient_json(bc.lifted, k, limits.seed);
    return j;
}

json pipeline_impl(const Instance& inst, int depth);

} // namespace

json check_report(const Instance& inst) {
    json r = common_header(inst, "check");
    Prepared p = prepare(inst);
    if (p.projective) {
        r["nonempty"] = p.x0.nonempty;
        r["w_max"] = p.x0.w_max;
        r["covers"] = p.x0.covers;
        r["max_weight_basis"] = poly_strings(p.x0.max_basis);
        if (!p.x0.nonempty) {
            r["ok"] = false;
            return r;
        }
    }
    json charts = json::array();
    bool uu_all = true;
    for (std::size_t i = 0; i < p.charts.size(); ++i) {
        UUResult uu = check_UU(p.charts[i].action);
        uu_all = uu_all && uu.holds;
        charts.push_back({{"f", chart_name(p, i)}, {"uu", uu_json(uu)}});
    }
    r["charts"] = charts;
    r["uu_all"] = uu_all;
    bool ok = uu_all;
    if (!uu_all) {
        WUUResult wuu = check_WUU(p.x0, p.charts, inst.limits.pool_degree);
        r["wuu"] = wuu_json(wuu);
        ok = wuu.status == WUUStatus::Holds;
    }
    r["ok"] = ok;
    return r;
}

json stratify_report(const Instance& inst) {
    json r = common_header(inst, "stratify");
    json strata = json::array();
    for (const Stratum& s : stratify(inst.action)) strata.push_back(stratum_json(s));
    r["strata"] = strata;
    r["ok"] = true;
    return r;
}

json quotient_report(const Instance& inst) {
    json r = common_header(inst, "quotient");
    Prepared p = prepare(inst);
    if (p.projective) {
        r["nonempty"] = p.x0.nonempty;
        if (!p.x0.nonempty) {
            r["ok"] = true; // the quotient of the empty locus is empty
            r["charts"] = json::array();
            return r;
        }
    }
    std::vector<std::optional<SliceData>> slices(p.charts.size());
    std::vector<std::optional<InvariantPresentation>> invs(p.charts.size());
    json charts = json::array();
    for (std::size_t i = 0; i < p.charts.size(); ++i) {
        UUResult uu = check_UU(p.charts[i].action);
        if (!uu.holds)
            throw MathError("Condition UU fails on chart " + chart_name(p, i) +
                            "; run the blowup or pipeline command");
        SliceData s = find_slices(p.charts[i].action, uu.k, inst.limits.seed);
        InvariantPresentation inv = invariant_presentation(s);
        json cj;
        cj["f"] = chart_name(p, i);
        cj["k"] = uu.k;
        cj["slices"] = poly_strings(s.xs);
        cj["uprime"] = s.uprime;
        cj["s_subset"] = s.s_subset;
        cj["invariants"] = {{"names", inv.names},
                            {"generators", poly_strings(inv.generators)},
                            {"relations", ideal_strings(inv.relations)}};
        charts.push_back(cj);
        slices[i] = std::move(s);
        invs[i] = std::move(inv);
    }

    if (p.projective) {
        auto sections = invariant_sections(inst.action, inst.limits.m);
        std::vector<int> W;
        for (const auto& [w, sec] : sections) W.push_back(w);
        r["section_weights"] = W;
        ThetaWindow win = theta_window(W);
        r["single_weight"] = win.single_weight;
        if (!win.single_weight) r["theta"] = to_string(win.theta);
        // a chart meets the semistable locus iff some lower-weight invariant
        // section survives on it
        std::vector<int> up(inst.algebra.ring()->size());
        for (std::size_t i = 0; i < up.size(); ++i) up[i] = static_cast<int>(i);
        for (std::size_t i = 0; i < p.charts.size(); ++i) {
            bool ss = false;
            if (!win.single_weight)
                for (const auto& [w, sec] : sections) {
                    if (w >= win.max_w) continue;
                    const Chart& ch = p.charts[i].chart;
                    if (!ch.loc_relations.contains(sec.map_to(ch.loc_ring, up))) {
                        ss = true;
                        break;
                    }
                }
            charts[i]["semistable"] = ss;
        }
        TransitionData trans = glue_transitions(inst.algebra, p.charts, slices, invs);
        json entries = json::array();
        for (const TransitionEntry& e : trans.entries)
            entries.push_back({{"j", e.j}, {"i", e.i}, {"g", e.g.str()}});
        r["transitions"] = {{"entries", entries},
                            {"cocycle_verified", trans.cocycle_verified},
                            {"skipped_pairs", trans.skipped_pairs}};
    }
    r["charts"] = charts;
    r["ok"] = true;
    return r;
}

json blowup_report(const Instance& inst) {
    json r = common_header(inst, "blowup");
    Prepared p = prepare(inst);
    if (p.projective && !p.x0.nonempty) {
        r["ok"] = false;
        r["nonempty"] = false;
        return r;
    }
    json charts = json::array();
    for (std::size_t i = 0; i < p.charts.size(); ++i) {
        UUResult uu = check_UU(p.charts[i].action);
        json cj;
        cj["f"] = chart_name(p, i);
        cj["uu_holds_downstairs"] = uu.holds;
        if (!uu.holds)
            cj.update(blowup_chart_json(p.charts[i].action, uu.k, inst.limits, false));
        charts.push_back(cj);
    }
    r["charts"] = charts;
    r["ok"] = true;
    return r;
}

namespace {

json pipeline_impl(const Instance& inst, int depth) {
    json r = common_header(inst, "pipeline");
    Prepared p = prepare(inst);
    if (p.projective) {
        r["nonempty"] = p.x0.nonempty;
        if (!p.x0.nonempty) {
            r["path"] = "empty";
            r["ok"] = true;
            return r;
        }
    }

    bool uu_all = true;
    json charts = json::array();
    std::vector<UUResult> uus;
    for (std::size_t i = 0; i < p.charts.size(); ++i) {
        uus.push_back(check_UU(p.charts[i].action));
        uu_all = uu_all && uus.back().holds;
        charts.push_back({{"f", chart_name(p, i)}, {"uu", uu_json(uus.back())}});
    }
    r["charts"] = charts;

    if (uu_all) {
        r["path"] = "uu-quotient";
        r["quotient"] = quotient_report(inst);
        r["ok"] = r["quotient"]["ok"];
        return r;
    }

    WUUResult wuu = check_WUU(p.x0, p.charts, inst.limits.pool_degree);
    r["wuu"] = wuu_json(wuu);
    if (wuu.status == WUUStatus::Holds) {
        // blow up each failing chart and quotient upstairs
        r["path"] = "wuu-blowup";
        json blow = json::array();
        bool ok = true;
        for (std::size_t i = 0; i < p.charts.size(); ++i) {
            json cj;
            cj["f"] = chart_name(p, i);
            cj["uu_holds_downstairs"] = uus[i].holds;
            if (uus[i].holds) {
                cj["quotient"] =
                    chart_quotient_json(p.charts[i].action, uus[i].k, inst.limits.seed);
            } else {
                cj.update(blowup_chart_json(p.charts[i].action, wuu.k, inst.limits, true));
            }
            blow.push_back(cj);
        }
        r["blowup_charts"] = blow;
        r["ok"] = ok;
        return r;
    }

    // stratify and recurse on each nonempty deeper stratum
    r["path"] = "stratify";
    auto strata = stratify(inst.action);
    json sj = json::array();
    bool ok = true;
    for (const Stratum& s : strata) {
        json one = stratum_json(s);
        if (!s.empty && s.delta > 0) {
            if (depth <= 0) {
                one["unresolved"] = "recursion depth exhausted";
                ok = false;
            } else {
                DerivationSet res = restrict_to_stratum_closure(inst.action, s.delta);
                Instance sub{inst.name + "#stratum" + std::to_string(s.delta), res.algebra(),
                             res, std::nullopt, inst.limits};
                one["pipeline"] = pipeline_impl(sub, depth - 1);
                ok = ok && one["pipeline"]["ok"].get<bool>();
            }
        } else if (!s.empty && s.delta == 0) {
            // the open stratum keeps the whole instance: nothing new to recurse on
            one["unresolved"] = "open stratum inherits the instance; " + wuu.message;
            ok = false;
        }
        sj.push_back(one);
    }
    r["strata"] = sj;
    r["ok"] = ok;
    return r;
}

} // namespace

json pipeline_report(const Instance& inst) {
    return pipeline_impl(inst, static_cast<int>(inst.action.r()) + 1);
}

int report_exit_code(const json& report) {
    return report.value("ok", false) ? 0 : 1;
}

} // namespace nrgit
