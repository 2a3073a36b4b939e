#include "nrgit/groebner.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <thread>

namespace nrgit {

long& default_step_budget() {
    static long budget = 1000000;
    return budget;
}

namespace {

struct Budget {
    long remaining;
    long used = 0;
    void spend() {
        if (remaining <= 0) throw ResourceLimitError(used);
        --remaining;
        ++used;
    }
};

} // namespace

DivisionResult divide(const Polynomial& f, const std::vector<Polynomial>& divisors,
                      const MonomialOrder& ord, long* budget) {
    DivisionResult out;
    out.remainder = Polynomial::zero(f.ring());
    out.quotients.assign(divisors.size(), Polynomial::zero(f.ring()));
    Polynomial work = f;
    while (!work.is_zero()) {
        const Monomial& lm = work.leading_monomial(ord);
        const Rational& lc = work.leading_coefficient(ord);
        bool reduced = false;
        for (std::size_t i = 0; i < divisors.size(); ++i) {
            const Polynomial& d = divisors[i];
            if (d.is_zero()) continue;
            const Monomial& dlm = d.leading_monomial(ord);
            if (!mono_divides(dlm, lm)) continue;
            if (budget) {
                if (*budget <= 0) throw ResourceLimitError(0);
                --*budget;
            }
            Rational c = lc / d.leading_coefficient(ord);
            Polynomial t = Polynomial::monomial(f.ring(), mono_div(lm, dlm), c);
            out.quotients[i] += t;
            work -= t * d;
            reduced = true;
            break;
        }
        if (!reduced) {
            Monomial m = lm;
            Rational c = lc;
            out.remainder.add_term(m, c);
            // strip the leading term and continue on the tail
            Polynomial t = Polynomial::monomial(f.ring(), m, c);
            work -= t;
        }
    }
    return out;
}

Polynomial normal_form_against(const Polynomial& f, const std::vector<Polynomial>& divisors,
                               const MonomialOrder& ord, long* budget) {
    return divide(f, divisors, ord, budget).remainder;
}

namespace {

struct TrackedPoly {
    Polynomial p;
    std::vector<Polynomial> rep; // over original generators
    int sugar = 0;
};

/// Division that also folds the divisors' representations into the
/// remainder's representation.
TrackedPoly reduce_tracked(TrackedPoly f, const std::vector<TrackedPoly>& G,
                           const MonomialOrder& ord, Budget& budget) {
    Polynomial work = f.p;
    Polynomial rem = Polynomial::zero(f.p.ring());
    while (!work.is_zero()) {
        const Monomial& lm = work.leading_monomial(ord);
        const Rational& lc = work.leading_coefficient(ord);
        bool reduced = false;
        for (const TrackedPoly& g : G) {
            if (g.p.is_zero()) continue;
            const Monomial& glm = g.p.leading_monomial(ord);
            if (!mono_divides(glm, lm)) continue;
            budget.spend();
            Rational c = lc / g.p.leading_coefficient(ord);
            Polynomial t = Polynomial::monomial(work.ring(), mono_div(lm, glm), c);
            work -= t * g.p;
            for (std::size_t j = 0; j < f.rep.size(); ++j)
                if (!g.rep[j].is_zero()) f.rep[j] -= t * g.rep[j];
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.add_term(lm, lc);
            work -= Polynomial::monomial(work.ring(), lm, lc);
        }
    }
    f.p = rem;
    return f;
}

struct Pair {
    std::size_t i, j;
    Monomial lcm;
    int sugar;
};

TrackedPoly s_poly(const TrackedPoly& a, const TrackedPoly& b, const Monomial& lcm,
                   const MonomialOrder& ord, int sugar) {
    const RingPtr& ring = a.p.ring();
    Polynomial ta = Polynomial::monomial(ring, mono_div(lcm, a.p.leading_monomial(ord)),
                                         Rational(1) / a.p.leading_coefficient(ord));
    Polynomial tb = Polynomial::monomial(ring, mono_div(lcm, b.p.leading_monomial(ord)),
                                         Rational(1) / b.p.leading_coefficient(ord));
    TrackedPoly s;
    s.p = ta * a.p - tb * b.p;
    s.rep.reserve(a.rep.size());
    for (std::size_t k = 0; k < a.rep.size(); ++k) s.rep.push_back(ta * a.rep[k] - tb * b.rep[k]);
    s.sugar = sugar;
    return s;
}

} // namespace

GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& ord,
                         const GroebnerOptions& opts) {
    Budget budget{opts.effective_budget()};
    RingPtr ring;
    for (const Polynomial& g : gens)
        if (g.ring()) ring = g.ring();
    GroebnerBasis out;
    out.order = ord;
    if (!ring) return out; // no generators at all

    std::vector<TrackedPoly> G;
    for (std::size_t j = 0; j < gens.size(); ++j) {
        if (gens[j].is_zero()) continue;
        TrackedPoly t;
        t.p = gens[j];
        t.rep.assign(gens.size(), Polynomial::zero(ring));
        t.rep[j] = Polynomial::constant(ring, 1);
        t.sugar = gens[j].total_degree();
        G.push_back(std::move(t));
    }

    auto make_pair = [&](std::size_t i, std::size_t j) -> std::optional<Pair> {
        const Monomial& a = G[i].p.leading_monomial(ord);
        const Monomial& b = G[j].p.leading_monomial(ord);
        if (mono_coprime(a, b)) return std::nullopt; // Buchberger's first criterion
        Pair p;
        p.i = i;
        p.j = j;
        p.lcm = mono_lcm(a, b);
        p.sugar = std::max(G[i].sugar + total_degree(mono_div(p.lcm, a)),
                           G[j].sugar + total_degree(mono_div(p.lcm, b)));
        return p;
    };

    auto pair_less = [&](const Pair& a, const Pair& b) {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        if (a.lcm != b.lcm) return ord.less(a.lcm, b.lcm);
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };

    std::vector<Pair> queue;
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = i + 1; j < G.size(); ++j)
            if (auto p = make_pair(i, j)) queue.push_back(std::move(*p));

    auto append_poly = [&](TrackedPoly t) {
        // normalize to monic so intermediate bases are stable
        Rational inv = Rational(1) / t.p.leading_coefficient(ord);
        t.p = t.p * inv;
        for (Polynomial& r : t.rep) r = r * inv;
        G.push_back(std::move(t));
        std::size_t n = G.size() - 1;
        for (std::size_t i = 0; i < n; ++i)
            if (auto p = make_pair(i, n)) queue.push_back(std::move(*p));
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    while (!queue.empty()) {
        std::sort(queue.begin(), queue.end(), pair_less);
        if (!opts.parallel) {
            Pair p = queue.front();
            queue.erase(queue.begin());
            TrackedPoly s = s_poly(G[p.i], G[p.j], p.lcm, ord, p.sugar);
            TrackedPoly r = reduce_tracked(std::move(s), G, ord, budget);
            if (!r.p.is_zero()) append_poly(std::move(r));
        } else {
            // take a batch of minimal-sugar pairs, reduce them concurrently
            // against the current (frozen) basis, then fold results back in
            // canonical order with a final re-reduction pass each.
            std::size_t batch = 1;
            while (batch < queue.size() && batch < hw &&
                   queue[batch].sugar == queue[0].sugar)
                ++batch;
            std::vector<Pair> taken(queue.begin(), queue.begin() + batch);
            queue.erase(queue.begin(), queue.begin() + batch);
            long share = budget.remaining / static_cast<long>(taken.size()) + 1;
            std::vector<std::future<TrackedPoly>> futs;
            for (const Pair& p : taken)
                futs.push_back(std::async(std::launch::async, [&, p]() {
                    Budget local{share};
                    TrackedPoly s = s_poly(G[p.i], G[p.j], p.lcm, ord, p.sugar);
                    return reduce_tracked(std::move(s), G, ord, local);
                }));
            for (auto& f : futs) {
                TrackedPoly r = f.get();
                // re-reduce against any basis elements added within the batch
                r = reduce_tracked(std::move(r), G, ord, budget);
                if (!r.p.is_zero()) append_poly(std::move(r));
            }
        }
    }

    // minimalize: drop elements whose leading monomial is divisible by another's
    std::vector<char> keep(G.size(), 1);
    for (std::size_t i = 0; i < G.size(); ++i) {
        if (!keep[i]) continue;
        for (std::size_t j = 0; j < G.size(); ++j) {
            if (i == j || !keep[j]) continue;
            const Monomial& a = G[j].p.leading_monomial(ord);
            const Monomial& b = G[i].p.leading_monomial(ord);
            if (mono_divides(a, b) && !(a == b && j > i)) {
                keep[i] = 0;
                break;
            }
        }
    }
    std::vector<TrackedPoly> minimal;
    for (std::size_t i = 0; i < G.size(); ++i)
        if (keep[i]) minimal.push_back(std::move(G[i]));

    // tail-reduce each element against the others
    std::vector<TrackedPoly> reduced = minimal;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<TrackedPoly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        reduced[i] = reduce_tracked(minimal[i], others, ord, budget);
        Rational inv = Rational(1) / reduced[i].p.leading_coefficient(ord);
        reduced[i].p = reduced[i].p * inv;
        for (Polynomial& r : reduced[i].rep) r = r * inv;
    }

    std::sort(reduced.begin(), reduced.end(), [&](const TrackedPoly& a, const TrackedPoly& b) {
        return ord.less(a.p.leading_monomial(ord), b.p.leading_monomial(ord));
    });

    for (TrackedPoly& t : reduced) {
        out.basis.push_back(std::move(t.p));
        if (t.rep.size() != gens.size()) t.rep.resize(gens.size(), Polynomial::zero(ring));
        out.reps.push_back(std::move(t.rep));
    }
    return out;
}

} // namespace nrgit
