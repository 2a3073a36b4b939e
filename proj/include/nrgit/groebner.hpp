#pragma once

#include "nrgit/polynomial.hpp"

#include <vector>

namespace nrgit {

/// Global reduction-step budget default; CLI overrides it.
long& default_step_budget();

struct GroebnerOptions {
    long step_budget = 0; // 0 means use default_step_budget()
    bool parallel = false;

    long effective_budget() const { return step_budget > 0 ? step_budget : default_step_budget(); }
};

/// Raised when the reduction-step budget is exhausted; carries the
/// partial-progress count. Never a wrong answer.
struct ResourceLimitError : std::runtime_error {
    long steps_done;
    explicit ResourceLimitError(long steps)
        : std::runtime_error("step budget exceeded after " + std::to_string(steps) +
                             " reduction steps"),
          steps_done(steps) {}
};

struct DivisionResult {
    Polynomial remainder;
    std::vector<Polynomial> quotients; // aligned with the divisor list
};

/// Multivariate division; tries divisors in list order (deterministic).
DivisionResult divide(const Polynomial& f, const std::vector<Polynomial>& divisors,
                      const MonomialOrder& ord, long* budget);

Polynomial normal_form_against(const Polynomial& f, const std::vector<Polynomial>& divisors,
                               const MonomialOrder& ord, long* budget);

struct GroebnerBasis {
    MonomialOrder order;
    std::vector<Polynomial> basis; // reduced: monic, pairwise irreducible, sorted
    /// basis[i] == sum_j reps[i][j] * gens[j] for the input generator list.
    std::vector<std::vector<Polynomial>> reps;
};

/// Buchberger with sugar-degree pair selection and the coprime-leading-term
/// criterion; S-pairs are processed in a canonical sorted order so the
/// output is deterministic. The parallel flag batches S-pair reductions;
/// the final reduced basis is identical either way.
GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& ord,
                         const GroebnerOptions& opts = {});

} // namespace nrgit
