#pragma once

#include "cfp/hypothesis.hpp"
#include "cfp/instance.hpp"
#include "cfp/solver.hpp"

#include <optional>
#include <vector>

namespace cfp {

/// Every hypothesis report for one instance, plus the constants (lambda,
/// chain length n) that the solver and the decay check consume.
struct Analysis {
    CandidateSet candidates;
    HypothesisReport mixed_monotone;
    HypothesisReport epsilon_chainable;
    HypothesisReport contraction;
    HypothesisReport seed;
    HypothesisReport condition_h;
    HypothesisReport pair_bounds;
    std::optional<ContractivityReport> contraction_estimate; // empty when no quadruple was admissible

    double lambda = 0.5;
    /// lambda backed by an exhaustive check, not by sampling.
    bool lambda_certified = false;
    /// Chain length covering (x0, x1) and (y1, y0), at least 1.
    std::size_t trajectory_chain_n = 1;

    bool lemma_certified() const
    {
        return epsilon_chainable.certified() && mixed_monotone.certified() && contraction.certified();
    }
    /// Existence hypotheses: the decay-lemma inputs plus the seed condition.
    bool existence_certified() const { return lemma_certified() && seed.certified(); }
    bool uniqueness_certified() const { return existence_certified() && condition_h.certified(); }

    std::vector<const HypothesisReport*> reports() const;
};

Analysis analyze(const Instance& instance);

SolveConfig make_solve_config(const Instance& instance, const Analysis& analysis);

/// Solve plus everything reported alongside it.
struct SolveOutcome {
    SolveResult result;
    CollapseReport collapse_pair_bounds;
    CollapseReport collapse_comparable_seeds;
    LemmaReport lemma;
};

inline constexpr std::size_t kLemmaHorizon = 50;

/// Runs the Picard iteration, both collapse checks, and the decay check
/// along the trajectory (a, b) = (x0, x1), (a*, b*) = (y0, y1).
SolveOutcome run_solve(const Instance& instance, const Analysis& analysis, bool record_trace = true,
                       std::size_t horizon = kLemmaHorizon);

} // namespace cfp
