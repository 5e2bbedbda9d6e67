#include "cfp/pipeline.hpp"

#include "cfp/error.hpp"

#include <algorithm>

namespace cfp {

std::vector<const HypothesisReport*> Analysis::reports() const
{
    return {&mixed_monotone, &epsilon_chainable, &contraction, &seed, &condition_h, &pair_bounds};
}

Analysis analyze(const Instance& instance)
{
    const OrderedMetricSpace& space = *instance.space;
    const CoupledMap& map = instance.map;
    const double eps = instance.params.epsilon;

    Analysis a;
    a.candidates = make_candidates(space, instance.sampling);
    a.mixed_monotone = check_mixed_monotone(map, a.candidates);
    a.epsilon_chainable = check_epsilon_chainable(space, eps, a.candidates);
    a.seed = check_seed(map, instance.x0, instance.y0);
    a.condition_h = check_condition_H(space, a.candidates);
    a.pair_bounds = check_pair_bounds(space, a.candidates);

    try {
        a.contraction_estimate = estimate_contraction(map, eps, a.candidates);
    } catch (const DegenerateSampleError&) {
        a.contraction_estimate.reset();
    }

    if (instance.params.lambda_claimed) {
        a.lambda = *instance.params.lambda_claimed;
    } else if (a.contraction_estimate && a.contraction_estimate->lambda_hat < 1) {
        // Any lambda strictly between the observed supremum and 1 works.
        a.lambda = a.contraction_estimate->lambda_hat > 0 ? (a.contraction_estimate->lambda_hat + 1) / 2 : 0.5;
    } else {
        a.lambda = 0.99;
    }

    if (a.contraction_estimate) {
        a.contraction = contraction_verdict(*a.contraction_estimate, a.lambda);
    } else {
        // Nothing to contract: the implication is vacuous on this sample.
        a.contraction.hypothesis = "uniformly_locally_contractive";
        a.contraction.exhaustive = a.candidates.exhaustive;
        a.contraction.sample_seed = a.candidates.seed;
        a.contraction.sample_size = a.candidates.points.size();
        a.contraction.epsilon = eps;
        a.contraction.lambda_hat = 0.0;
        a.contraction.verdict = a.candidates.exhaustive ? Verdict::holds : Verdict::undetermined_sampled;
        a.contraction.detail = "vacuous: no admissible quadruple";
    }
    a.lambda_certified = a.contraction.verdict == Verdict::holds;

    std::size_t n = 1;
    try {
        const Point x1 = map.apply(instance.x0, instance.y0);
        const Point y1 = map.apply(instance.y0, instance.x0);
        const auto pool = with_points(a.candidates.points, {instance.x0, instance.y0, x1, y1});
        bool found = true;
        auto extend = [&](const Point& lo, const Point& hi) {
            if (!leq(space, lo, hi)) {
                found = false;
                return;
            }
            auto c = find_epsilon_chain(space, lo, hi, eps, pool);
            if (c)
                n = std::max(n, c->n());
            else
                found = false;
        };
        extend(instance.x0, x1);
        extend(y1, instance.y0);
        if (!found && a.epsilon_chainable.max_n)
            n = std::max(n, *a.epsilon_chainable.max_n);
    } catch (const OutOfSpaceError&) {
        if (a.epsilon_chainable.max_n)
            n = std::max(n, *a.epsilon_chainable.max_n);
    }
    a.trajectory_chain_n = n;
    return a;
}

SolveConfig make_solve_config(const Instance& instance, const Analysis& analysis)
{
    SolveConfig cfg;
    cfg.max_iterations = instance.params.max_iterations;
    cfg.residual_tolerance = instance.params.tolerance;
    cfg.lambda = analysis.lambda;
    cfg.epsilon = instance.params.epsilon;
    cfg.chain_n = analysis.trajectory_chain_n;
    cfg.lambda_certified = analysis.lambda_certified;
    return cfg;
}

SolveOutcome run_solve(const Instance& instance, const Analysis& analysis, bool record_trace, std::size_t horizon)
{
    SolveConfig cfg = make_solve_config(instance, analysis);
    cfg.record_trace = record_trace;

    SolveOutcome out;
    out.result = picard_solve(instance.map, instance.x0, instance.y0, cfg);

    CollapseContext ctx{instance.x0, instance.y0, analysis.pair_bounds, cfg.residual_tolerance};
    out.collapse_pair_bounds = collapse_check(instance.map, out.result, CollapseMode::pair_bounds, ctx);
    out.collapse_comparable_seeds = collapse_check(instance.map, out.result, CollapseMode::comparable_seeds, ctx);

    const LemmaHypotheses certs{analysis.epsilon_chainable.certified(), analysis.mixed_monotone.certified(),
                                analysis.contraction.certified()};
    try {
        const Point x1 = instance.map.apply(instance.x0, instance.y0);
        const Point y1 = instance.map.apply(instance.y0, instance.x0);
        out.lemma = verify_lemma_decay(instance.map, {instance.x0, x1}, {instance.y0, y1}, cfg.chain_n, cfg.lambda,
                                       cfg.epsilon, horizon, certs);
    } catch (const OutOfSpaceError&) {
        out.lemma.uncertified.emplace_back("closure");
        out.lemma.all_below = false;
        out.lemma.decaying = false;
    }
    return out;
}

} // namespace cfp
