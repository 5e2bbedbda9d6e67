#include "cfp/solver.hpp"

#include "cfp/error.hpp"

#include <algorithm>
#include <cmath>

namespace cfp {

void SolveConfig::validate() const
{
    if (max_iterations < 1)
        throw DomainError("max_iterations must be >= 1");
    if (!(residual_tolerance > 0))
        throw DomainError("residual_tolerance must be positive");
    if (!(lambda > 0 && lambda < 1))
        throw DomainError("lambda must lie in (0, 1)");
    if (!(epsilon > 0))
        throw DomainError("epsilon must be positive");
}

std::string_view to_string(SolveStatus s)
{
    switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iterations: return "max-iterations";
    case SolveStatus::diverged_from_box: return "diverged-from-box";
    }
    return "?";
}

std::string_view to_string(UniquenessVerdict v)
{
    switch (v) {
    case UniquenessVerdict::same: return "same";
    case UniquenessVerdict::distinct: return "distinct";
    case UniquenessVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

std::string_view to_string(CollapseVerdict v)
{
    switch (v) {
    case CollapseVerdict::holds: return "holds";
    case CollapseVerdict::fails: return "fails";
    case CollapseVerdict::not_applicable: return "not-applicable";
    }
    return "?";
}

double residual(const CoupledMap& map, const Point& x, const Point& y)
{
    const OrderedMetricSpace& space = map.space();
    return distance(space, x, map.apply(x, y)) + distance(space, y, map.apply(y, x));
}

double lemma_bound(std::size_t n, double lambda, double epsilon, std::size_t m)
{
    if (n < 1)
        throw DomainError("chain length n must be >= 1");
    if (!(lambda > 0 && lambda < 1))
        throw DomainError("lambda must lie in (0, 1)");
    if (!(epsilon > 0))
        throw DomainError("epsilon must be positive");
    return 2.0 * static_cast<double>(n) * std::pow(lambda, static_cast<double>(m)) * epsilon;
}

SolveResult picard_solve(const CoupledMap& map, const Point& x0, const Point& y0, const SolveConfig& cfg)
{
    cfg.validate();
    const OrderedMetricSpace& space = map.space();
    space.require(x0);
    space.require(y0);

    const std::size_t n = std::max<std::size_t>(cfg.chain_n, 1);
    SolveResult result;
    result.bound_advisory = !cfg.lambda_certified;

    IteratePair cur{0, x0, y0};
    std::optional<double> prev_step;
    for (;;) {
        IteratePair next;
        try {
            next = step(map, cur);
        } catch (const OutOfSpaceError& e) {
            result.status = SolveStatus::diverged_from_box;
            result.diagnostic = e.what();
            break;
        }
        // The residual of (x_m, y_m) is exactly the step to (x_{m+1}, y_{m+1}).
        const double r = distance(space, cur.forward, next.forward) + distance(space, cur.backward, next.backward);
        const double bound = lemma_bound(n, cfg.lambda, cfg.epsilon, cur.m);
        if (cfg.record_trace)
            result.trace.push_back({cur.m, cur.forward, cur.backward, r, prev_step, bound});
        result.bound_check.push_back({cur.m, r, bound});
        if (!(r < bound))
            result.bound_respected = false;

        if (r <= cfg.residual_tolerance) {
            result.status = SolveStatus::converged;
            break;
        }
        if (cur.m >= cfg.max_iterations) {
            result.status = SolveStatus::max_iterations;
            break;
        }
        prev_step = r;
        cur = std::move(next);
    }
    result.fixed_pair = {cur.forward, cur.backward};
    result.iterations_used = cur.m;
    result.collapse_gap = distance(space, cur.forward, cur.backward);
    result.collapse_equal = result.collapse_gap <= 2 * cfg.residual_tolerance;
    return result;
}

LemmaReport verify_lemma_decay(const CoupledMap& map, const ProductPair& lower, const ProductPair& upper,
                               std::size_t chain_n, double lambda, double epsilon, std::size_t horizon,
                               const LemmaHypotheses& certified)
{
    const OrderedMetricSpace& space = map.space();
    const Point& a = lower.first;
    const Point& b = lower.second;
    const Point& a_star = upper.first;
    const Point& b_star = upper.second;

    LemmaReport report;
    report.chain_n = std::max<std::size_t>(chain_n, 1);
    if (!certified.epsilon_chainable)
        report.uncertified.emplace_back("epsilon_chainable");
    if (!certified.mixed_monotone)
        report.uncertified.emplace_back("mixed_monotone");
    if (!certified.contractive)
        report.uncertified.emplace_back("uniformly_locally_contractive");
    if (!leq(space, a, b))
        report.uncertified.emplace_back("a<=b");
    if (!leq(space, b_star, a_star))
        report.uncertified.emplace_back("a*>=b*");

    IteratePair p{0, a, a_star};
    IteratePair q{0, b, b_star};
    for (std::size_t m = 0; m <= horizon; ++m) {
        const double observed = distance(space, p.forward, q.forward) + distance(space, p.backward, q.backward);
        const double bound = lemma_bound(report.chain_n, lambda, epsilon, m);
        report.rows.push_back({m, observed, bound});
        if (!(observed < bound))
            report.all_below = false;
        if (m < horizon) {
            p = step(map, p);
            q = step(map, q);
        }
    }
    const double first = report.rows.front().observed;
    const double last = report.rows.back().observed;
    report.decaying = last == 0 || last < first;
    return report;
}

UniquenessReport uniqueness_probe(const CoupledMap& map, const ProductPair& fp1, const ProductPair& fp2,
                                  const std::optional<ProductPair>& witness, const SolveConfig& cfg,
                                  std::size_t horizon)
{
    const OrderedMetricSpace& space = map.space();
    const double tol = cfg.residual_tolerance;
    if (residual(map, fp1.first, fp1.second) > tol)
        throw PreconditionError("first pair is not a coupled fixed point within tolerance");
    if (residual(map, fp2.first, fp2.second) > tol)
        throw PreconditionError("second pair is not a coupled fixed point within tolerance");

    UniquenessReport r;
    r.eta_between = product_eta(space, fp1, fp2);

    if (product_comparable(space, fp1, fp2)) {
        // Iterates of a coupled fixed point are stationary, so the decay
        // lemma forces eta(fp1, fp2) itself to vanish.
        r.direct = true;
        r.verdict = r.eta_between <= 2 * tol ? UniquenessVerdict::same : UniquenessVerdict::distinct;
        return r;
    }
    if (!witness) {
        r.verdict = UniquenessVerdict::inconclusive;
        return r;
    }
    if (!product_comparable(space, *witness, fp1) || !product_comparable(space, *witness, fp2))
        throw PreconditionError("witness pair is not comparable to both fixed pairs");

    const IteratePair w = iterate_m(map, witness->first, witness->second, horizon);
    const IteratePair i1 = iterate_m(map, fp1.first, fp1.second, horizon);
    const IteratePair i2 = iterate_m(map, fp2.first, fp2.second, horizon);
    const ProductPair wm{w.forward, w.backward};
    r.eta_to_first = product_eta(space, wm, {i1.forward, i1.backward});
    r.eta_to_second = product_eta(space, wm, {i2.forward, i2.backward});
    if (r.eta_to_first + r.eta_to_second <= 2 * tol)
        r.verdict = UniquenessVerdict::same;
    else if (r.eta_between > 2 * tol)
        r.verdict = UniquenessVerdict::distinct;
    else
        r.verdict = UniquenessVerdict::inconclusive;
    return r;
}

CollapseReport collapse_check(const CoupledMap& map, const SolveResult& result, CollapseMode mode,
                              const CollapseContext& context)
{
    const OrderedMetricSpace& space = map.space();
    CollapseReport r;
    if (result.status != SolveStatus::converged) {
        r.reason = "solve did not converge";
        return r;
    }
    if (mode == CollapseMode::pair_bounds) {
        if (!context.pair_bounds || !context.pair_bounds->certified()) {
            r.reason = "pair-bounds hypothesis not certified";
            return r;
        }
    } else if (!comparable(space, context.x0, context.y0)) {
        r.reason = "seeds are not comparable";
        return r;
    }
    r.gap = distance(space, result.fixed_pair.first, result.fixed_pair.second);
    r.verdict = r.gap <= 2 * context.residual_tolerance ? CollapseVerdict::holds : CollapseVerdict::fails;
    return r;
}

} // namespace cfp
