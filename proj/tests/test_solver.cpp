#include "support.hpp"

#include "cfp/error.hpp"
#include "cfp/hypothesis.hpp"
#include "cfp/oracle.hpp"
#include "cfp/report.hpp"
#include "cfp/solver.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace cfp;
using namespace cfp::test;

namespace {

SolveConfig config(double tol = 1e-10)
{
    SolveConfig cfg;
    cfg.residual_tolerance = tol;
    cfg.epsilon = 0.3;
    cfg.lambda = 0.6;
    cfg.chain_n = 2;
    return cfg;
}

std::size_t count_lines(const std::string& s)
{
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

} // namespace

TEST(Residual, Examples)
{
    auto f = affine_map();
    const double z = 3.0 / 7.0;
    EXPECT_NEAR(residual(f, s(z), s(z)), 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(residual(f, s(0), s(1)), 0.625);
    auto c = constant_table(integer_chain(3), 2);
    EXPECT_EQ(residual(c, at(2), at(2)), 0.0);
}

TEST(Picard, AffineConvergesToThreeSevenths)
{
    auto r = picard_solve(affine_map(), s(0), s(1), config());
    ASSERT_EQ(r.status, SolveStatus::converged);
    EXPECT_LT(r.iterations_used, 40u);
    EXPECT_NEAR(r.fixed_pair.first.coords[0], 3.0 / 7.0, 1e-10);
    EXPECT_NEAR(r.fixed_pair.second.coords[0], 3.0 / 7.0, 1e-10);
    EXPECT_LE(residual(affine_map(), r.fixed_pair.first, r.fixed_pair.second), 1e-10);
    ASSERT_EQ(r.trace.size(), r.iterations_used + 1);
    EXPECT_EQ(r.trace[0].x, s(0));
    EXPECT_EQ(r.trace[0].y, s(1));
    EXPECT_FALSE(r.trace[0].eta_step);
}

TEST(Picard, ConstantMapConvergesAfterOneStep)
{
    auto r = picard_solve(constant_table(integer_chain(4), 2), at(0), at(3), config());
    EXPECT_EQ(r.status, SolveStatus::converged);
    EXPECT_EQ(r.iterations_used, 1u);
    EXPECT_EQ(r.fixed_pair, (ProductPair{at(2), at(2)}));
    auto e = picard_solve(expression_map(unit_box(), {"0.5"}), s(0), s(1), config());
    EXPECT_EQ(e.iterations_used, 1u);
    EXPECT_EQ(e.fixed_pair, (ProductPair{s(0.5), s(0.5)}));
}

TEST(Picard, FiniteLimitIsAnOracleFixedPoint)
{
    auto f = floor_map();
    auto r = picard_solve(f, at(0), at(3), config(1e-12));
    ASSERT_EQ(r.status, SolveStatus::converged);
    const auto fps = oracle::brute_force_cfp(f);
    EXPECT_NE(std::find(fps.begin(), fps.end(), std::pair{r.fixed_pair.first.index, r.fixed_pair.second.index}),
              fps.end());
}

TEST(Picard, MaxIterationsAndDivergence)
{
    auto cfg = config();
    cfg.max_iterations = 3;
    auto r = picard_solve(affine_map(), s(0), s(1), cfg);
    EXPECT_EQ(r.status, SolveStatus::max_iterations);
    EXPECT_EQ(r.iterations_used, 3u);

    auto esc = picard_solve(expression_map(unit_box(), {"x + 0.25"}), s(0.5), s(1), config());
    EXPECT_EQ(esc.status, SolveStatus::diverged_from_box);
    EXPECT_FALSE(esc.diagnostic.empty());
}

TEST(Picard, ContractionStepOnAffineTrace)
{
    auto f = affine_map();
    auto r = picard_solve(f, s(0), s(1), config());
    for (std::size_t m = 1; m + 1 < r.trace.size(); ++m) {
        const double cur = *r.trace[m].eta_step;
        const double next = *r.trace[m + 1].eta_step;
        if (cur / 2 < 0.3)
            EXPECT_LE(next, 0.6 * cur + 1e-16);
    }
}

TEST(Picard, BoundCheckUsesLemmaBound)
{
    auto cfg = config();
    cfg.lambda_certified = true;
    auto r = picard_solve(affine_map(), s(0), s(1), cfg);
    EXPECT_FALSE(r.bound_advisory);
    EXPECT_TRUE(r.bound_respected);
    for (const auto& row : r.bound_check)
        EXPECT_EQ(row.bound, lemma_bound(2, 0.6, 0.3, row.m));
}

TEST(Config, Validation)
{
    SolveConfig c;
    EXPECT_NO_THROW(c.validate());
    c.lambda = 1.0;
    EXPECT_THROW(c.validate(), DomainError);
    c = {};
    c.residual_tolerance = 0;
    EXPECT_THROW(c.validate(), DomainError);
    c = {};
    c.max_iterations = 0;
    EXPECT_THROW(c.validate(), DomainError);
    c = {};
    c.epsilon = -1;
    EXPECT_THROW(c.validate(), DomainError);
}

TEST(LemmaBound, Examples)
{
    EXPECT_DOUBLE_EQ(lemma_bound(4, 0.5, 0.3, 5), 0.075);
    EXPECT_DOUBLE_EQ(lemma_bound(3, 0.7, 0.2, 0), 2 * 3 * 0.2);
    for (std::size_t m = 0; m < 60; ++m)
        EXPECT_LT(lemma_bound(2, 0.9, 1, m + 1), lemma_bound(2, 0.9, 1, m));
    EXPECT_THROW(lemma_bound(0, 0.5, 1, 0), DomainError);
    EXPECT_THROW(lemma_bound(1, 1.0, 1, 0), DomainError);
    EXPECT_THROW(lemma_bound(1, 0.5, 0, 0), DomainError);
}

TEST(LemmaDecay, AffineExample)
{
    auto f = affine_map();
    const auto& sp = f.space();
    const std::size_t n = std::max(find_epsilon_chain(sp, s(0), s(0.25), 0.3, {})->n(),
                                   find_epsilon_chain(sp, s(0.625), s(1), 0.3, {})->n());
    EXPECT_EQ(n, 2u);
    auto r = verify_lemma_decay(f, {s(0), s(0.25)}, {s(1), s(0.625)}, n, 0.5, 0.3, 50, {true, true, true});
    EXPECT_TRUE(r.certified());
    EXPECT_TRUE(r.all_below);
    EXPECT_TRUE(r.decaying);
    ASSERT_EQ(r.rows.size(), 51u);
    EXPECT_DOUBLE_EQ(r.rows[0].observed, 0.625);
    for (const auto& row : r.rows)
        EXPECT_LT(row.observed, row.bound);
}

TEST(LemmaDecay, IdenticalArgumentsStayAtZero)
{
    auto r = verify_lemma_decay(affine_map(), {s(0.2), s(0.2)}, {s(0.9), s(0.9)}, 1, 0.5, 0.3, 20, {true, true, true});
    for (const auto& row : r.rows)
        EXPECT_EQ(row.observed, 0.0);
}

TEST(LemmaDecay, ConstantMapIsZeroAfterOneStep)
{
    auto f = expression_map(unit_box(), {"0.3"});
    auto r = verify_lemma_decay(f, {s(0), s(0.5)}, {s(1), s(0.5)}, 2, 0.5, 0.3, 10, {true, true, true});
    for (const auto& row : r.rows)
        if (row.m >= 1)
            EXPECT_EQ(row.observed, 0.0);
}

TEST(LemmaDecay, RecordsUncertifiedInputs)
{
    auto r = verify_lemma_decay(affine_map(), {s(0.5), s(0.25)}, {s(0.5), s(0.75)}, 1, 0.5, 0.3, 5, {false, true, true});
    EXPECT_FALSE(r.certified());
    EXPECT_NE(std::find(r.uncertified.begin(), r.uncertified.end(), "epsilon_chainable"), r.uncertified.end());
    EXPECT_NE(std::find(r.uncertified.begin(), r.uncertified.end(), "a<=b"), r.uncertified.end());
    EXPECT_NE(std::find(r.uncertified.begin(), r.uncertified.end(), "a*>=b*"), r.uncertified.end());
}

TEST(Uniqueness, IdenticalPairsAreSame)
{
    const double z = 3.0 / 7.0;
    auto f = affine_map();
    auto fp = picard_solve(f, s(0), s(1), config()).fixed_pair;
    auto r = uniqueness_probe(f, fp, fp, ProductPair{s(0), s(1)}, config(), 50);
    EXPECT_EQ(r.verdict, UniquenessVerdict::same);
    EXPECT_TRUE(r.direct);
    EXPECT_NEAR(fp.first.coords[0], z, 1e-10);
}

TEST(Uniqueness, FloorMapFixedPointsAreDistinct)
{
    auto f = floor_map();
    auto r = uniqueness_probe(f, {at(0), at(1)}, {at(1), at(0)}, std::nullopt, config(1e-12), 10);
    EXPECT_EQ(r.verdict, UniquenessVerdict::distinct);
    EXPECT_EQ(r.eta_between, 2.0);
}

TEST(Uniqueness, AntichainWithoutWitnessIsInconclusive)
{
    auto sp = antichain(2);
    auto f = CoupledMap::from_table(sp, {{0, 0}, {1, 1}}); // F(x, y) = x
    auto r = uniqueness_probe(f, {at(0), at(0)}, {at(1), at(1)}, std::nullopt, config(), 10);
    EXPECT_EQ(r.verdict, UniquenessVerdict::inconclusive);
    EXPECT_FALSE(r.direct);
    EXPECT_THROW(uniqueness_probe(f, {at(0), at(0)}, {at(1), at(1)}, ProductPair{at(0), at(0)}, config(), 10),
                 PreconditionError);
}

TEST(Uniqueness, WitnessPullsBothTogether)
{
    // Chain 0 < 1 < 2, constant map 1: the only fixed pair is (1, 1).
    auto f = constant_table(integer_chain(3), 1);
    auto r = uniqueness_probe(f, {at(1), at(1)}, {at(1), at(1)}, ProductPair{at(0), at(2)}, config(), 5);
    EXPECT_EQ(r.verdict, UniquenessVerdict::same);
}

TEST(Uniqueness, RejectsNonFixedInputs)
{
    EXPECT_THROW(uniqueness_probe(affine_map(), {s(0), s(1)}, {s(0), s(1)}, std::nullopt, config(), 5),
                 PreconditionError);
}

TEST(Stationary, IteratesOfFixedPairsDoNotMove)
{
    auto f = floor_map();
    for (const auto& [x, y] : oracle::brute_force_cfp(f))
        for (std::size_t m = 0; m < 6; ++m) {
            const auto p = iterate_m(f, at(x), at(y), m);
            EXPECT_EQ(p.forward, at(x));
            EXPECT_EQ(p.backward, at(y));
        }
}

TEST(Collapse, AffineComparableSeeds)
{
    auto f = affine_map();
    auto r = picard_solve(f, s(0), s(1), config());
    CollapseContext ctx{s(0), s(1), std::nullopt, 1e-10};
    auto c = collapse_check(f, r, CollapseMode::comparable_seeds, ctx);
    EXPECT_EQ(c.verdict, CollapseVerdict::holds);
    EXPECT_LE(c.gap, 2e-10);
    EXPECT_EQ(collapse_check(f, r, CollapseMode::pair_bounds, ctx).verdict, CollapseVerdict::not_applicable);
}

TEST(Collapse, ConstantMapHasZeroGap)
{
    auto f = constant_table(integer_chain(3), 1);
    auto r = picard_solve(f, at(0), at(2), config());
    auto c = collapse_check(f, r, CollapseMode::comparable_seeds, {at(0), at(2), std::nullopt, 1e-10});
    EXPECT_EQ(c.verdict, CollapseVerdict::holds);
    EXPECT_EQ(c.gap, 0.0);
}

TEST(Collapse, NotApplicableWithoutEitherHypothesis)
{
    auto sp = antichain(2);
    auto f = CoupledMap::from_table(sp, {{0, 0}, {1, 1}});
    auto r = picard_solve(f, at(0), at(1), config());
    ASSERT_EQ(r.status, SolveStatus::converged);
    const auto bounds = check_pair_bounds(*sp, make_candidates(*sp, {}));
    CollapseContext ctx{at(0), at(1), bounds, 1e-10};
    EXPECT_EQ(collapse_check(f, r, CollapseMode::pair_bounds, ctx).verdict, CollapseVerdict::not_applicable);
    EXPECT_EQ(collapse_check(f, r, CollapseMode::comparable_seeds, ctx).verdict, CollapseVerdict::not_applicable);
}

TEST(Trace, RowsPerIteration)
{
    // 0 < 1 < 2 with F(x, y) = min(x + 1, 2): two steps from (0, 2).
    auto f = CoupledMap::from_table(integer_chain(3), {{1, 1, 1}, {2, 2, 2}, {2, 2, 2}});
    auto r = picard_solve(f, at(0), at(2), config());
    ASSERT_EQ(r.iterations_used, 2u);
    const std::string jsonl = emit_trace(r, TraceFormat::jsonl);
    EXPECT_EQ(count_lines(jsonl), 3u);
    EXPECT_EQ(jsonl.substr(0, jsonl.find('\n')), R"({"m":0,"x":0,"y":2,"residual":1,"eta_step":null,"bound":1.2})");
    const std::string csv = emit_trace(r, TraceFormat::csv);
    EXPECT_EQ(count_lines(csv), 4u);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "m,x,y,residual,eta_step,bound");
}

TEST(Trace, DisabledTraceIsEmpty)
{
    auto cfg = config();
    cfg.record_trace = false;
    auto r = picard_solve(affine_map(), s(0), s(1), cfg);
    EXPECT_TRUE(r.trace.empty());
    EXPECT_EQ(emit_trace(r, TraceFormat::jsonl), "");
    EXPECT_EQ(emit_trace(r, TraceFormat::csv), "m,x,y,residual,eta_step,bound\n");
}

TEST(Trace, AffineSecondRow)
{
    auto r = picard_solve(affine_map(), s(0), s(1), config());
    const std::string jsonl = emit_trace(r, TraceFormat::jsonl);
    const auto second = jsonl.substr(jsonl.find('\n') + 1);
    EXPECT_EQ(second.rfind(R"({"m":1,"x":0.25,"y":0.625,)", 0), 0u);
}

TEST(Trace, MultiDimensionalRows)
{
    auto f = expression_map(unit_box(2), {"(x1 + 1)/2", "(x2 + 1)/2"});
    auto cfg = config();
    cfg.max_iterations = 1;
    auto r = picard_solve(f, Point::box({0, 0}), Point::box({1, 1}), cfg);
    EXPECT_EQ(emit_trace(r, TraceFormat::csv).substr(0, 34), "m,x,y,residual,eta_step,bound\n0,0;");
    EXPECT_NE(emit_trace(r, TraceFormat::jsonl).find(R"("x":[0,0],"y":[1,1])"), std::string::npos);
}
