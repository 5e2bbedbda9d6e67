#pragma once

#include "cfp/coupled_map.hpp"
#include "cfp/hypothesis.hpp"
#include "cfp/space.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace cfp {

struct SolveConfig {
    std::size_t max_iterations = 1000;
    double residual_tolerance = 1e-10;
    double lambda = 0.5;
    double epsilon = 1.0;
    std::size_t chain_n = 1;
    bool record_trace = true;
    /// lambda comes from an exhaustive check rather than sampling; when false
    /// the bound comparison is advisory only.
    bool lambda_certified = false;

    /// Throws DomainError on max_iterations < 1, tolerance <= 0, lambda
    /// outside (0, 1) or epsilon <= 0.
    void validate() const;
};

enum class SolveStatus { converged, max_iterations, diverged_from_box };

std::string_view to_string(SolveStatus s);

struct TraceRow {
    std::size_t m = 0;
    Point x;
    Point y;
    double residual = 0;
    std::optional<double> eta_step; // eta((x_{m-1}, y_{m-1}), (x_m, y_m)); empty at m = 0
    double bound = 0;               // 2 n lambda^m epsilon
};

/// A_m = eta((x_m, y_m), (x_{m+1}, y_{m+1})) against 2 n lambda^m epsilon.
struct BoundRow {
    std::size_t m = 0;
    double observed = 0;
    double bound = 0;
};

struct SolveResult {
    SolveStatus status = SolveStatus::max_iterations;
    ProductPair fixed_pair;
    std::size_t iterations_used = 0;
    std::vector<TraceRow> trace;
    std::vector<BoundRow> bound_check;
    bool bound_advisory = true;
    bool bound_respected = true;
    /// d(x, y) of the final pair and whether it is within 2 x tolerance.
    double collapse_gap = 0;
    bool collapse_equal = false;
    std::string diagnostic;
};

/// d(x, F(x, y)) + d(y, F(y, x)).
double residual(const CoupledMap& map, const Point& x, const Point& y);

/// Coupled Picard iteration x_{m+1} = F(x_m, y_m), y_{m+1} = F(y_m, x_m),
/// stopped when the residual of (x_m, y_m) drops to the tolerance.
SolveResult picard_solve(const CoupledMap& map, const Point& x0, const Point& y0, const SolveConfig& cfg);

/// 2 n lambda^m epsilon. Throws DomainError outside n >= 1, 0 < lambda < 1,
/// epsilon > 0.
double lemma_bound(std::size_t n, double lambda, double epsilon, std::size_t m);

/// Which inputs of the decay lemma were certified by the caller.
struct LemmaHypotheses {
    bool epsilon_chainable = false;
    bool mixed_monotone = false;
    bool contractive = false;
};

struct LemmaReport {
    std::vector<BoundRow> rows;
    std::size_t chain_n = 0;
    bool all_below = true;
    bool decaying = true;
    std::vector<std::string> uncertified;
    bool certified() const noexcept { return uncertified.empty(); }
};

/// observed_m = eta((F^m(a,a*), F^m(a*,a)), (F^m(b,b*), F^m(b*,b))) against
/// lemma_bound(n, lambda, epsilon, m) for m = 0..horizon. `lower` is (a, b)
/// with a <= b and `upper` is (a*, b*) with a* >= b*. Failed preconditions
/// are listed in `uncertified`, never thrown.
LemmaReport verify_lemma_decay(const CoupledMap& map, const ProductPair& lower, const ProductPair& upper,
                               std::size_t chain_n, double lambda, double epsilon, std::size_t horizon,
                               const LemmaHypotheses& certified);

enum class UniquenessVerdict { same, distinct, inconclusive };

std::string_view to_string(UniquenessVerdict v);

struct UniquenessReport {
    UniquenessVerdict verdict = UniquenessVerdict::inconclusive;
    bool direct = false;     // fixed pairs comparable to each other
    double eta_between = 0;  // eta(fp1, fp2)
    double eta_to_first = 0; // eta(F^M(witness), F^M(fp1)) when a witness is used
    double eta_to_second = 0;
};

/// Compares two coupled fixed points. Comparable pairs are decided
/// directly; otherwise the witness pair, which must be comparable to both,
/// is iterated `horizon` steps and must approach both. Throws
/// PreconditionError when a residual exceeds the tolerance or the witness
/// is not comparable to both.
UniquenessReport uniqueness_probe(const CoupledMap& map, const ProductPair& fp1, const ProductPair& fp2,
                                  const std::optional<ProductPair>& witness, const SolveConfig& cfg,
                                  std::size_t horizon);

enum class CollapseMode { pair_bounds, comparable_seeds };
enum class CollapseVerdict { holds, fails, not_applicable };

std::string_view to_string(CollapseVerdict v);

struct CollapseContext {
    Point x0;
    Point y0;
    /// Result of check_pair_bounds, required for CollapseMode::pair_bounds.
    std::optional<HypothesisReport> pair_bounds;
    double residual_tolerance = 1e-10;
};

struct CollapseReport {
    CollapseVerdict verdict = CollapseVerdict::not_applicable;
    double gap = 0;
    std::string reason;
};

/// d(x, y) <= 2 x tolerance for a converged result whose mode hypothesis
/// is certified; not_applicable otherwise.
CollapseReport collapse_check(const CoupledMap& map, const SolveResult& result, CollapseMode mode,
                              const CollapseContext& context);

} // namespace cfp
