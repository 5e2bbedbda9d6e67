#pragma once

#include "cfp/coupled_map.hpp"
#include "cfp/sampling.hpp"
#include "cfp/space.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cfp {

enum class Verdict { holds, violated, undetermined_sampled };

std::string_view to_string(Verdict v);

/// Outcome of one hypothesis check. A violated verdict always carries a
/// witness that a single direct evaluation can re-check.
struct HypothesisReport {
    std::string hypothesis;
    Verdict verdict = Verdict::holds;
    std::vector<Point> witness;
    std::string detail;
    bool exhaustive = true;
    std::uint64_t sample_seed = 0;
    std::size_t sample_size = 0;
    std::optional<double> epsilon;
    std::optional<double> lambda_hat;
    std::optional<std::size_t> max_n;

    /// Not refuted: holds, or sampled without a counterexample.
    bool certified() const noexcept { return verdict != Verdict::violated; }
};

/// A quadruple (x, u, y, v) with x >= u and y <= v.
struct Quadruple {
    Point x, u, y, v;
    bool operator==(const Quadruple&) const = default;
};

/// Largest observed 2 d(F(x,y), F(u,v)) / (d(x,u) + d(y,v)) over the
/// admissible quadruples of a candidate set.
struct ContractivityReport {
    double epsilon = 0;
    double lambda_hat = 0;
    bool violated = false;
    Quadruple witness;                        // first quadruple attaining lambda_hat
    std::optional<Quadruple> first_violation; // first quadruple with ratio >= 1
    std::size_t pairs_tested = 0;
    bool exhaustive = true;
    std::uint64_t sample_seed = 0;
    std::size_t sample_size = 0;
};

/// a = points[0] <= ... <= points[n] = b with consecutive gaps < epsilon.
struct Chain {
    std::vector<Point> points;
    double epsilon = 0;

    std::size_t n() const noexcept { return points.empty() ? 0 : points.size() - 1; }
};

/// Triples (x1 <= x2, y) are scanned first, then (x, y1 <= y2); the first
/// failure in that row-major order is the witness.
HypothesisReport check_mixed_monotone(const CoupledMap& map, const CandidateSet& sample);

/// Quadruples are enumerated row-major over (x, u, y, v). Admissible means
/// x >= u, y <= v, 0 < d(x,u) + d(y,v) and (d(x,u) + d(y,v)) / 2 < epsilon.
/// Throws DegenerateSampleError when none is admissible.
ContractivityReport estimate_contraction(const CoupledMap& map, double epsilon, const CandidateSet& sample);

/// Whether the map is (epsilon, lambda) uniformly locally contractive on the
/// tested quadruples: every ratio strictly below lambda.
HypothesisReport contraction_verdict(const ContractivityReport& report, double lambda);

/// Minimum-length chain from a to b through `candidates` (breadth-first on
/// p -> q iff p <= q and d(p, q) < epsilon). a and b are added to the
/// candidates when missing. On a box the straight segment from a to b is
/// split evenly instead, which is minimal for the additive metric.
/// Throws PreconditionError unless a <= b.
std::optional<Chain> find_epsilon_chain(const OrderedMetricSpace& space, const Point& a, const Point& b,
                                        double epsilon, const std::vector<Point>& candidates);

/// Checks every comparable pair of the sample; max_n is the largest minimal
/// chain length found. Boxes always hold, with max_n taken over the whole box.
HypothesisReport check_epsilon_chainable(const OrderedMetricSpace& space, double epsilon, const CandidateSet& sample);

/// x0 <= F(x0, y0) and y0 >= F(y0, x0).
HypothesisReport check_seed(const CoupledMap& map, const Point& x0, const Point& y0);

/// Every two product points of sample x sample have a product point
/// comparable to both.
HypothesisReport check_condition_H(const OrderedMetricSpace& space, const CandidateSet& sample);

/// Every pair of points has a common upper bound or a common lower bound.
HypothesisReport check_pair_bounds(const OrderedMetricSpace& space, const CandidateSet& sample);

} // namespace cfp
