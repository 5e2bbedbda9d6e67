#pragma once

#include "cfp/space.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace cfp {

/// Portable deterministic generator. The engine sequence is fixed by the
/// standard; range reduction is done here because the std distributions
/// are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound), bound > 0 (rejection sampling).
    std::uint64_t below(std::uint64_t bound);

    /// Uniform integer in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi)
    {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    /// Uniform real in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

/// Deterministic sampling of a box: a regular grid plus `random_count`
/// seeded uniform points. Finite spaces ignore the plan and use every point.
struct SamplingPlan {
    double grid_step = 0.1;
    std::size_t random_count = 0;
    std::uint64_t seed = 1;

    bool operator==(const SamplingPlan&) const = default;
};

/// Points a check runs over, and whether they cover the whole space.
struct CandidateSet {
    std::vector<Point> points;
    bool exhaustive = true;
    std::uint64_t seed = 0;
};

/// Axis values lower, lower + step, ..., upper (upper always included).
std::vector<double> grid_axis(double lower, double upper, double step);

/// Grid points are emitted in row-major order (first coordinate slowest),
/// random points after them. Throws DomainError for a non-positive step or
/// a grid above `max_points`.
CandidateSet make_candidates(const OrderedMetricSpace& space, const SamplingPlan& plan,
                             std::size_t max_points = 20000);

/// Returns `points` with p appended unless already present.
std::vector<Point> with_points(std::vector<Point> points, const std::vector<Point>& extra);

} // namespace cfp
