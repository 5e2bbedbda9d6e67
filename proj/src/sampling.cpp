#include "cfp/sampling.hpp"

#include "cfp/error.hpp"

#include <algorithm>
#include <cmath>

namespace cfp {

std::uint64_t Rng::below(std::uint64_t bound)
{
    if (bound == 0)
        throw DomainError("Rng::below needs a positive bound");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    for (;;) {
        const std::uint64_t v = next();
        if (v < limit)
            return v % bound;
    }
}

std::vector<double> grid_axis(double lower, double upper, double step)
{
    if (!(step > 0) || !std::isfinite(step))
        throw DomainError("grid step must be a positive real");
    std::vector<double> axis;
    const double span = upper - lower;
    const auto count = static_cast<std::size_t>(std::floor(span / step + 1e-9));
    for (std::size_t i = 0; i <= count; ++i)
        axis.push_back(std::min(upper, lower + static_cast<double>(i) * step));
    if (axis.back() != upper)
        axis.push_back(upper);
    return axis;
}

CandidateSet make_candidates(const OrderedMetricSpace& space, const SamplingPlan& plan, std::size_t max_points)
{
    if (space.is_finite())
        return {space.points(), true, 0};

    const std::size_t k = space.dimension();
    std::vector<std::vector<double>> axes;
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        axes.push_back(grid_axis(space.lower()[i], space.upper()[i], plan.grid_step));
        total *= axes.back().size();
        if (total > max_points)
            throw DomainError("sampling grid exceeds " + std::to_string(max_points) + " points; use a coarser grid_step");
    }

    CandidateSet out;
    out.exhaustive = false;
    out.seed = plan.seed;
    out.points.reserve(total + plan.random_count);
    std::vector<std::size_t> idx(k, 0);
    for (std::size_t n = 0; n < total; ++n) {
        std::vector<double> c(k);
        for (std::size_t i = 0; i < k; ++i)
            c[i] = axes[i][idx[i]];
        out.points.push_back(Point::box(std::move(c)));
        for (std::size_t i = k; i-- > 0;) {
            if (++idx[i] < axes[i].size())
                break;
            idx[i] = 0;
        }
    }

    Rng rng(plan.seed);
    for (std::size_t n = 0; n < plan.random_count; ++n) {
        std::vector<double> c(k);
        for (std::size_t i = 0; i < k; ++i) {
            const double lo = space.lower()[i], hi = space.upper()[i];
            c[i] = std::min(hi, lo + rng.unit() * (hi - lo));
        }
        out.points.push_back(Point::box(std::move(c)));
    }
    return out;
}

std::vector<Point> with_points(std::vector<Point> points, const std::vector<Point>& extra)
{
    for (const auto& p : extra)
        if (std::find(points.begin(), points.end(), p) == points.end())
            points.push_back(p);
    return points;
}

} // namespace cfp
