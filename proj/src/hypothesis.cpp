#include "cfp/hypothesis.hpp"

#include "cfp/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace cfp {

namespace {

// Distance and order tables over a candidate list, so the O(c^3)/O(c^4)
// scans below don't re-validate points on every lookup.
struct Tables {
    std::size_t n = 0;
    std::vector<double> dist;
    std::vector<unsigned char> le;

    Tables(const OrderedMetricSpace& space, const std::vector<Point>& pts) : n(pts.size()), dist(n * n), le(n * n)
    {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                dist[i * n + j] = cfp::distance(space, pts[i], pts[j]);
                le[i * n + j] = cfp::leq(space, pts[i], pts[j]) ? 1 : 0;
            }
    }

    double d(std::size_t i, std::size_t j) const { return dist[i * n + j]; }
    bool leq(std::size_t i, std::size_t j) const { return le[i * n + j] != 0; }
};

// Common upper / lower bound existence for every candidate pair.
struct Bounds {
    std::size_t n = 0;
    std::vector<unsigned char> ub, lb;

    explicit Bounds(const Tables& t) : n(t.n), ub(n * n, 0), lb(n * n, 0)
    {
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q)
                for (std::size_t z = 0; z < n; ++z) {
                    if (t.leq(p, z) && t.leq(q, z))
                        ub[p * n + q] = 1;
                    if (t.leq(z, p) && t.leq(z, q))
                        lb[p * n + q] = 1;
                }
    }

    bool upper(std::size_t p, std::size_t q) const { return ub[p * n + q] != 0; }
    bool lower(std::size_t p, std::size_t q) const { return lb[p * n + q] != 0; }
};

HypothesisReport make_report(std::string id, const CandidateSet& sample)
{
    HypothesisReport r;
    r.hypothesis = std::move(id);
    r.exhaustive = sample.exhaustive;
    r.sample_seed = sample.seed;
    r.sample_size = sample.points.size();
    return r;
}

void settle(HypothesisReport& r)
{
    if (r.verdict != Verdict::violated)
        r.verdict = r.exhaustive ? Verdict::holds : Verdict::undetermined_sampled;
}

std::size_t index_of(std::vector<Point>& pts, const Point& p)
{
    auto it = std::find(pts.begin(), pts.end(), p);
    if (it != pts.end())
        return static_cast<std::size_t>(it - pts.begin());
    pts.push_back(p);
    return pts.size() - 1;
}

} // namespace

std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::undetermined_sampled: return "undetermined-sampled";
    }
    return "?";
}

HypothesisReport check_mixed_monotone(const CoupledMap& map, const CandidateSet& sample)
{
    const auto& pts = sample.points;
    if (pts.empty())
        throw DegenerateSampleError("mixed monotone check needs a nonempty sample");
    const OrderedMetricSpace& space = map.space();
    const Tables t(space, pts);
    const std::size_t n = pts.size();

    std::vector<Point> image;
    image.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            image.push_back(map.apply(pts[i], pts[j]));
    auto F = [&](std::size_t i, std::size_t j) -> const Point& { return image[i * n + j]; };

    HypothesisReport r = make_report("mixed_monotone", sample);
    for (std::size_t x1 = 0; x1 < n; ++x1)
        for (std::size_t x2 = 0; x2 < n; ++x2) {
            if (!t.leq(x1, x2))
                continue;
            for (std::size_t y = 0; y < n; ++y)
                if (!leq(space, F(x1, y), F(x2, y))) {
                    r.verdict = Verdict::violated;
                    r.witness = {pts[x1], pts[x2], pts[y]};
                    r.detail = "first argument: x1 <= x2 but F(x1,y)=" + describe(space, F(x1, y)) +
                               " is not <= F(x2,y)=" + describe(space, F(x2, y));
                    return r;
                }
        }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y1 = 0; y1 < n; ++y1)
            for (std::size_t y2 = 0; y2 < n; ++y2) {
                if (!t.leq(y1, y2))
                    continue;
                if (!leq(space, F(x, y2), F(x, y1))) {
                    r.verdict = Verdict::violated;
                    r.witness = {pts[x], pts[y1], pts[y2]};
                    r.detail = "second argument: y1 <= y2 but F(x,y1)=" + describe(space, F(x, y1)) +
                               " is not >= F(x,y2)=" + describe(space, F(x, y2));
                    return r;
                }
            }
    settle(r);
    return r;
}

ContractivityReport estimate_contraction(const CoupledMap& map, double epsilon, const CandidateSet& sample)
{
    if (!(epsilon > 0))
        throw DomainError("epsilon must be positive");
    const auto& pts = sample.points;
    const OrderedMetricSpace& space = map.space();
    const Tables t(space, pts);
    const std::size_t n = pts.size();

    std::vector<Point> image;
    image.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            image.push_back(map.apply(pts[i], pts[j]));

    ContractivityReport r;
    r.epsilon = epsilon;
    r.exhaustive = sample.exhaustive;
    r.sample_seed = sample.seed;
    r.sample_size = n;
    double best = -1;

    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t u = 0; u < n; ++u) {
            if (!t.leq(u, x))
                continue;
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t v = 0; v < n; ++v) {
                    if (!t.leq(y, v))
                        continue;
                    const double s = t.d(x, u) + t.d(y, v);
                    if (s == 0 || !(s / 2 < epsilon))
                        continue;
                    ++r.pairs_tested;
                    const double num = distance(space, image[x * n + y], image[u * n + v]);
                    const double ratio = 2 * num / s;
                    if (ratio > best) {
                        best = ratio;
                        r.witness = {pts[x], pts[u], pts[y], pts[v]};
                    }
                    if (!r.violated && 2 * num >= s) {
                        r.violated = true;
                        r.first_violation = Quadruple{pts[x], pts[u], pts[y], pts[v]};
                    }
                }
        }
    if (r.pairs_tested == 0)
        throw DegenerateSampleError("no admissible quadruple for epsilon=" + std::to_string(epsilon) +
                                    "; epsilon is below the sample resolution");
    r.lambda_hat = best;
    return r;
}

HypothesisReport contraction_verdict(const ContractivityReport& report, double lambda)
{
    HypothesisReport r;
    r.hypothesis = "uniformly_locally_contractive";
    r.exhaustive = report.exhaustive;
    r.sample_seed = report.sample_seed;
    r.sample_size = report.sample_size;
    r.epsilon = report.epsilon;
    r.lambda_hat = report.lambda_hat;
    auto as_points = [](const Quadruple& q) { return std::vector<Point>{q.x, q.u, q.y, q.v}; };
    if (report.violated) {
        r.verdict = Verdict::violated;
        r.witness = as_points(*report.first_violation);
        r.detail = "ratio >= 1 at witness (x, u, y, v)";
    } else if (!(report.lambda_hat < lambda)) {
        r.verdict = Verdict::violated;
        r.witness = as_points(report.witness);
        r.detail = "ratio " + std::to_string(report.lambda_hat) + " is not below lambda=" + std::to_string(lambda);
    }
    settle(r);
    return r;
}

namespace {

// Fewest steps of length < epsilon covering distance d; any chain needs at
// least this many by the triangle inequality.
std::size_t straight_chain_length(double d, double epsilon)
{
    return d > 0 ? static_cast<std::size_t>(std::floor(d / epsilon)) + 1 : 0;
}

Chain straight_chain(const OrderedMetricSpace& space, const Point& a, const Point& b, double epsilon)
{
    for (std::size_t n = straight_chain_length(distance(space, a, b), epsilon);; ++n) {
        Chain c{{a}, epsilon};
        bool ok = true;
        for (std::size_t i = 1; i <= n; ++i) {
            Point p = b;
            if (i < n)
                for (std::size_t k = 0; k < p.coords.size(); ++k)
                    p.coords[k] = a.coords[k] + (b.coords[k] - a.coords[k]) * static_cast<double>(i) /
                                                    static_cast<double>(n);
            ok = ok && leq(space, c.points.back(), p) && distance(space, c.points.back(), p) < epsilon;
            c.points.push_back(std::move(p));
        }
        if (ok)
            return c;
    }
}

} // namespace

std::optional<Chain> find_epsilon_chain(const OrderedMetricSpace& space, const Point& a, const Point& b,
                                        double epsilon, const std::vector<Point>& candidates)
{
    if (!(epsilon > 0))
        throw DomainError("epsilon must be positive");
    if (!leq(space, a, b))
        throw PreconditionError("chain endpoints must satisfy a <= b; got a=" + describe(space, a) +
                                ", b=" + describe(space, b));
    if (a == b)
        return Chain{{a}, epsilon};
    if (!space.is_finite())
        return straight_chain(space, a, b, epsilon);

    std::vector<Point> pts = candidates;
    const std::size_t src = index_of(pts, a);
    const std::size_t dst = index_of(pts, b);
    for (const auto& p : pts)
        space.require(p);

    const std::size_t n = pts.size();
    constexpr std::size_t unseen = static_cast<std::size_t>(-1);
    std::vector<std::size_t> parent(n, unseen);
    std::deque<std::size_t> queue{src};
    parent[src] = src;
    while (!queue.empty() && parent[dst] == unseen) {
        const std::size_t p = queue.front();
        queue.pop_front();
        for (std::size_t q = 0; q < n; ++q) {
            if (parent[q] != unseen || !leq(space, pts[p], pts[q]))
                continue;
            if (distance(space, pts[p], pts[q]) < epsilon) {
                parent[q] = p;
                queue.push_back(q);
            }
        }
    }
    if (parent[dst] == unseen)
        return std::nullopt;

    Chain c;
    c.epsilon = epsilon;
    for (std::size_t at = dst; at != src; at = parent[at])
        c.points.push_back(pts[at]);
    c.points.push_back(pts[src]);
    std::reverse(c.points.begin(), c.points.end());
    return c;
}

HypothesisReport check_epsilon_chainable(const OrderedMetricSpace& space, double epsilon, const CandidateSet& sample)
{
    if (!(epsilon > 0))
        throw DomainError("epsilon must be positive");
    if (!space.is_finite()) {
        // Convex with an additive metric: always chainable, so this is a
        // statement about the whole box rather than the sample.
        HypothesisReport r = make_report("epsilon_chainable", sample);
        r.exhaustive = true;
        r.epsilon = epsilon;
        r.max_n = straight_chain_length(space.diameter(), epsilon);
        r.detail = "box: straight segments split into steps shorter than epsilon";
        return r;
    }
    const auto& pts = sample.points;
    const Tables t(space, pts);
    const std::size_t n = t.n;

    HypothesisReport r = make_report("epsilon_chainable", sample);
    r.epsilon = epsilon;
    std::size_t max_n = 0;
    constexpr std::size_t unseen = static_cast<std::size_t>(-1);
    std::vector<std::size_t> depth(n);
    for (std::size_t a = 0; a < n; ++a) {
        std::fill(depth.begin(), depth.end(), unseen);
        depth[a] = 0;
        std::deque<std::size_t> queue{a};
        while (!queue.empty()) {
            const std::size_t p = queue.front();
            queue.pop_front();
            for (std::size_t q = 0; q < n; ++q)
                if (depth[q] == unseen && t.leq(p, q) && t.d(p, q) < epsilon) {
                    depth[q] = depth[p] + 1;
                    queue.push_back(q);
                }
        }
        for (std::size_t b = 0; b < n; ++b) {
            if (!t.leq(a, b))
                continue;
            if (depth[b] == unseen) {
                r.verdict = Verdict::violated;
                r.witness = {pts[a], pts[b]};
                r.detail = describe(space, pts[a]) + " <= " + describe(space, pts[b]) +
                           " but no chain with gaps < epsilon joins them";
                return r;
            }
            max_n = std::max(max_n, depth[b]);
        }
    }
    r.max_n = max_n;
    settle(r);
    return r;
}

HypothesisReport check_seed(const CoupledMap& map, const Point& x0, const Point& y0)
{
    const OrderedMetricSpace& space = map.space();
    const Point x1 = map.apply(x0, y0);
    const Point y1 = map.apply(y0, x0);
    HypothesisReport r;
    r.hypothesis = "seed";
    r.sample_size = 1;
    const bool lower_ok = leq(space, x0, x1);
    const bool upper_ok = leq(space, y1, y0);
    if (!lower_ok || !upper_ok) {
        r.verdict = Verdict::violated;
        r.witness = {x0, y0};
        r.detail = !lower_ok ? "x0=" + describe(space, x0) + " is not <= F(x0,y0)=" + describe(space, x1)
                             : "y0=" + describe(space, y0) + " is not >= F(y0,x0)=" + describe(space, y1);
    }
    return r;
}

HypothesisReport check_condition_H(const OrderedMetricSpace& space, const CandidateSet& sample)
{
    const auto& pts = sample.points;
    const Tables t(space, pts);
    const Bounds b(t);
    const std::size_t n = t.n;
    HypothesisReport r = make_report("condition_H", sample);

    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t xs = 0; xs < n; ++xs)
                for (std::size_t ys = 0; ys < n; ++ys) {
                    const bool ok = (b.upper(x, xs) && b.lower(y, ys))   // above both
                                    || (b.lower(x, xs) && b.upper(y, ys)) // below both
                                    || (t.leq(x, xs) && t.leq(ys, y))     // (x,y) <= (xs,ys)
                                    || (t.leq(xs, x) && t.leq(y, ys));    // (xs,ys) <= (x,y)
                    if (!ok) {
                        r.verdict = Verdict::violated;
                        r.witness = {pts[x], pts[y], pts[xs], pts[ys]};
                        r.detail = "no product point is comparable to both (" + describe(space, pts[x]) + ", " +
                                   describe(space, pts[y]) + ") and (" + describe(space, pts[xs]) + ", " +
                                   describe(space, pts[ys]) + ")";
                        return r;
                    }
                }
    settle(r);
    return r;
}

HypothesisReport check_pair_bounds(const OrderedMetricSpace& space, const CandidateSet& sample)
{
    const auto& pts = sample.points;
    const Tables t(space, pts);
    const Bounds b(t);
    HypothesisReport r = make_report("pair_bounds", sample);
    for (std::size_t p = 0; p < t.n; ++p)
        for (std::size_t q = 0; q < t.n; ++q)
            if (!b.upper(p, q) && !b.lower(p, q)) {
                r.verdict = Verdict::violated;
                r.witness = {pts[p], pts[q]};
                r.detail = describe(space, pts[p]) + " and " + describe(space, pts[q]) +
                           " have neither an upper nor a lower bound";
                return r;
            }
    settle(r);
    return r;
}

} // namespace cfp
