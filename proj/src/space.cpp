#include "cfp/space.hpp"

#include "cfp/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cfp {

namespace {

std::string label_of(const std::vector<std::string>& labels, std::size_t i)
{
    return i < labels.size() && !labels[i].empty() ? labels[i] : "p" + std::to_string(i);
}

std::string fmt_real(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

OrderedMetricSpace OrderedMetricSpace::finite(std::vector<std::string> labels,
                                              std::vector<std::vector<double>> distances,
                                              std::vector<std::vector<bool>> order)
{
    const std::size_t n = labels.size();
    if (n == 0)
        throw DomainError("finite space needs at least one point");
    if (distances.size() != n)
        throw DomainError("distance matrix has " + std::to_string(distances.size()) + " rows, expected " +
                          std::to_string(n));
    if (order.size() != n)
        throw DomainError("order matrix has " + std::to_string(order.size()) + " rows, expected " +
                          std::to_string(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (distances[i].size() != n)
            throw DomainError("distance matrix row " + std::to_string(i) + " has wrong length");
        if (order[i].size() != n)
            throw DomainError("order matrix row " + std::to_string(i) + " has wrong length");
    }

    OrderedMetricSpace s;
    s.kind_ = SpaceKind::finite;
    s.size_ = n;
    s.labels_ = std::move(labels);
    s.dist_.resize(n * n);
    s.order_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            s.dist_[i * n + j] = distances[i][j];
            s.order_[i * n + j] = order[i][j] ? 1 : 0;
        }

    auto L = [&](std::size_t i) { return label_of(s.labels_, i); };
    auto d = [&](std::size_t i, std::size_t j) { return s.dist_[i * n + j]; };
    auto le = [&](std::size_t i, std::size_t j) { return s.order_[i * n + j] != 0; };

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!std::isfinite(d(i, j)) || d(i, j) < 0)
                throw AxiomError("nonnegativity", {i, j},
                                 "distance d(" + L(i) + "," + L(j) + ")=" + fmt_real(d(i, j)) +
                                     " is not a finite nonnegative real");
    for (std::size_t i = 0; i < n; ++i)
        if (d(i, i) != 0)
            throw AxiomError("identity", {i}, "metric identity violated: d(" + L(i) + "," + L(i) + ")=" +
                                                  fmt_real(d(i, i)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (d(i, j) != d(j, i))
                throw AxiomError("symmetry", {i, j},
                                 "metric symmetry violated: d(" + L(i) + "," + L(j) + ")=" + fmt_real(d(i, j)) +
                                     " but d(" + L(j) + "," + L(i) + ")=" + fmt_real(d(j, i)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && d(i, j) == 0)
                throw AxiomError("separation", {i, j},
                                 "distinct points at distance zero: " + L(i) + ", " + L(j));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (d(i, j) > d(i, k) + d(k, j))
                    throw AxiomError("triangle", {i, j, k},
                                     "triangle inequality violated: d(" + L(i) + "," + L(j) + ")=" +
                                         fmt_real(d(i, j)) + " > d(" + L(i) + "," + L(k) + ")+d(" + L(k) + "," +
                                         L(j) + ")=" + fmt_real(d(i, k) + d(k, j)));

    for (std::size_t i = 0; i < n; ++i)
        if (!le(i, i))
            throw AxiomError("reflexivity", {i}, "order is not reflexive at " + L(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && le(i, j) && le(j, i))
                throw AxiomError("antisymmetry", {i, j},
                                 "order antisymmetry violated: " + L(i) + " <= " + L(j) + " and " + L(j) +
                                     " <= " + L(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (le(i, j) && le(j, k) && !le(i, k))
                    throw AxiomError("transitivity", {i, j, k},
                                     "order transitivity violated: " + L(i) + " <= " + L(j) + " <= " + L(k) +
                                         " but not " + L(i) + " <= " + L(k));
    return s;
}

OrderedMetricSpace OrderedMetricSpace::finite_from_pairs(
    std::vector<std::string> labels,
    std::vector<std::vector<double>> distances,
    const std::vector<std::pair<std::size_t, std::size_t>>& order_pairs)
{
    const std::size_t n = labels.size();
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        rel[i][i] = true;
    for (const auto& [p, q] : order_pairs) {
        if (p >= n || q >= n)
            throw DomainError("order pair (" + std::to_string(p) + "," + std::to_string(q) +
                              ") references a point outside 0.." + std::to_string(n - 1));
        rel[p][q] = true;
    }
    // Warshall closure.
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (rel[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (rel[k][j])
                        rel[i][j] = true;
    return finite(std::move(labels), std::move(distances), std::move(rel));
}

OrderedMetricSpace OrderedMetricSpace::box(std::vector<double> lower, std::vector<double> upper)
{
    if (lower.empty())
        throw DomainError("box needs dimension >= 1");
    if (lower.size() != upper.size())
        throw DomainError("box bounds have different dimensions");
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]))
            throw DomainError("box bound " + std::to_string(i) + " is not finite");
        if (lower[i] > upper[i])
            throw DomainError("box bound " + std::to_string(i) + " has lower > upper");
    }
    OrderedMetricSpace s;
    s.kind_ = SpaceKind::box;
    s.lower_ = std::move(lower);
    s.upper_ = std::move(upper);
    return s;
}

std::vector<Point> OrderedMetricSpace::points() const
{
    std::vector<Point> out;
    out.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i)
        out.push_back(Point::at(i));
    return out;
}

bool OrderedMetricSpace::contains(const Point& p) const noexcept
{
    if (is_finite())
        return p.is_indexed() && p.index < size_;
    if (p.coords.size() != lower_.size())
        return false;
    for (std::size_t i = 0; i < lower_.size(); ++i)
        if (!(p.coords[i] >= lower_[i] && p.coords[i] <= upper_[i]))
            return false;
    return true;
}

void OrderedMetricSpace::require(const Point& p) const
{
    if (is_finite()) {
        if (!p.is_indexed())
            throw DomainError("coordinate point used in a finite space");
        if (p.index >= size_)
            throw DomainError("point index " + std::to_string(p.index) + " out of range 0.." +
                              std::to_string(size_ - 1));
        return;
    }
    if (p.coords.size() != lower_.size())
        throw DomainError("point has dimension " + std::to_string(p.coords.size()) + ", space has " +
                          std::to_string(lower_.size()));
    if (!contains(p))
        throw DomainError("point " + describe(*this, p) + " lies outside the box");
}

double OrderedMetricSpace::diameter() const
{
    if (is_finite())
        return *std::max_element(dist_.begin(), dist_.end());
    double sum = 0;
    for (std::size_t i = 0; i < lower_.size(); ++i)
        sum += upper_[i] - lower_[i];
    return sum;
}

double distance(const OrderedMetricSpace& space, const Point& p, const Point& q)
{
    space.require(p);
    space.require(q);
    if (space.is_finite())
        return space.table_distance(p.index, q.index);
    double sum = 0;
    for (std::size_t i = 0; i < p.coords.size(); ++i)
        sum += std::abs(p.coords[i] - q.coords[i]);
    return sum;
}

bool leq(const OrderedMetricSpace& space, const Point& p, const Point& q)
{
    space.require(p);
    space.require(q);
    if (space.is_finite())
        return space.table_leq(p.index, q.index);
    for (std::size_t i = 0; i < p.coords.size(); ++i)
        if (p.coords[i] > q.coords[i])
            return false;
    return true;
}

bool product_leq(const OrderedMetricSpace& space, const ProductPair& lower, const ProductPair& upper)
{
    return leq(space, lower.first, upper.first) && leq(space, upper.second, lower.second);
}

double product_eta(const OrderedMetricSpace& space, const ProductPair& a, const ProductPair& b)
{
    return distance(space, a.first, b.first) + distance(space, a.second, b.second);
}

std::string describe(const OrderedMetricSpace& space, const Point& p)
{
    if (p.is_indexed())
        return label_of(space.labels(), p.index);
    std::string out = "(";
    for (std::size_t i = 0; i < p.coords.size(); ++i) {
        if (i)
            out += ", ";
        out += fmt_real(p.coords[i]);
    }
    return out + ")";
}

} // namespace cfp
