#pragma once

#include "cfp/expression.hpp"
#include "cfp/space.hpp"

#include <cstddef>
#include <memory>
#include <vector>

namespace cfp {

enum class MapKind { table, expression };

/// F : X x X -> X, either a lookup table over point indices (finite spaces)
/// or one expression per box coordinate. Shares its space immutably.
class CoupledMap {
public:
    /// An empty map; only assignable.
    CoupledMap() = default;

    /// Throws DomainError when an entry is not a valid point index.
    static CoupledMap from_table(std::shared_ptr<const OrderedMetricSpace> space,
                                 std::vector<std::vector<std::size_t>> table);

    /// One component per box coordinate.
    static CoupledMap from_expressions(std::shared_ptr<const OrderedMetricSpace> space,
                                       std::vector<Expression> components);

    MapKind kind() const noexcept { return kind_; }
    const OrderedMetricSpace& space() const noexcept { return *space_; }
    const std::shared_ptr<const OrderedMetricSpace>& space_ptr() const noexcept { return space_; }

    std::size_t table_at(std::size_t x, std::size_t y) const noexcept { return table_[x * space_->size() + y]; }
    const std::vector<Expression>& expressions() const noexcept { return exprs_; }

    /// F(x, y). Throws OutOfSpaceError when an expression leaves the box.
    Point apply(const Point& x, const Point& y) const;

    bool operator==(const CoupledMap& other) const;

private:
    MapKind kind_ = MapKind::table;
    std::shared_ptr<const OrderedMetricSpace> space_;
    std::vector<std::size_t> table_;
    std::vector<Expression> exprs_;
};

/// (F^m(x, y), F^m(y, x)).
struct IteratePair {
    std::size_t m = 0;
    Point forward;
    Point backward;
};

/// F^0(x, y) = x and F^{m+1}(x, y) = F(F^m(x, y), F^m(y, x)), carried
/// forward as a single running pair.
IteratePair iterate_m(const CoupledMap& map, const Point& x, const Point& y, std::size_t m);

/// One step of the running pair: (a, b) -> (F(a, b), F(b, a)).
inline IteratePair step(const CoupledMap& map, const IteratePair& p)
{
    return {p.m + 1, map.apply(p.forward, p.backward), map.apply(p.backward, p.forward)};
}

/// Applies F to every pair of `points`; throws OutOfSpaceError on the first
/// pair (row-major) whose image leaves the space.
void verify_closure(const CoupledMap& map, const std::vector<Point>& points);

} // namespace cfp
