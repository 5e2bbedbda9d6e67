#include "cfp/coupled_map.hpp"

#include "cfp/error.hpp"

namespace cfp {

CoupledMap CoupledMap::from_table(std::shared_ptr<const OrderedMetricSpace> space,
                                  std::vector<std::vector<std::size_t>> table)
{
    if (!space || !space->is_finite())
        throw DomainError("table maps need a finite space");
    const std::size_t n = space->size();
    if (table.size() != n)
        throw DomainError("map table has " + std::to_string(table.size()) + " rows, expected " + std::to_string(n));
    CoupledMap m;
    m.kind_ = MapKind::table;
    m.table_.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (table[i].size() != n)
            throw DomainError("map table row " + std::to_string(i) + " has wrong length");
        for (std::size_t j = 0; j < n; ++j) {
            if (table[i][j] >= n)
                throw DomainError("map table entry F(" + std::to_string(i) + "," + std::to_string(j) + ")=" +
                                  std::to_string(table[i][j]) + " is not a point index");
            m.table_.push_back(table[i][j]);
        }
    }
    m.space_ = std::move(space);
    return m;
}

CoupledMap CoupledMap::from_expressions(std::shared_ptr<const OrderedMetricSpace> space,
                                        std::vector<Expression> components)
{
    if (!space || space->is_finite())
        throw DomainError("expression maps need a box space");
    if (components.size() != space->dimension())
        throw DomainError("map has " + std::to_string(components.size()) + " components, box has dimension " +
                          std::to_string(space->dimension()));
    for (const auto& e : components)
        if (e.dimension() != space->dimension())
            throw DomainError("expression dimension does not match the box");
    CoupledMap m;
    m.kind_ = MapKind::expression;
    m.space_ = std::move(space);
    m.exprs_ = std::move(components);
    return m;
}

Point CoupledMap::apply(const Point& x, const Point& y) const
{
    space_->require(x);
    space_->require(y);
    if (kind_ == MapKind::table)
        return Point::at(table_at(x.index, y.index));

    std::vector<double> out(exprs_.size());
    for (std::size_t i = 0; i < exprs_.size(); ++i)
        out[i] = exprs_[i].evaluate(x.coords, y.coords);
    Point p = Point::box(std::move(out));
    if (!space_->contains(p))
        throw OutOfSpaceError("F(" + describe(*space_, x) + ", " + describe(*space_, y) + ") = " +
                              describe(*space_, p) + " leaves the box");
    return p;
}

bool CoupledMap::operator==(const CoupledMap& other) const
{
    const bool same_space = space_ == other.space_ || (space_ && other.space_ && *space_ == *other.space_);
    return kind_ == other.kind_ && same_space && table_ == other.table_ && exprs_ == other.exprs_;
}

IteratePair iterate_m(const CoupledMap& map, const Point& x, const Point& y, std::size_t m)
{
    map.space().require(x);
    map.space().require(y);
    IteratePair p{0, x, y};
    while (p.m < m)
        p = step(map, p);
    return p;
}

void verify_closure(const CoupledMap& map, const std::vector<Point>& points)
{
    for (const auto& x : points)
        for (const auto& y : points)
            map.apply(x, y);
}

} // namespace cfp
