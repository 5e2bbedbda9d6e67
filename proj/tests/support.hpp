#pragma once

#include "cfp/coupled_map.hpp"
#include "cfp/expression.hpp"
#include "cfp/space.hpp"

#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

namespace cfp::test {

using SpacePtr = std::shared_ptr<const OrderedMetricSpace>;

/// 0 < 1 < ... < n-1 with d(i, j) = |i - j|.
inline SpacePtr integer_chain(std::size_t n)
{
    std::vector<std::string> labels;
    std::vector<std::vector<double>> d(n, std::vector<double>(n));
    std::vector<std::pair<std::size_t, std::size_t>> order;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(std::to_string(i));
        for (std::size_t j = 0; j < n; ++j)
            d[i][j] = std::abs(static_cast<double>(i) - static_cast<double>(j));
        if (i + 1 < n)
            order.emplace_back(i, i + 1);
    }
    return std::make_shared<const OrderedMetricSpace>(OrderedMetricSpace::finite_from_pairs(labels, d, order));
}

/// Points with pairwise distance `gap` and no order beyond equality.
inline SpacePtr antichain(std::size_t n, double gap = 1.0)
{
    std::vector<std::string> labels;
    std::vector<std::vector<double>> d(n, std::vector<double>(n, gap));
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back("p" + std::to_string(i));
        d[i][i] = 0;
    }
    return std::make_shared<const OrderedMetricSpace>(OrderedMetricSpace::finite_from_pairs(labels, d, {}));
}

inline SpacePtr unit_box(std::size_t dimension = 1)
{
    return std::make_shared<const OrderedMetricSpace>(
        OrderedMetricSpace::box(std::vector<double>(dimension, 0.0), std::vector<double>(dimension, 1.0)));
}

inline CoupledMap expression_map(const SpacePtr& space, const std::vector<std::string>& sources)
{
    std::vector<Expression> parts;
    for (const auto& s : sources)
        parts.push_back(Expression::parse(s, space->dimension()));
    return CoupledMap::from_expressions(space, std::move(parts));
}

/// F(x, y) = (2x - y + 3) / 8 on [0, 1].
inline CoupledMap affine_map() { return expression_map(unit_box(), {"(2*x - y + 3)/8"}); }

/// F(x, y) = floor((x + 3 - y) / 4) on the chain {0, 1, 2, 3}.
inline CoupledMap floor_map()
{
    auto space = integer_chain(4);
    std::vector<std::vector<std::size_t>> t(4, std::vector<std::size_t>(4));
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            t[x][y] = static_cast<std::size_t>((x + 3 - y) / 4);
    return CoupledMap::from_table(space, t);
}

inline CoupledMap constant_table(const SpacePtr& space, std::size_t c)
{
    return CoupledMap::from_table(space, std::vector<std::vector<std::size_t>>(space->size(),
                                                                               std::vector<std::size_t>(space->size(), c)));
}

inline Point s(double v) { return Point::scalar(v); }
inline Point at(std::size_t i) { return Point::at(i); }

} // namespace cfp::test
