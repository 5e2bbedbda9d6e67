#include "cfp/generator.hpp"

#include "cfp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cfp {

namespace {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

void finish(Instance& inst, std::uint64_t seed, std::size_t size, GeneratorStyle style)
{
    inst.name = "gen-" + std::string(to_string(style)) + "-s" + std::to_string(seed) + "-n" + std::to_string(size);
    inst.params.lambda_claimed = 0.9;
    // Below half the smallest positive distance, so a finite residual under
    // the tolerance is exactly zero.
    double closest = 1.0;
    const auto& sp = *inst.space;
    for (std::size_t i = 0; i < sp.size(); ++i)
        for (std::size_t j = 0; j < sp.size(); ++j)
            if (sp.table_distance(i, j) > 0)
                closest = std::min(closest, sp.table_distance(i, j));
    inst.params.tolerance = std::min(1e-12, closest / 4);
    inst.params.max_iterations = 200;
    inst.order_limit_closure = true;
}

Instance random_instance(std::uint64_t seed, std::size_t n, double edge_probability)
{
    Rng rng(seed);
    constexpr double inf = std::numeric_limits<double>::infinity();

    Pairs edges;
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, inf));
    for (std::size_t i = 0; i < n; ++i)
        dist[i][i] = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.chance(edge_probability)) {
                const auto w = static_cast<double>(rng.between(1, 4));
                edges.emplace_back(i, j);
                dist[i][j] = dist[j][i] = w;
            }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
    // Separate components sit at one more than the largest in-component
    // distance, which keeps the triangle inequality.
    double widest = 0;
    for (const auto& row : dist)
        for (double d : row)
            if (d != inf)
                widest = std::max(widest, d);
    for (auto& row : dist)
        for (double& d : row)
            if (d == inf)
                d = widest + 1;

    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i)
        labels.push_back("p" + std::to_string(i));
    auto space = std::make_shared<const OrderedMetricSpace>(
        OrderedMetricSpace::finite_from_pairs(std::move(labels), std::move(dist), edges));
    auto le = [&](std::size_t a, std::size_t b) { return space->table_leq(a, b); };
    auto lt = [&](std::size_t a, std::size_t b) { return a != b && le(a, b); };

    // Random maximal chain through a random start, following covers.
    auto covers = [&](std::size_t p, bool up) {
        std::vector<std::size_t> out;
        for (std::size_t q = 0; q < n; ++q) {
            if (!(up ? lt(p, q) : lt(q, p)))
                continue;
            bool direct = true;
            for (std::size_t r = 0; r < n && direct; ++r)
                if (up ? (lt(p, r) && lt(r, q)) : (lt(q, r) && lt(r, p)))
                    direct = false;
            if (direct)
                out.push_back(q);
        }
        return out;
    };
    const std::size_t start = rng.below(n);
    std::vector<std::size_t> below, above;
    for (std::size_t cur = start;;) {
        auto c = covers(cur, false);
        if (c.empty())
            break;
        cur = c[rng.below(c.size())];
        below.push_back(cur);
    }
    for (std::size_t cur = start;;) {
        auto c = covers(cur, true);
        if (c.empty())
            break;
        cur = c[rng.below(c.size())];
        above.push_back(cur);
    }
    std::vector<std::size_t> chain(below.rbegin(), below.rend());
    chain.push_back(start);
    chain.insert(chain.end(), above.begin(), above.end());
    const auto top = static_cast<std::int64_t>(chain.size() - 1);

    // Strictly order-preserving weight: number of points strictly below.
    std::vector<std::size_t> weight(n, 0);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            if (lt(q, p))
                ++weight[p];

    auto sorted_sample = [&] {
        std::vector<std::int64_t> v(n);
        for (auto& e : v)
            e = rng.between(0, top);
        std::sort(v.begin(), v.end());
        return v;
    };
    const auto rise = sorted_sample();
    const auto fall = sorted_sample();
    const std::int64_t offset = rng.between(0, top);

    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::int64_t idx = std::clamp(rise[weight[x]] - fall[weight[y]] + offset, std::int64_t{0}, top);
            table[x][y] = chain[static_cast<std::size_t>(idx)];
        }

    Instance inst;
    inst.space = space;
    inst.map = CoupledMap::from_table(space, table);
    inst.params.epsilon = 5; // exceeds every edge weight, so comparable pairs chain along DAG paths

    inst.x0 = inst.y0 = Point::at(0);
    const std::size_t cells = n * n;
    const std::size_t first = rng.below(cells);
    for (std::size_t t = 0; t < cells; ++t) {
        const std::size_t c = (first + t) % cells;
        const std::size_t x = c / n, y = c % n;
        if (le(x, table[x][y]) && le(table[y][x], y)) {
            inst.x0 = Point::at(x);
            inst.y0 = Point::at(y);
            break;
        }
    }
    return inst;
}

Instance contractive_instance(std::uint64_t seed, std::size_t n)
{
    Rng rng(seed);

    // Positions 1 - q^i along each axis; gaps shrink by q, so a shift by at
    // least one step contracts distances by q / (1 - q) or better.
    std::size_t rows = 1, cols = n;
    std::vector<std::pair<std::size_t, std::size_t>> shapes;
    for (std::size_t a = 2; a * a <= n; ++a)
        if (n % a == 0 && n / a <= 14)
            shapes.emplace_back(a, n / a);
    const bool chain_ok = n <= 27;
    if (!shapes.empty() && (!chain_ok || rng.chance(0.5)))
        std::tie(rows, cols) = shapes[rng.below(shapes.size())];
    else if (!chain_ok)
        throw DomainError("contractive style cannot lay out " + std::to_string(n) + " points exactly");

    const bool product = rows > 1;
    int shift_bits = 2;
    if (!product && n <= 18 && rng.chance(0.5))
        shift_bits = 3;
    const double q = std::ldexp(1.0, -shift_bits);
    auto pos = [&](std::size_t i) { return 1.0 - std::ldexp(1.0, -shift_bits * static_cast<int>(i)); };

    auto shift_axis = [&](std::size_t len) {
        std::vector<std::size_t> s(len);
        std::size_t floor = 0;
        for (std::size_t i = 0; i < len; ++i) {
            floor = std::max(floor, std::min(i + static_cast<std::size_t>(rng.between(1, 2)), len - 1));
            s[i] = floor;
        }
        return s;
    };
    const auto shift_row = shift_axis(rows);
    const auto shift_col = shift_axis(cols);

    std::vector<std::string> labels;
    std::vector<std::vector<double>> dist(n, std::vector<double>(n));
    Pairs covers;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            labels.push_back(product ? "c" + std::to_string(i) + "_" + std::to_string(j) : "c" + std::to_string(j));
            const std::size_t p = i * cols + j;
            if (i + 1 < rows)
                covers.emplace_back(p, p + cols);
            if (j + 1 < cols)
                covers.emplace_back(p, p + 1);
            for (std::size_t k = 0; k < rows; ++k)
                for (std::size_t l = 0; l < cols; ++l)
                    dist[p][k * cols + l] = std::abs(pos(i) - pos(k)) + std::abs(pos(j) - pos(l));
        }
    auto space = std::make_shared<const OrderedMetricSpace>(
        OrderedMetricSpace::finite_from_pairs(std::move(labels), std::move(dist), covers));

    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            table[x][y] = shift_row[x / cols] * cols + shift_col[x % cols];

    Instance inst;
    inst.space = space;
    inst.map = CoupledMap::from_table(space, table);
    inst.params.epsilon = (1 - q) + q / 4;
    inst.x0 = Point::at(rng.below(n));
    inst.y0 = Point::at(n - 1);
    return inst;
}

} // namespace

std::string_view to_string(GeneratorStyle s)
{
    return s == GeneratorStyle::random ? "random" : "contractive";
}

GeneratorStyle parse_generator_style(std::string_view name)
{
    if (name == "random")
        return GeneratorStyle::random;
    if (name == "contractive")
        return GeneratorStyle::contractive;
    throw DomainError("unknown generator style '" + std::string(name) + "'");
}

Instance generate_finite_instance(std::uint64_t seed, std::size_t size, const GeneratorParams& params)
{
    if (size < 2 || size > kMaxFiniteSize)
        throw DomainError("size must lie in 2.." + std::to_string(kMaxFiniteSize));
    Instance inst = params.style == GeneratorStyle::random ? random_instance(seed, size, params.edge_probability)
                                                           : contractive_instance(seed, size);
    finish(inst, seed, size, params.style);
    return inst;
}

std::string generate_instance_text(std::uint64_t seed, std::size_t size, const GeneratorParams& params)
{
    return emit_instance(generate_finite_instance(seed, size, params));
}

} // namespace cfp
