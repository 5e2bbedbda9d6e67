#include "cfp/oracle.hpp"

#include "cfp/error.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace cfp::oracle {

namespace {

void require_finite_table(const CoupledMap& map)
{
    if (!map.space().is_finite() || map.kind() != MapKind::table)
        throw DomainError("oracle needs a finite space with a table map");
}

// Nonnegative value mag * 2^exp, holding the exact product of two doubles.
struct Wide {
    unsigned __int128 mag = 0;
    int exp = 0;
};

int bit_length(unsigned __int128 v)
{
    const auto hi = static_cast<std::uint64_t>(v >> 64);
    if (hi)
        return 128 - std::countl_zero(hi);
    return 64 - std::countl_zero(static_cast<std::uint64_t>(v));
}

Wide exact_product(double a, double b)
{
    if (a == 0 || b == 0)
        return {};
    int ea = 0, eb = 0;
    const auto ma = static_cast<std::uint64_t>(std::ldexp(std::frexp(a, &ea), 53));
    const auto mb = static_cast<std::uint64_t>(std::ldexp(std::frexp(b, &eb), 53));
    return {static_cast<unsigned __int128>(ma) * mb, ea + eb - 106};
}

int compare(Wide x, Wide y)
{
    if (x.mag == 0 || y.mag == 0)
        return (x.mag != 0) - (y.mag != 0);
    const int tx = bit_length(x.mag) + x.exp;
    const int ty = bit_length(y.mag) + y.exp;
    if (tx != ty)
        return tx < ty ? -1 : 1;
    if (x.exp > y.exp)
        x.mag <<= (x.exp - y.exp);
    else
        y.mag <<= (y.exp - x.exp);
    return (x.mag > y.mag) - (x.mag < y.mag);
}

// a_num / a_den > b_num / b_den for positive denominators.
bool ratio_greater(double a_num, double a_den, double b_num, double b_den)
{
    return compare(exact_product(a_num, b_den), exact_product(b_num, a_den)) > 0;
}

} // namespace

std::vector<IndexPair> brute_force_cfp(const CoupledMap& map)
{
    require_finite_table(map);
    const std::size_t n = map.space().size();
    std::vector<IndexPair> out;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (map.table_at(x, y) == x && map.table_at(y, x) == y)
                out.emplace_back(x, y);
    return out;
}

ContractionTruth exhaustive_contraction_check(const CoupledMap& map, double epsilon)
{
    require_finite_table(map);
    const OrderedMetricSpace& s = map.space();
    const std::size_t n = s.size();

    ContractionTruth t;
    double best_num = 0, best_den = 1;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t u = 0; u < n; ++u) {
            if (!s.table_leq(u, x))
                continue;
            const double dxu = s.table_distance(x, u);
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t v = 0; v < n; ++v) {
                    if (!s.table_leq(y, v))
                        continue;
                    const double den = dxu + s.table_distance(y, v);
                    if (den == 0 || !(den < 2 * epsilon))
                        continue;
                    const double num = s.table_distance(map.table_at(x, y), map.table_at(u, v));
                    if (!t.argmax || ratio_greater(num, den, best_num, best_den)) {
                        best_num = num;
                        best_den = den;
                        t.argmax = {x, u, y, v};
                    }
                    if (!t.first_violation && 2 * num >= den)
                        t.first_violation = std::array<std::size_t, 4>{x, u, y, v};
                    ++t.admissible;
                }
        }
    t.vacuous = t.admissible == 0;
    t.violated = t.first_violation.has_value();
    t.exact_lambda = t.vacuous ? 0 : 2 * best_num / best_den;
    return t;
}

ChainTable exhaustive_chain_check(const OrderedMetricSpace& space, double epsilon)
{
    if (!space.is_finite())
        throw DomainError("oracle needs a finite space");
    const std::size_t n = space.size();
    constexpr std::size_t inf = std::numeric_limits<std::size_t>::max() / 4;
    std::vector<std::vector<std::size_t>> hops(n, std::vector<std::size_t>(n, inf));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j)
                hops[i][j] = 0;
            else if (space.table_leq(i, j) && space.table_distance(i, j) < epsilon)
                hops[i][j] = 1;
        }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (hops[i][k] + hops[k][j] < hops[i][j])
                    hops[i][j] = hops[i][k] + hops[k][j];

    ChainTable table(n, std::vector<ChainEntry>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            table[i][j].comparable = space.table_leq(i, j);
            if (table[i][j].comparable && hops[i][j] < inf)
                table[i][j].n = hops[i][j];
        }
    return table;
}

Report run(const CoupledMap& map, double epsilon)
{
    return {brute_force_cfp(map), exhaustive_contraction_check(map, epsilon),
            exhaustive_chain_check(map.space(), epsilon)};
}

} // namespace cfp::oracle
