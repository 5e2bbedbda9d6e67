#pragma once

#include "cfp/coupled_map.hpp"
#include "cfp/space.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace cfp::oracle {

// Ground truth for finite instances by plain enumeration over the raw
// tables. Nothing here goes through the hypothesis checks it is used to
// validate. All functions throw DomainError for a non-finite space or a
// non-table map.

using IndexPair = std::pair<std::size_t, std::size_t>;

/// Every (x, y) with F(x, y) = x and F(y, x) = y, sorted.
std::vector<IndexPair> brute_force_cfp(const CoupledMap& map);

struct ContractionTruth {
    /// No quadruple is admissible; lambda is 0 by convention.
    bool vacuous = false;
    bool violated = false;
    double exact_lambda = 0;
    std::optional<std::array<std::size_t, 4>> argmax;          // (x, u, y, v)
    std::optional<std::array<std::size_t, 4>> first_violation; // (x, u, y, v)
    std::size_t admissible = 0;
};

/// Exact maximum ratio over all admissible quadruples, row-major over
/// (x, u, y, v). Ratios are compared by exact cross-multiplication.
ContractionTruth exhaustive_contraction_check(const CoupledMap& map, double epsilon);

struct ChainEntry {
    bool comparable = false;
    std::optional<std::size_t> n; // empty when comparable but unreachable
};

using ChainTable = std::vector<std::vector<ChainEntry>>;

/// Minimal chain lengths for every pair via all-pairs shortest paths on the
/// order-respecting epsilon graph.
ChainTable exhaustive_chain_check(const OrderedMetricSpace& space, double epsilon);

struct Report {
    std::vector<IndexPair> fixed_points;
    ContractionTruth contraction;
    ChainTable chains;
};

Report run(const CoupledMap& map, double epsilon);

} // namespace cfp::oracle
