#pragma once

#include "cfp/instance.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace cfp {

enum class GeneratorStyle {
    /// Random poset (closure of a random DAG), shortest-path metric on the
    /// weighted comparability graph, mixed monotone table by construction.
    random,
    /// Geometric chain or product of two chains with a shift map; satisfies
    /// every hypothesis of the existence and uniqueness results.
    contractive,
};

std::string_view to_string(GeneratorStyle s);
/// Throws DomainError for an unknown name.
GeneratorStyle parse_generator_style(std::string_view name);

struct GeneratorParams {
    GeneratorStyle style = GeneratorStyle::random;
    double edge_probability = 0.35;
};

/// Deterministic in (seed, size, params). Throws DomainError unless
/// 2 <= size <= kMaxFiniteSize (and, for the contractive style, the size
/// fits an exactly representable geometric layout).
Instance generate_finite_instance(std::uint64_t seed, std::size_t size, const GeneratorParams& params = {});

/// emit_instance(generate_finite_instance(...)); byte-identical per input.
std::string generate_instance_text(std::uint64_t seed, std::size_t size, const GeneratorParams& params = {});

} // namespace cfp
