#pragma once

#include "cfp/coupled_map.hpp"
#include "cfp/sampling.hpp"
#include "cfp/space.hpp"

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace cfp {

inline constexpr int kSchemaVersion = 1;
/// Largest finite space accepted; keeps O(|X|^4) enumeration desk-sized.
inline constexpr std::size_t kMaxFiniteSize = 64;

struct InstanceParameters {
    double epsilon = 1.0;
    std::optional<double> lambda_claimed;
    double tolerance = 1e-10;
    std::size_t max_iterations = 1000;

    bool operator==(const InstanceParameters&) const = default;
};

/// A fully validated problem: space, map, seeds and run parameters.
struct Instance {
    int schema_version = kSchemaVersion;
    std::string name;
    std::shared_ptr<const OrderedMetricSpace> space;
    CoupledMap map;
    Point x0;
    Point y0;
    InstanceParameters params;
    /// Declared closure of monotone limits under the order (needed when F
    /// is not continuous). Always true on finite spaces, where convergent
    /// sequences are eventually constant.
    bool order_limit_closure = false;
    SamplingPlan sampling;

    bool limit_closure_holds() const { return space->is_finite() || order_limit_closure; }

    bool operator==(const Instance& other) const;
};

/// Parses and validates an instance document. Throws ParseError (with a
/// line/column or field path), AxiomError, or DomainError.
Instance parse_instance(std::string_view text);

Instance load_instance(const std::filesystem::path& path);

/// Canonical JSON form; parse_instance(emit_instance(i)) == i.
std::string emit_instance(const Instance& instance);

} // namespace cfp
