#pragma once

#include "cfp/hypothesis.hpp"
#include "cfp/instance.hpp"
#include "cfp/oracle.hpp"
#include "cfp/pipeline.hpp"
#include "cfp/solver.hpp"

#include <json.hpp>

#include <string>

namespace cfp {

using Json = nlohmann::ordered_json;

/// Shortest decimal that round-trips to the same double.
std::string format_real(double v);

/// Index for finite points, a number for 1-D box points, an array otherwise.
Json point_json(const Point& p);

Json to_json(const HypothesisReport& r);
Json to_json(const ContractivityReport& r);
Json to_json(const Chain& c);
Json to_json(const LemmaReport& r);
Json to_json(const UniquenessReport& r);
Json to_json(const CollapseReport& r);
/// Point indices in sorted order.
Json to_json(const oracle::Report& r);

Json analysis_json(const Instance& instance, const Analysis& analysis);
Json solve_summary_json(const Instance& instance, const Analysis& analysis, const SolveOutcome& outcome);

enum class TraceFormat { jsonl, csv };

/// One row per recorded iteration: m, x, y, residual, eta_step, bound.
/// Box points with several coordinates are written as a JSON array (jsonl)
/// or ';'-joined (csv). eta_step is null / empty at m = 0.
std::string emit_trace(const SolveResult& result, TraceFormat format);

} // namespace cfp
