#include "cfp/report.hpp"

#include <charconv>
#include <cmath>

namespace cfp {

namespace {

Json points_json(const std::vector<Point>& pts)
{
    Json arr = Json::array();
    for (const auto& p : pts)
        arr.push_back(point_json(p));
    return arr;
}

Json quadruple_json(const Quadruple& q)
{
    return points_json({q.x, q.u, q.y, q.v});
}

std::string point_text(const Point& p, TraceFormat format)
{
    if (p.is_indexed())
        return std::to_string(p.index);
    if (p.coords.size() == 1)
        return format_real(p.coords[0]);
    std::string out = format == TraceFormat::jsonl ? "[" : "";
    for (std::size_t i = 0; i < p.coords.size(); ++i) {
        if (i)
            out += format == TraceFormat::jsonl ? "," : ";";
        out += format_real(p.coords[i]);
    }
    if (format == TraceFormat::jsonl)
        out += "]";
    return out;
}

} // namespace

std::string format_real(double v)
{
    if (!std::isfinite(v))
        return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

Json point_json(const Point& p)
{
    if (p.is_indexed())
        return p.index;
    if (p.coords.size() == 1)
        return p.coords[0];
    return p.coords;
}

Json to_json(const HypothesisReport& r)
{
    Json j;
    j["hypothesis"] = r.hypothesis;
    j["verdict"] = std::string(to_string(r.verdict));
    j["witness"] = points_json(r.witness);
    if (!r.detail.empty())
        j["detail"] = r.detail;
    j["mode"] = r.exhaustive ? "exhaustive" : "sampled";
    j["sample_seed"] = r.sample_seed;
    j["sample_size"] = r.sample_size;
    if (r.epsilon)
        j["epsilon"] = *r.epsilon;
    if (r.lambda_hat)
        j["lambda_hat"] = *r.lambda_hat;
    if (r.max_n)
        j["max_n"] = *r.max_n;
    return j;
}

Json to_json(const ContractivityReport& r)
{
    Json j;
    j["epsilon"] = r.epsilon;
    j["lambda_hat"] = r.lambda_hat;
    j["violated"] = r.violated;
    j["witness"] = quadruple_json(r.witness);
    j["first_violation"] = r.first_violation ? quadruple_json(*r.first_violation) : Json();
    j["pairs_tested"] = r.pairs_tested;
    j["mode"] = r.exhaustive ? "exhaustive" : "sampled";
    j["sample_seed"] = r.sample_seed;
    j["sample_size"] = r.sample_size;
    return j;
}

Json to_json(const Chain& c)
{
    return {{"epsilon", c.epsilon}, {"n", c.n()}, {"points", points_json(c.points)}};
}

Json to_json(const LemmaReport& r)
{
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"m", row.m}, {"observed", row.observed}, {"bound", row.bound}});
    Json j;
    j["chain_n"] = r.chain_n;
    j["certified"] = r.certified();
    j["uncertified"] = r.uncertified;
    j["all_below"] = r.all_below;
    j["decaying"] = r.decaying;
    j["rows"] = std::move(rows);
    return j;
}

Json to_json(const UniquenessReport& r)
{
    return {{"verdict", std::string(to_string(r.verdict))},
            {"direct", r.direct},
            {"eta_between", r.eta_between},
            {"eta_to_first", r.eta_to_first},
            {"eta_to_second", r.eta_to_second}};
}

Json to_json(const CollapseReport& r)
{
    Json j{{"verdict", std::string(to_string(r.verdict))}, {"gap", r.gap}};
    if (!r.reason.empty())
        j["reason"] = r.reason;
    return j;
}

Json to_json(const oracle::Report& r)
{
    Json fps = Json::array();
    for (const auto& [x, y] : r.fixed_points)
        fps.push_back({x, y});
    Json j;
    j["fixed_points"] = std::move(fps);

    const auto& c = r.contraction;
    Json cj;
    cj["vacuous"] = c.vacuous;
    cj["violated"] = c.violated;
    cj["exact_lambda"] = c.exact_lambda;
    cj["argmax"] = c.argmax ? Json(*c.argmax) : Json();
    cj["first_violation"] = c.first_violation ? Json(*c.first_violation) : Json();
    cj["admissible"] = c.admissible;
    j["contraction"] = std::move(cj);

    Json chains = Json::array();
    for (std::size_t a = 0; a < r.chains.size(); ++a)
        for (std::size_t b = 0; b < r.chains[a].size(); ++b) {
            const auto& e = r.chains[a][b];
            if (!e.comparable)
                continue;
            chains.push_back({{"from", a}, {"to", b}, {"n", e.n ? Json(*e.n) : Json("unreachable")}});
        }
    j["min_chain_n"] = std::move(chains);
    return j;
}

Json analysis_json(const Instance& instance, const Analysis& analysis)
{
    Json reports = Json::array();
    for (const HypothesisReport* r : analysis.reports())
        reports.push_back(to_json(*r));
    Json j;
    j["instance"] = instance.name;
    j["reports"] = std::move(reports);
    if (analysis.contraction_estimate)
        j["contraction_estimate"] = to_json(*analysis.contraction_estimate);
    j["lambda"] = analysis.lambda;
    j["lambda_certified"] = analysis.lambda_certified;
    j["trajectory_chain_n"] = analysis.trajectory_chain_n;
    j["order_limit_closure"] = instance.limit_closure_holds();
    j["existence_certified"] = analysis.existence_certified();
    j["uniqueness_certified"] = analysis.uniqueness_certified();
    return j;
}

Json solve_summary_json(const Instance& instance, const Analysis& analysis, const SolveOutcome& outcome)
{
    const SolveResult& r = outcome.result;
    Json j;
    j["instance"] = instance.name;
    j["status"] = std::string(to_string(r.status));
    j["iterations_used"] = r.iterations_used;
    j["fixed_point"] = {point_json(r.fixed_pair.first), point_json(r.fixed_pair.second)};
    j["residual"] = r.bound_check.empty() ? Json() : Json(r.bound_check.back().observed);
    if (!r.diagnostic.empty())
        j["diagnostic"] = r.diagnostic;
    j["collapse"] = {{"gap", r.collapse_gap},
                     {"equal", r.collapse_equal},
                     {"pair_bounds", to_json(outcome.collapse_pair_bounds)},
                     {"comparable_seeds", to_json(outcome.collapse_comparable_seeds)}};
    j["bound_check"] = {{"advisory", r.bound_advisory}, {"respected", r.bound_respected}};
    j["lambda"] = analysis.lambda;
    j["epsilon"] = instance.params.epsilon;
    j["chain_n"] = analysis.trajectory_chain_n;
    j["existence_certified"] = analysis.existence_certified();
    Json lemma = to_json(outcome.lemma);
    lemma.erase("rows");
    j["lemma"] = std::move(lemma);
    return j;
}

std::string emit_trace(const SolveResult& result, TraceFormat format)
{
    std::string out;
    if (format == TraceFormat::csv)
        out += "m,x,y,residual,eta_step,bound\n";
    for (const auto& row : result.trace) {
        const std::string eta = row.eta_step ? format_real(*row.eta_step) : (format == TraceFormat::jsonl ? "null" : "");
        if (format == TraceFormat::jsonl) {
            out += "{\"m\":" + std::to_string(row.m) + ",\"x\":" + point_text(row.x, format) +
                   ",\"y\":" + point_text(row.y, format) + ",\"residual\":" + format_real(row.residual) +
                   ",\"eta_step\":" + eta + ",\"bound\":" + format_real(row.bound) + "}\n";
        } else {
            out += std::to_string(row.m) + "," + point_text(row.x, format) + "," + point_text(row.y, format) + "," +
                   format_real(row.residual) + "," + eta + "," + format_real(row.bound) + "\n";
        }
    }
    return out;
}

} // namespace cfp
