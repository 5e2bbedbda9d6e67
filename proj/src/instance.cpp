#include "cfp/instance.hpp"

#include "cfp/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace cfp {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const json& field(const json& obj, const std::string& key, const std::string& path)
{
    if (!obj.is_object())
        throw ParseError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(path.empty() ? key : path + "." + key, "missing field");
    return *it;
}

const json* optional_field(const json& obj, const std::string& key)
{
    auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::string at(const std::string& path, std::size_t i)
{
    return path + "[" + std::to_string(i) + "]";
}

// Reals may be JSON numbers or decimal strings.
double real(const json& j, const std::string& path)
{
    if (j.is_number())
        return j.get<double>();
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw ParseError(path, "'" + s + "' is not a decimal number");
        }
        if (used != s.size())
            throw ParseError(path, "'" + s + "' is not a decimal number");
        return v;
    }
    throw ParseError(path, "expected a real number");
}

std::size_t natural(const json& j, const std::string& path)
{
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw ParseError(path, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

const json& array(const json& j, const std::string& path)
{
    if (!j.is_array())
        throw ParseError(path, "expected an array");
    return j;
}

std::vector<double> reals(const json& j, const std::string& path)
{
    std::vector<double> out;
    for (std::size_t i = 0; i < array(j, path).size(); ++i)
        out.push_back(real(j[i], at(path, i)));
    return out;
}

Point parse_point(const json& j, const OrderedMetricSpace& space, const std::string& path)
{
    Point p;
    if (space.is_finite()) {
        if (j.is_string()) {
            const auto& labels = space.labels();
            auto it = std::find(labels.begin(), labels.end(), j.get<std::string>());
            if (it == labels.end())
                throw ParseError(path, "unknown point label '" + j.get<std::string>() + "'");
            p = Point::at(static_cast<std::size_t>(it - labels.begin()));
        } else {
            p = Point::at(natural(j, path));
        }
    } else if (j.is_array()) {
        p = Point::box(reals(j, path));
    } else {
        p = Point::scalar(real(j, path));
    }
    if (!space.contains(p))
        throw ParseError(path, "point " + describe(space, p) + " is not in the space");
    return p;
}

ordered_json point_json(const Point& p)
{
    if (p.is_indexed())
        return p.index;
    if (p.coords.size() == 1)
        return p.coords[0];
    return p.coords;
}

} // namespace

bool Instance::operator==(const Instance& other) const
{
    return schema_version == other.schema_version && name == other.name && *space == *other.space &&
           map == other.map && x0 == other.x0 && y0 == other.y0 && params == other.params &&
           order_limit_closure == other.order_limit_closure && sampling == other.sampling;
}

Instance parse_instance(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("byte " + std::to_string(e.byte), e.what());
    }
    if (!doc.is_object())
        throw ParseError("", "instance must be a JSON object");

    Instance inst;
    inst.schema_version = static_cast<int>(natural(field(doc, "schema_version", ""), "schema_version"));
    if (inst.schema_version != kSchemaVersion)
        throw ParseError("schema_version", "unsupported version " + std::to_string(inst.schema_version));
    if (const json* n = optional_field(doc, "name")) {
        if (!n->is_string())
            throw ParseError("name", "expected a string");
        inst.name = n->get<std::string>();
    }

    // Space.
    const json& sp = field(doc, "space", "");
    const json& kind = field(sp, "kind", "space");
    if (kind == "finite") {
        const json& pts = array(field(sp, "points", "space"), "space.points");
        if (pts.empty())
            throw ParseError("space.points", "needs at least one point");
        if (pts.size() > kMaxFiniteSize)
            throw ParseError("space.points",
                             std::to_string(pts.size()) + " points exceed the cap of " + std::to_string(kMaxFiniteSize));
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (!pts[i].is_string())
                throw ParseError(at("space.points", i), "expected a string label");
            labels.push_back(pts[i].get<std::string>());
        }
        const json& dm = array(field(sp, "distance_matrix", "space"), "space.distance_matrix");
        if (dm.size() != labels.size())
            throw ParseError("space.distance_matrix", "expected " + std::to_string(labels.size()) + " rows");
        std::vector<std::vector<double>> dist;
        for (std::size_t i = 0; i < dm.size(); ++i) {
            dist.push_back(reals(dm[i], at("space.distance_matrix", i)));
            if (dist.back().size() != labels.size())
                throw ParseError(at("space.distance_matrix", i), "expected " + std::to_string(labels.size()) + " entries");
        }
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        const json& op = array(field(sp, "order_pairs", "space"), "space.order_pairs");
        for (std::size_t i = 0; i < op.size(); ++i) {
            const std::string path = at("space.order_pairs", i);
            if (!op[i].is_array() || op[i].size() != 2)
                throw ParseError(path, "expected a [lower, upper] pair");
            auto endpoint = [&](const json& e) {
                if (e.is_string()) {
                    auto it = std::find(labels.begin(), labels.end(), e.get<std::string>());
                    if (it == labels.end())
                        throw ParseError(path, "unknown point label '" + e.get<std::string>() + "'");
                    return static_cast<std::size_t>(it - labels.begin());
                }
                const std::size_t k = natural(e, path);
                if (k >= labels.size())
                    throw ParseError(path, "point index out of range");
                return k;
            };
            pairs.emplace_back(endpoint(op[i][0]), endpoint(op[i][1]));
        }
        inst.space = std::make_shared<const OrderedMetricSpace>(
            OrderedMetricSpace::finite_from_pairs(std::move(labels), std::move(dist), pairs));
    } else if (kind == "box") {
        std::vector<double> lower = reals(field(sp, "lower", "space"), "space.lower");
        std::vector<double> upper = reals(field(sp, "upper", "space"), "space.upper");
        const std::size_t dim = natural(field(sp, "dimension", "space"), "space.dimension");
        if (dim == 0 || lower.size() != dim || upper.size() != dim)
            throw ParseError("space", "dimension, lower and upper disagree");
        try {
            inst.space = std::make_shared<const OrderedMetricSpace>(OrderedMetricSpace::box(lower, upper));
        } catch (const DomainError& e) {
            throw ParseError("space", e.what());
        }
        if (const json* g = optional_field(sp, "grid_step"))
            inst.sampling.grid_step = real(*g, "space.grid_step");
        if (!(inst.sampling.grid_step > 0))
            throw ParseError("space.grid_step", "must be positive");
    } else {
        throw ParseError("space.kind", "expected \"finite\" or \"box\"");
    }
    const OrderedMetricSpace& space = *inst.space;

    if (const json* s = optional_field(doc, "sampling")) {
        if (const json* rc = optional_field(*s, "random_count"))
            inst.sampling.random_count = natural(*rc, "sampling.random_count");
        if (const json* sd = optional_field(*s, "seed"))
            inst.sampling.seed = natural(*sd, "sampling.seed");
    }

    // Map.
    const json& mp = field(doc, "map", "");
    const json& mkind = field(mp, "kind", "map");
    if (mkind == "table") {
        if (!space.is_finite())
            throw ParseError("map.kind", "table maps need a finite space");
        const json& t = array(field(mp, "table", "map"), "map.table");
        std::vector<std::vector<std::size_t>> table;
        for (std::size_t i = 0; i < t.size(); ++i) {
            table.emplace_back();
            for (std::size_t j = 0; j < array(t[i], at("map.table", i)).size(); ++j)
                table.back().push_back(natural(t[i][j], at(at("map.table", i), j)));
        }
        try {
            inst.map = CoupledMap::from_table(inst.space, std::move(table));
        } catch (const DomainError& e) {
            throw ParseError("map.table", e.what());
        }
    } else if (mkind == "expression") {
        if (space.is_finite())
            throw ParseError("map.kind", "expression maps need a box space");
        const json& ex = field(mp, "expression", "map");
        std::vector<std::string> sources;
        if (ex.is_string()) {
            sources.push_back(ex.get<std::string>());
        } else {
            for (std::size_t i = 0; i < array(ex, "map.expression").size(); ++i) {
                if (!ex[i].is_string())
                    throw ParseError(at("map.expression", i), "expected a string");
                sources.push_back(ex[i].get<std::string>());
            }
        }
        if (sources.size() != space.dimension())
            throw ParseError("map.expression", "expected " + std::to_string(space.dimension()) + " component(s)");
        std::vector<Expression> comps;
        for (std::size_t i = 0; i < sources.size(); ++i) {
            try {
                comps.push_back(Expression::parse(sources[i], space.dimension()));
            } catch (const ParseError& e) {
                throw ParseError(ex.is_string() ? "map.expression" : at("map.expression", i), e.what());
            }
        }
        inst.map = CoupledMap::from_expressions(inst.space, std::move(comps));
        try {
            verify_closure(inst.map, make_candidates(space, inst.sampling).points);
        } catch (const OutOfSpaceError& e) {
            throw ParseError("map.expression", std::string("closure violated: ") + e.what());
        } catch (const DomainError& e) {
            throw ParseError("space.grid_step", e.what());
        }
    } else {
        throw ParseError("map.kind", "expected \"table\" or \"expression\"");
    }

    const json& seeds = field(doc, "seeds", "");
    inst.x0 = parse_point(field(seeds, "x0", "seeds"), space, "seeds.x0");
    inst.y0 = parse_point(field(seeds, "y0", "seeds"), space, "seeds.y0");

    const json& pr = field(doc, "parameters", "");
    inst.params.epsilon = real(field(pr, "epsilon", "parameters"), "parameters.epsilon");
    if (!(inst.params.epsilon > 0))
        throw ParseError("parameters.epsilon", "must be positive");
    if (const json* l = optional_field(pr, "lambda_claimed")) {
        inst.params.lambda_claimed = real(*l, "parameters.lambda_claimed");
        if (!(*inst.params.lambda_claimed > 0 && *inst.params.lambda_claimed < 1))
            throw ParseError("parameters.lambda_claimed", "must lie in (0, 1)");
    }
    if (const json* t = optional_field(pr, "tolerance"))
        inst.params.tolerance = real(*t, "parameters.tolerance");
    if (!(inst.params.tolerance > 0))
        throw ParseError("parameters.tolerance", "must be positive");
    if (const json* mi = optional_field(pr, "max_iterations"))
        inst.params.max_iterations = natural(*mi, "parameters.max_iterations");
    if (inst.params.max_iterations < 1)
        throw ParseError("parameters.max_iterations", "must be >= 1");

    if (const json* flags = optional_field(doc, "declared_flags"))
        if (const json* c = optional_field(*flags, "order_limit_closure")) {
            if (!c->is_boolean())
                throw ParseError("declared_flags.order_limit_closure", "expected a boolean");
            inst.order_limit_closure = c->get<bool>();
        }
    return inst;
}

Instance load_instance(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::string emit_instance(const Instance& inst)
{
    const OrderedMetricSpace& space = *inst.space;
    ordered_json doc;
    doc["schema_version"] = inst.schema_version;
    doc["name"] = inst.name;

    ordered_json sp;
    if (space.is_finite()) {
        const std::size_t n = space.size();
        sp["kind"] = "finite";
        sp["points"] = space.labels();
        ordered_json dm = ordered_json::array();
        for (std::size_t i = 0; i < n; ++i) {
            ordered_json row = ordered_json::array();
            for (std::size_t j = 0; j < n; ++j)
                row.push_back(space.table_distance(i, j));
            dm.push_back(std::move(row));
        }
        sp["distance_matrix"] = std::move(dm);
        ordered_json pairs = ordered_json::array();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && space.table_leq(i, j))
                    pairs.push_back({i, j});
        sp["order_pairs"] = std::move(pairs);
    } else {
        sp["kind"] = "box";
        sp["dimension"] = space.dimension();
        sp["lower"] = std::vector<double>(space.lower().begin(), space.lower().end());
        sp["upper"] = std::vector<double>(space.upper().begin(), space.upper().end());
        sp["grid_step"] = inst.sampling.grid_step;
    }
    doc["space"] = std::move(sp);

    ordered_json mp;
    if (inst.map.kind() == MapKind::table) {
        const std::size_t n = space.size();
        mp["kind"] = "table";
        ordered_json t = ordered_json::array();
        for (std::size_t i = 0; i < n; ++i) {
            ordered_json row = ordered_json::array();
            for (std::size_t j = 0; j < n; ++j)
                row.push_back(inst.map.table_at(i, j));
            t.push_back(std::move(row));
        }
        mp["table"] = std::move(t);
    } else {
        mp["kind"] = "expression";
        const auto& ex = inst.map.expressions();
        if (ex.size() == 1) {
            mp["expression"] = ex[0].source();
        } else {
            ordered_json arr = ordered_json::array();
            for (const auto& e : ex)
                arr.push_back(e.source());
            mp["expression"] = std::move(arr);
        }
    }
    doc["map"] = std::move(mp);

    doc["seeds"] = {{"x0", point_json(inst.x0)}, {"y0", point_json(inst.y0)}};

    ordered_json pr;
    pr["epsilon"] = inst.params.epsilon;
    if (inst.params.lambda_claimed)
        pr["lambda_claimed"] = *inst.params.lambda_claimed;
    pr["tolerance"] = inst.params.tolerance;
    pr["max_iterations"] = inst.params.max_iterations;
    doc["parameters"] = std::move(pr);
    doc["declared_flags"] = {{"order_limit_closure", inst.order_limit_closure}};
    doc["sampling"] = {{"random_count", inst.sampling.random_count}, {"seed", inst.sampling.seed}};
    return doc.dump(2) + "\n";
}

} // namespace cfp
