#include "cfp/cli.hpp"

#include "cfp/error.hpp"
#include "cfp/generator.hpp"
#include "cfp/oracle.hpp"
#include "cfp/pipeline.hpp"
#include "cfp/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>

namespace cfp {

namespace {

namespace fs = std::filesystem;

struct Outcome {
    int code = kExitOk;
    Json body;
};

Point parse_cli_point(const OrderedMetricSpace& space, const std::string& text)
{
    if (space.is_finite()) {
        const auto& labels = space.labels();
        auto it = std::find(labels.begin(), labels.end(), text);
        if (it != labels.end())
            return Point::at(static_cast<std::size_t>(it - labels.begin()));
        std::size_t used = 0;
        std::size_t idx = 0;
        try {
            idx = std::stoul(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != text.size() || used == 0)
            throw DomainError("'" + text + "' is neither a point index nor a label");
        return Point::at(idx);
    }
    std::vector<double> coords;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size())
            throw DomainError("'" + text + "' is not a comma-separated list of reals");
        coords.push_back(v);
    }
    return Point::box(std::move(coords));
}

Outcome do_check(const fs::path& file)
{
    const Instance inst = load_instance(file);
    const Analysis a = analyze(inst);
    Outcome o{kExitOk, analysis_json(inst, a)};
    for (const HypothesisReport* r : a.reports())
        if (r->verdict == Verdict::violated)
            o.code = kExitViolation;
    return o;
}

struct SolveOptions {
    std::string trace_path;
    std::string format = "jsonl";
    bool no_trace = false;
};

Outcome do_solve(const fs::path& file, const SolveOptions& opt)
{
    const Instance inst = load_instance(file);
    const Analysis a = analyze(inst);
    const SolveOutcome s = run_solve(inst, a, !opt.no_trace);
    Outcome o{s.result.status == SolveStatus::converged ? kExitOk : kExitViolation,
              solve_summary_json(inst, a, s)};
    if (!opt.trace_path.empty()) {
        const TraceFormat fmt = opt.format == "csv" ? TraceFormat::csv : TraceFormat::jsonl;
        std::ofstream t(opt.trace_path, std::ios::binary);
        if (!t)
            throw Error("cannot write " + opt.trace_path);
        t << emit_trace(s.result, fmt);
    }
    return o;
}

// Runs `fn` on every *.json file of `dir` concurrently; one JSON line per
// file in name order. The exit code is the worst per-file code.
int run_batch(const fs::path& dir, const std::function<Outcome(const fs::path&)>& fn, std::ostream& out)
{
    if (!fs::is_directory(dir))
        throw Error("not a directory: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());

    std::vector<std::future<Outcome>> jobs;
    for (const auto& f : files)
        jobs.push_back(std::async(std::launch::async, [&fn, f] {
            try {
                return fn(f);
            } catch (const std::exception& e) {
                return Outcome{kExitError, Json{{"error", e.what()}}};
            }
        }));
    int worst = kExitOk;
    for (std::size_t i = 0; i < files.size(); ++i) {
        Outcome o = jobs[i].get();
        worst = std::max(worst, o.code);
        out << Json{{"file", files[i].filename().string()}, {"exit", o.code}, {"result", o.body}}.dump() << "\n";
    }
    return worst;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Coupled fixed points of mixed monotone maps: hypothesis checks, Picard solve, oracles"};
    app.name(args.empty() ? "cfp" : args[0]);
    app.require_subcommand(1);

    std::string file;
    std::string all_dir;

    auto* check = app.add_subcommand("check", "Run every hypothesis check on an instance");
    check->add_option("file", file, "Instance file");
    check->add_option("--all", all_dir, "Check every *.json file in a directory");

    SolveOptions solve_opt;
    auto* solve = app.add_subcommand("solve", "Picard solve with collapse and bound verification");
    solve->add_option("file", file, "Instance file");
    solve->add_option("--all", all_dir, "Solve every *.json file in a directory");
    solve->add_option("--trace", solve_opt.trace_path, "Write the iteration trace to this path");
    solve->add_option("--format", solve_opt.format, "Trace format")->check(CLI::IsMember({"jsonl", "csv"}));
    solve->add_flag("--no-trace", solve_opt.no_trace, "Do not record the trace");

    std::string from, to;
    std::optional<double> chain_eps;
    auto* chain = app.add_subcommand("chain", "Minimal epsilon-chain between two points");
    chain->add_option("file", file, "Instance file")->required();
    chain->add_option("--from", from, "Lower endpoint (index, label, or x1,x2,...)")->required();
    chain->add_option("--to", to, "Upper endpoint")->required();
    chain->add_option("--eps", chain_eps, "Epsilon (defaults to the instance's)");

    auto* orc = app.add_subcommand("oracle", "Exhaustive ground truth on a finite instance");
    orc->add_option("file", file, "Instance file")->required();

    std::size_t horizon = kLemmaHorizon;
    auto* lemma = app.add_subcommand("verify-lemma", "Compare iterate distances with 2 n lambda^m epsilon");
    lemma->add_option("file", file, "Instance file")->required();
    lemma->add_option("--horizon", horizon, "Largest m to check");

    std::uint64_t seed = 0;
    std::size_t size = 0;
    std::string style = "random";
    std::string out_path;
    auto* gen = app.add_subcommand("gen", "Generate a finite instance");
    gen->add_option("--seed", seed, "Generator seed")->required();
    gen->add_option("--size", size, "Number of points")->required();
    gen->add_option("--style", style, "random or contractive")->check(CLI::IsMember({"random", "contractive"}));
    gen->add_option("-o,--output", out_path, "Write to a file instead of standard output");

    std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(rest.begin(), rest.end()); // CLI11 consumes the vector from the back
    try {
        app.parse(rest);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitError;
    }

    auto need_input = [&](CLI::App* sub) {
        if (file.empty() == all_dir.empty())
            throw CLI::ValidationError(sub->get_name(), "give exactly one of <file> or --all <dir>");
    };

    try {
        if (check->parsed()) {
            need_input(check);
            if (!all_dir.empty())
                return run_batch(all_dir, do_check, out);
            Outcome o = do_check(file);
            out << o.body.dump(2) << "\n";
            return o.code;
        }
        if (solve->parsed()) {
            need_input(solve);
            if (!all_dir.empty()) {
                SolveOptions batch = solve_opt;
                batch.trace_path.clear();
                return run_batch(all_dir, [batch](const fs::path& f) { return do_solve(f, batch); }, out);
            }
            Outcome o = do_solve(file, solve_opt);
            out << o.body.dump(2) << "\n";
            return o.code;
        }
        if (chain->parsed()) {
            const Instance inst = load_instance(file);
            const OrderedMetricSpace& space = *inst.space;
            const Point a = parse_cli_point(space, from);
            const Point b = parse_cli_point(space, to);
            space.require(a);
            space.require(b);
            const double eps = chain_eps.value_or(inst.params.epsilon);
            const auto cands = make_candidates(space, inst.sampling);
            const auto c = find_epsilon_chain(space, a, b, eps, cands.points);
            Json j{{"from", point_json(a)}, {"to", point_json(b)}, {"epsilon", eps}, {"found", c.has_value()}};
            if (c)
                j["chain"] = to_json(*c);
            out << j.dump(2) << "\n";
            return c ? kExitOk : kExitViolation;
        }
        if (orc->parsed()) {
            const Instance inst = load_instance(file);
            if (!inst.space->is_finite())
                throw DomainError("oracle needs a finite instance");
            Json j = to_json(oracle::run(inst.map, inst.params.epsilon));
            j["instance"] = inst.name;
            out << j.dump(2) << "\n";
            return kExitOk;
        }
        if (lemma->parsed()) {
            const Instance inst = load_instance(file);
            const Analysis a = analyze(inst);
            const SolveOutcome s = run_solve(inst, a, false, horizon);
            Json j = to_json(s.lemma);
            j["instance"] = inst.name;
            j["lambda"] = a.lambda;
            j["epsilon"] = inst.params.epsilon;
            out << j.dump(2) << "\n";
            return s.lemma.certified() && s.lemma.all_below ? kExitOk : kExitViolation;
        }
        if (gen->parsed()) {
            const std::string text = generate_instance_text(seed, size, {parse_generator_style(style)});
            if (out_path.empty()) {
                out << text;
            } else {
                std::ofstream f(out_path, std::ios::binary);
                if (!f)
                    throw Error("cannot write " + out_path);
                f << text;
            }
            return kExitOk;
        }
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

} // namespace cfp
