// Command-line front end: gen, check, depth, tverberg, densify, separate, run, verify.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rainbow/rainbow.hpp"

using namespace rainbow;
using nlohmann::json;

namespace {

enum Exit { Ok = 0, Failed = 1, BadInput = 2, Gated = 3 };

struct Globals {
    std::string input, output, epsilon = "1/4", mode = "exact", svg;
    std::uint64_t seed = 0;
    std::size_t dim = 2;
    double max_exact = 1e7;
};

std::string read_file(const std::string& path) {
    if (path.empty()) throw InputError("--input is required");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw InputError("parse", "malformed " + what + ": " + e.what());
    }
}

Format format_of(const std::string& name) {
    if (name == "json") return Format::Json;
    if (name == "plain") return Format::Plain;
    throw InputError("unknown format '" + name + "'");
}

Rational resolve_epsilon(const std::string& text, std::size_t d, std::size_t n) {
    if (text == "theoretical" || text == "paper") return theoretical_constants(d, n).epsilon;
    return parse_rational(text);
}

std::vector<std::vector<Point>> point_sets_from_json(const json& j) {
    std::vector<std::vector<Point>> sets;
    for (const auto& s : j) {
        sets.emplace_back();
        for (const auto& p : s) sets.back().push_back(point_from_json(p));
    }
    return sets;
}

json point_sets_to_json(const std::vector<std::vector<Point>>& sets) {
    json out = json::array();
    for (const auto& s : sets) {
        json pts = json::array();
        for (const Point& p : s) pts.push_back(point_to_json(p));
        out.push_back(pts);
    }
    return out;
}

int report_error(const std::string& kind, const std::string& message, json extra = json::object()) {
    json err = {{"error", kind}, {"message", message}};
    err.update(extra);
    std::cerr << err.dump() << '\n';
    if (kind == "gate") return Gated;
    if (kind == "stage") return Failed;
    return BadInput;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rainbow simplices around a deep point"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--input", g.input, "Input file");
    app.add_option("--output", g.output, "Output file (default: stdout)");
    app.add_option("--seed", g.seed, "Random seed");
    app.add_option("--epsilon", g.epsilon, "Rational epsilon in (0, 1/2), or 'theoretical'");
    app.add_option("--mode", g.mode, "Extraction mode: exact or local")->check(CLI::IsMember({"exact", "local"}));
    app.add_option("--dim", g.dim, "Dimension");
    app.add_option("--max-exact", g.max_exact, "Budget for exact extraction");
    app.add_option("--svg", g.svg, "Write an SVG drawing to this file");

    std::string format = "json", distribution = "uniform-box", strategy = "exact-arrangement", report_path;
    std::size_t n = 10, k = 3, retries = 8, samples = 1000;
    std::uint64_t jitter = 1000;

    auto* gen = app.add_subcommand("gen", "Generate a random configuration");
    gen->add_option("--n", n, "Points per color");
    gen->add_option("--distribution", distribution, "uniform-box, gaussian or moment-curve-perturbed");
    gen->add_option("--jitter", jitter, "Jitter denominator");
    gen->add_option("--format", format, "json or plain");

    auto* check = app.add_subcommand("check", "Validate a configuration");
    check->add_option("--format", format, "json or plain");

    auto* depth = app.add_subcommand("depth", "Deepest point and its rainbow depth");
    depth->add_option("--strategy", strategy, "exact-arrangement or candidate-sampling");
    depth->add_option("--samples", samples, "Random points for candidate-sampling");
    depth->add_option("--format", format, "json or plain");

    auto* tverberg = app.add_subcommand("tverberg", "Search k disjoint rainbow simplices sharing a point");
    tverberg->add_option("--k", k, "Number of simplices");
    tverberg->add_option("--format", format, "json or plain");

    auto* densify = app.add_subcommand("densify", "Dense equal-size subhypergraph of a dumped hypergraph");

    auto* separate = app.add_subcommand("separate", "Trim {O} and the point sets to a separated family");

    auto* run = app.add_subcommand("run", "Full pipeline with a JSON report");
    run->add_option("--strategy", strategy, "Depth strategy");
    run->add_option("--retries", retries, "Extra extraction candidates after a failure");
    run->add_option("--format", format, "json or plain");

    auto* verify = app.add_subcommand("verify", "Re-check a report against its configuration");
    verify->add_option("--report", report_path, "Report produced by run")->required();
    verify->add_option("--format", format, "json or plain");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : BadInput;
    }

    try {
        if (*gen) {
            GeneratorSpec spec;
            spec.seed = g.seed;
            spec.n = n;
            spec.d = g.dim;
            spec.distribution = parse_distribution(distribution);
            spec.jitter = jitter;
            write_output(g.output, save_configuration(generate(spec), format_of(format)));
            return Ok;
        }
        if (*densify) {
            const PartiteHypergraph H = hypergraph_from_json(parse_json(read_file(g.input), "hypergraph"));
            const std::size_t d = H.parts() - 1;
            const Rational eps = resolve_epsilon(g.epsilon, d, H.part_sizes().empty() ? 1 : H.part_sizes()[0]);
            const SubsetTuple S = g.mode == "exact" ? extract_dense_exact(H, eps, g.max_exact)
                                                    : extract_dense_local(H, eps, g.seed);
            const PropertyResult prop = verify_property_ii(H, S, eps, 1e7, true, 10000, g.seed);
            json out = {{"S", S},
                        {"size", S[0].size()},
                        {"edge_count", edge_count(H, S)},
                        {"epsilon", to_string(eps)},
                        {"property_ii", to_string(prop.status)}};
            if (prop.status == PropertyStatus::Counterexample) out["counterexample"] = prop.counterexample;
            write_output(g.output, out.dump(2) + "\n");
            return Ok;
        }
        if (*separate) {
            const json state = parse_json(read_file(g.input), "state");
            std::vector<std::vector<Point>> sets;
            Point origin;
            try {
                sets = point_sets_from_json(state.at("sets"));
                origin = point_from_json(state.at("O"));
            } catch (const json::exception& e) {
                throw InputError("parse", std::string("state needs \"O\" and \"sets\": ") + e.what());
            }
            try {
                const TrimResult r = trim_to_separated(sets, origin);
                json out = {{"O", point_to_json(origin)},
                            {"sets", point_sets_to_json(r.sets)},
                            {"kept", r.kept},
                            {"trace", trim_trace_to_json(r.trace)}};
                write_output(g.output, out.dump(2) + "\n");
                return Ok;
            } catch (const TrimError& e) {
                return report_error("stage", e.what(), {{"stage", e.stage()}, {"trace", trim_trace_to_json(e.trace())}});
            }
        }

        const ColoredConfiguration cfg = load_configuration(read_file(g.input), format_of(format));

        if (*check) {
            json out = {{"valid", true}, {"dimension", cfg.dimension}, {"colors", cfg.colors.size()},
                        {"sizes", color_sizes(cfg)}, {"input_hash", input_hash(cfg)}};
            write_output(g.output, out.dump(2) + "\n");
            return Ok;
        }
        if (*depth) {
            SamplingBudget budget;
            budget.seed = g.seed;
            budget.random_points = samples;
            const DepthResult r = deepest_point(cfg, parse_depth_strategy(strategy), budget);
            json out = {{"witness", point_to_json(r.witness)},
                        {"depth", r.depth},
                        {"candidates_examined", r.candidates_examined},
                        {"strategy", strategy}};
            write_output(g.output, out.dump(2) + "\n");
            return Ok;
        }
        if (*tverberg) {
            const auto cert = find_disjoint_rainbow_simplices(cfg.colors, k);
            json out = {{"k", k}, {"found", cert.has_value()}};
            if (cert) {
                out["simplices"] = cert->simplices;
                out["witness"] = point_to_json(cert->witness);
                out["verified"] = verify_tverberg_certificate(cfg.colors, *cert);
            }
            write_output(g.output, out.dump(2) + "\n");
            return Ok;
        }
        if (*run) {
            PipelineParams params;
            params.epsilon = resolve_epsilon(g.epsilon, cfg.dimension, cfg.n());
            params.depth_strategy = parse_depth_strategy(strategy);
            params.mode = parse_extraction_mode(g.mode);
            params.max_exact = g.max_exact;
            params.max_retries = retries;
            params.seed = g.seed;
            params.sampling.seed = g.seed;
            ResultBundle b;
            try {
                b = run_pipeline(cfg, params);
            } catch (const TrimError& e) {
                return report_error("stage", e.what(), {{"stage", e.stage()}, {"trace", trim_trace_to_json(e.trace())}});
            } catch (const StageError& e) {
                return report_error("stage", e.what(), {{"stage", e.stage()}});
            }
            write_output(g.output, report_to_json(cfg, params, b).dump(2) + "\n");
            if (!g.svg.empty()) write_output(g.svg, render_svg(cfg, b));
            return b.verified ? Ok : Failed;
        }
        if (*verify) {
            const json report = parse_json(read_file(report_path), "report");
            if (report.value("input_hash", "") != input_hash(cfg))
                throw InputError("report was produced for a different configuration");
            Point origin;
            try {
                origin = point_from_json(report.at("O"));
            } catch (const json::exception& e) {
                throw InputError("parse", std::string("malformed report: ") + e.what());
            }
            const SubsetTuple Q = report_q_indices(cfg, report);
            const auto bad = verify_certificate(cfg, origin, Q);
            json out = {{"verified", !bad.has_value()}};
            if (bad) out["counterexample"] = *bad;
            write_output(g.output, out.dump(2) + "\n");
            return bad ? Failed : Ok;
        }
    } catch (const ValidationError& e) {
        return report_error("validation", e.what(), {{"reason", e.reason()}, {"witness", e.witness()}});
    } catch (const GateError& e) {
        return report_error("gate", e.what());
    } catch (const StageError& e) {
        return report_error("stage", e.what(), {{"stage", e.stage()}});
    } catch (const Error& e) {
        return report_error(e.kind(), e.what());
    } catch (const std::exception& e) {
        return report_error("input", e.what());
    }
    return Ok;
}
