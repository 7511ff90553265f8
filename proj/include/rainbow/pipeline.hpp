#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rainbow/configuration.hpp"
#include "rainbow/depth.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/geometry.hpp"
#include "rainbow/hypergraph.hpp"
#include "rainbow/separation.hpp"

namespace rainbow {

enum class ExtractionMode { Exact, Local };

inline ExtractionMode parse_extraction_mode(const std::string& s) {
    if (s == "exact") return ExtractionMode::Exact;
    if (s == "local") return ExtractionMode::Local;
    throw InputError("unknown extraction mode '" + s + "'");
}

inline std::string to_string(ExtractionMode m) { return m == ExtractionMode::Exact ? "exact" : "local"; }

struct PipelineParams {
    Rational epsilon{1, 4};
    DepthStrategy depth_strategy = DepthStrategy::ExactArrangement;
    SamplingBudget sampling;
    ExtractionMode mode = ExtractionMode::Exact;
    double max_exact = 1e7;       ///< prefix enumerations allowed for exact extraction
    double property_gate = 1e6;   ///< enumerations allowed when checking property (ii)
    std::size_t max_retries = 8;  ///< extra extraction candidates tried after a failure
    std::size_t max_trim_steps = 1000;
    std::uint64_t seed = 0;
};

inline nlohmann::ordered_json params_to_json(const PipelineParams& p) {
    return {{"epsilon", to_string(p.epsilon)},
            {"depth_strategy", to_string(p.depth_strategy)},
            {"mode", to_string(p.mode)},
            {"max_exact", p.max_exact},
            {"property_gate", p.property_gate},
            {"max_retries", p.max_retries},
            {"max_trim_steps", p.max_trim_steps},
            {"seed", p.seed}};
}

/// One extraction candidate tried by the pipeline.
struct Attempt {
    std::string source;   ///< "exact#k" or "local-seed#s"
    std::string outcome;  ///< "verified", or the failing stage
    std::string message;
    std::vector<std::size_t> extracted_sizes;
};

struct ResultBundle {
    Point origin;
    std::uint64_t depth = 0;
    SubsetTuple q_indices;
    std::vector<std::vector<Point>> q_points;
    std::vector<Rational> ratios;  ///< |Q_i| / |P_i|
    TrimTrace trace;
    std::string extraction_used;
    std::uint64_t edges_hypergraph = 0;
    std::uint64_t edges_extracted = 0;
    std::uint64_t edges_trimmed = 0;
    std::string property_ii;
    std::vector<Attempt> attempts;
    std::optional<std::vector<std::size_t>> counterexample;
    bool verified = false;
};

// ---------------------------------------------------------------------------
// Independent checks

namespace detail {

// Barycentric coordinates of p by Cramer's rule on the homogeneous system.
inline std::vector<Rational> barycentric(const std::vector<Point>& simplex, const Point& p) {
    const std::size_t d = p.dimension();
    auto matrix = [&](std::size_t replace) {
        std::vector<std::vector<Rational>> m(d + 1, std::vector<Rational>(d + 1));
        for (std::size_t col = 0; col <= d; ++col) {
            const Point& v = col == replace ? p : simplex[col];
            for (std::size_t row = 0; row < d; ++row) m[row][col] = v[row];
            m[d][col] = 1;
        }
        return m;
    };
    const Rational det = determinant(matrix(d + 1));
    if (sgn(det) == 0) throw InputError("degenerate simplex");
    std::vector<Rational> lambda(d + 1);
    for (std::size_t i = 0; i <= d; ++i) lambda[i] = determinant(matrix(i)) / det;
    return lambda;
}

inline ColoredConfiguration sub_configuration(const ColoredConfiguration& cfg, const SubsetTuple& Q) {
    ColoredConfiguration sub{cfg.dimension, {}};
    for (std::size_t c = 0; c < Q.size(); ++c) {
        sub.colors.emplace_back();
        for (std::size_t i : Q[c]) sub.colors.back().push_back(cfg.at(c, i));
    }
    return sub;
}

}  // namespace detail

/// Brute force over every rainbow tuple of the Q_i. Returns the first tuple
/// (configuration indices) whose simplex does not strictly contain O, or
/// nullopt when all do.
inline std::optional<std::vector<std::size_t>> verify_certificate(const ColoredConfiguration& cfg, const Point& origin,
                                                                  const SubsetTuple& Q) {
    if (Q.size() != cfg.colors.size()) throw InputError("certificate needs one subset per color");
    if (origin.dimension() != cfg.dimension) throw InputError("origin dimension mismatch");
    std::vector<std::size_t> sizes;
    for (std::size_t c = 0; c < Q.size(); ++c) {
        if (Q[c].empty()) throw InputError("certificate subsets must be nonempty");
        for (std::size_t i : Q[c])
            if (i >= cfg.colors[c].size()) throw InputError("certificate index out of range");
        sizes.push_back(Q[c].size());
    }
    if (on_multicolored_hyperplane(detail::sub_configuration(cfg, Q), origin))
        throw InputError("ambiguous", "origin " + to_string(origin) + " lies on a spanned hyperplane");
    std::optional<std::vector<std::size_t>> bad;
    std::vector<Point> simplex(cfg.dimension + 1);
    for_each_product(sizes, [&](const std::vector<std::size_t>& idx) {
        std::vector<std::size_t> tuple(idx.size());
        for (std::size_t c = 0; c < idx.size(); ++c) {
            tuple[c] = Q[c][idx[c]];
            simplex[c] = cfg.at(c, tuple[c]);
        }
        const auto lambda = detail::barycentric(simplex, origin);
        if (!std::all_of(lambda.begin(), lambda.end(), [](const Rational& x) { return sgn(x) > 0; })) {
            bad = std::move(tuple);
            return false;
        }
        return true;
    });
    return bad;
}

enum class Dichotomy { All, None, Mixed };

inline std::string to_string(Dichotomy x) {
    return x == Dichotomy::All ? "all" : (x == Dichotomy::None ? "none" : "mixed");
}

/// Classifies containment of O over every rainbow simplex of the Q_i.
/// Requires {O}, Q_1, ..., Q_{d+1} to be a separated family.
inline Dichotomy all_or_none_check(const std::vector<std::vector<Point>>& Q, const Point& origin) {
    std::vector<std::vector<Point>> bodies{{origin}};
    bodies.insert(bodies.end(), Q.begin(), Q.end());
    if (!is_separated_family(bodies))
        throw InputError("precondition", "{O} and the hulls of the Q_i are not a separated family");
    std::vector<std::size_t> sizes;
    for (const auto& q : Q) sizes.push_back(q.size());
    bool some_in = false, some_out = false;
    std::vector<Point> simplex(Q.size());
    for_each_product(sizes, [&](const std::vector<std::size_t>& idx) {
        for (std::size_t c = 0; c < idx.size(); ++c) simplex[c] = Q[c][idx[c]];
        (point_in_simplex_interior(origin, simplex) ? some_in : some_out) = true;
        return !(some_in && some_out);
    });
    return some_in && some_out ? Dichotomy::Mixed : (some_in ? Dichotomy::All : Dichotomy::None);
}

// ---------------------------------------------------------------------------
// Pipeline

/// Deepest point O, the hypergraph of rainbow simplices around O, a dense
/// equal-size extraction, trimming to a separated family, and an independent
/// brute-force check. A failed trim or check moves on to the next extraction
/// candidate. Throws StageError when every candidate fails before the check.
inline ResultBundle run_pipeline(const ColoredConfiguration& cfg, const PipelineParams& params) {
    validate(cfg);
    if (cfg.dimension != 2) throw GateError("unsupported dimension: the pipeline needs d = 2");
    if (sgn(params.epsilon) <= 0 || params.epsilon >= Rational(1, 2))
        throw InputError("epsilon must lie in (0, 1/2)");
    for (const auto& c : cfg.colors)
        if (c.size() != cfg.n()) throw InputError("the pipeline needs equal color class sizes");

    ResultBundle b;
    const DepthResult deep = deepest_point(cfg, params.depth_strategy, params.sampling);
    b.origin = deep.witness;
    b.depth = deep.depth;

    const DepthCount around = rainbow_depth_at(cfg, b.origin);
    if (around.count != b.depth)
        throw StageError("hypergraph", "edge count " + std::to_string(around.count) + " differs from depth " +
                                           std::to_string(b.depth));
    if (around.count == 0) throw StageError("hypergraph", "empty hypergraph: depth at O is 0");
    const PartiteHypergraph H = containment_hypergraph(cfg, around.tuples);
    b.edges_hypergraph = H.edge_total();

    std::vector<SubsetTuple> exact_candidates;
    bool use_exact = params.mode == ExtractionMode::Exact && exact_extraction_cost(H) <= params.max_exact;
    if (use_exact) exact_candidates = rank_dense_exact(H, params.epsilon, params.max_retries + 1, params.max_exact);
    b.extraction_used = use_exact ? "exact" : "local";
    const std::size_t rounds = use_exact ? exact_candidates.size() : params.max_retries + 1;

    std::optional<StageError> last_error;
    std::optional<TrimTrace> last_trace;
    for (std::size_t r = 0; r < rounds; ++r) {
        Attempt attempt;
        SubsetTuple S;
        if (use_exact) {
            S = exact_candidates[r];
            attempt.source = "exact#" + std::to_string(r);
        } else {
            S = extract_dense_local(H, params.epsilon, params.seed + r);
            attempt.source = "local-seed#" + std::to_string(params.seed + r);
        }
        for (const auto& s : S) attempt.extracted_sizes.push_back(s.size());

        std::vector<std::vector<Point>> sets;
        for (std::size_t c = 0; c < S.size(); ++c) {
            sets.emplace_back();
            for (std::size_t i : S[c]) sets.back().push_back(cfg.at(c, i));
        }
        TrimResult trimmed;
        try {
            trimmed = trim_to_separated(sets, b.origin, params.max_trim_steps);
        } catch (const TrimError& e) {
            attempt.outcome = "trim";
            attempt.message = e.what();
            b.attempts.push_back(std::move(attempt));
            last_error = e;
            last_trace = e.trace();
            continue;
        }
        SubsetTuple Q(S.size());
        for (std::size_t c = 0; c < S.size(); ++c)
            for (std::size_t k : trimmed.kept[c]) Q[c].push_back(S[c][k]);

        const auto bad = verify_certificate(cfg, b.origin, Q);
        b.q_indices = Q;
        b.q_points = trimmed.sets;
        b.trace = trimmed.trace;
        b.edges_extracted = edge_count(H, S);
        b.edges_trimmed = edge_count(H, Q);
        b.counterexample = bad;
        b.verified = !bad.has_value();
        attempt.outcome = b.verified ? "verified" : "verify";
        attempt.message = b.verified ? "" : "O misses a rainbow simplex of the trimmed sets";
        b.attempts.push_back(std::move(attempt));
        if (b.verified) {
            const PropertyResult prop = verify_property_ii(H, S, params.epsilon, params.property_gate, true, 2000,
                                                           params.seed);
            b.property_ii = to_string(prop.status);
            break;
        }
        last_error.reset();
    }
    if (!b.verified && last_error && b.q_indices.empty()) {
        if (last_trace) throw TrimError(std::string(last_error->what()) + " (all candidates failed)", *last_trace);
        throw *last_error;
    }
    b.ratios.clear();
    for (std::size_t c = 0; c < b.q_indices.size(); ++c) {
        Rational r(static_cast<unsigned long>(b.q_indices[c].size()), static_cast<unsigned long>(cfg.colors[c].size()));
        r.canonicalize();
        b.ratios.push_back(r);
    }
    return b;
}

inline std::string input_hash(const ColoredConfiguration& cfg) { return fnv1a_hex(save_configuration(cfg)); }

inline nlohmann::ordered_json report_to_json(const ColoredConfiguration& cfg, const PipelineParams& params,
                                             const ResultBundle& b) {
    nlohmann::ordered_json Q = nlohmann::ordered_json::array(), ratios = nlohmann::ordered_json::array();
    for (const auto& set : b.q_points) {
        nlohmann::ordered_json pts = nlohmann::ordered_json::array();
        for (const Point& p : set) pts.push_back(nlohmann::ordered_json(point_to_json(p)));
        Q.push_back(pts);
    }
    for (const Rational& r : b.ratios) ratios.push_back(to_string(r));
    nlohmann::ordered_json attempts = nlohmann::ordered_json::array();
    for (const Attempt& a : b.attempts)
        attempts.push_back({{"source", a.source},
                            {"outcome", a.outcome},
                            {"message", a.message},
                            {"extracted_sizes", a.extracted_sizes}});
    nlohmann::ordered_json stats = {{"extraction", b.extraction_used},
                                    {"edges", {{"hypergraph", b.edges_hypergraph},
                                               {"extracted", b.edges_extracted},
                                               {"trimmed", b.edges_trimmed}}},
                                    {"property_ii", b.property_ii},
                                    {"attempts", attempts}};
    nlohmann::ordered_json out = {{"schema_version", 1},
                                  {"input_hash", input_hash(cfg)},
                                  {"params", params_to_json(params)},
                                  {"O", nlohmann::ordered_json(point_to_json(b.origin))},
                                  {"depth", b.depth},
                                  {"Q", Q},
                                  {"Q_indices", b.q_indices},
                                  {"sizes", nlohmann::ordered_json::array()},
                                  {"ratios", ratios},
                                  {"trace", trim_trace_to_json(b.trace)},
                                  {"stats", stats},
                                  {"verified", b.verified}};
    for (const auto& q : b.q_indices) out["sizes"].push_back(q.size());
    if (b.counterexample) out["counterexample"] = *b.counterexample;
    return out;
}

/// Maps the report's Q points back to configuration indices.
inline SubsetTuple report_q_indices(const ColoredConfiguration& cfg, const nlohmann::json& report) {
    try {
        const auto& Q = report.at("Q");
        if (Q.size() != cfg.colors.size()) throw InputError("report Q needs one set per color");
        SubsetTuple out(Q.size());
        for (std::size_t c = 0; c < Q.size(); ++c) {
            for (const auto& pj : Q[c]) {
                const Point p = point_from_json(pj);
                const auto& col = cfg.colors[c];
                const auto it = std::find(col.begin(), col.end(), p);
                if (it == col.end())
                    throw InputError("report point " + to_string(p) + " is not in color class " + std::to_string(c));
                out[c].push_back(static_cast<std::size_t>(it - col.begin()));
            }
            std::sort(out[c].begin(), out[c].end());
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("parse", std::string("malformed report: ") + e.what());
    }
}

}  // namespace rainbow
