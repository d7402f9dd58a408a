#pragma once

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "convopoly/common.hpp"
#include "convopoly/convolution.hpp"
#include "convopoly/cycles.hpp"
#include "convopoly/debruijn.hpp"
#include "convopoly/decomposition.hpp"
#include "convopoly/hull.hpp"
#include "convopoly/json_io.hpp"
#include "convopoly/oracle.hpp"
#include "convopoly/rational.hpp"
#include "convopoly/reconstruct.hpp"
#include "convopoly/walks.hpp"

namespace convopoly {

// Exit codes: 0 success, 2 invalid arguments, 3 cap exceeded, 4 malformed
// input file, 5 internal invariant violation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapExceeded = 3;
inline constexpr int kExitBadInput = 4;
inline constexpr int kExitInternal = 5;

struct RunConfig {
    std::string subcommand;
    int d = 2;
    std::string kind_text = "diff";
    long long n = 0;
    std::string n_range;
    std::vector<int> points;
    std::vector<long long> set_elements;
    bool raw = false;
    bool emit_graph = false;
    long long cap_cycles = -1; // -1: not given on the command line
    std::string format = "json";
    std::string out_path;
    std::string from_path;
    std::string lambdas_path;
    unsigned long long seed = 0;
};

namespace detail {

inline ConvKind kind_from_config(const RunConfig& cfg) {
    if (cfg.kind_text == "diff") return ConvKind::diff;
    if (cfg.kind_text == "sum") return ConvKind::sum;
    throw std::invalid_argument("--kind must be diff or sum");
}

// Precedence: --cap-cycles flag, then CONVOPOLY_CAP_CYCLES, then default.
inline long long resolve_cycle_cap(const RunConfig& cfg) {
    if (cfg.cap_cycles >= 0) {
        if (cfg.cap_cycles == 0) throw std::invalid_argument("--cap-cycles must be positive");
        return cfg.cap_cycles;
    }
    if (const char* env = std::getenv("CONVOPOLY_CAP_CYCLES")) {
        try {
            const long long cap = std::stoll(env);
            if (cap <= 0) throw std::invalid_argument("");
            return cap;
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("CONVOPOLY_CAP_CYCLES is not a positive integer: ") +
                                        env);
        }
    }
    return kDefaultCycleCap;
}

inline ShiftGraph build_graph(int d, ConvKind kind) {
    if (d < 1) throw std::invalid_argument("--d must be >= 1");
    return kind == ConvKind::diff ? build_debruijn(d) : build_double_debruijn(d);
}

inline std::pair<long long, long long> resolve_n_range(const RunConfig& cfg) {
    if (!cfg.n_range.empty()) {
        const auto colon = cfg.n_range.find(':');
        if (colon == std::string::npos) {
            throw std::invalid_argument("--n-range must look like A:B");
        }
        try {
            const long long lo = std::stoll(cfg.n_range.substr(0, colon));
            const long long hi = std::stoll(cfg.n_range.substr(colon + 1));
            if (lo < 1 || hi < lo) throw std::invalid_argument("");
            return {lo, hi};
        } catch (const std::exception&) {
            throw std::invalid_argument("--n-range must be A:B with 1 <= A <= B");
        }
    }
    if (cfg.n > 0) return {cfg.n, cfg.n};
    throw std::invalid_argument("one of --n or --n-range is required");
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void emit(const std::string& text, const RunConfig& cfg, std::ostream& out) {
    if (cfg.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + cfg.out_path);
    f << text;
}

inline void require_json_format(const RunConfig& cfg) {
    if (cfg.format != "json") {
        throw std::invalid_argument("this subcommand only supports --format json");
    }
}

inline Json graph_to_json(const ShiftGraph& g) {
    Json j;
    j["d"] = g.d;
    j["kind"] = g.kind == GraphKind::debruijn ? "debruijn" : "double_debruijn";
    j["vertices"] = g.vertex_count;
    j["out_degree"] = g.out_degree;
    Json edges = Json::array();
    for (const auto& e : g.edges) {
        edges.push_back(Json::array({e.from, e.to, static_cast<int>(e.append_sym),
                                     static_cast<int>(e.prepend_sym)}));
    }
    j["edges"] = std::move(edges);
    return j;
}

inline CornerEntry entry_from_candidate(const CornerCandidate& cand) {
    CornerEntry entry;
    entry.num = cand.counts;
    entry.den = static_cast<long long>(cand.cycle.size());
    entry.cycle = cand.cycle;
    return entry;
}

inline int cmd_corners(const RunConfig& cfg, std::ostream& out) {
    require_json_format(cfg);
    const ConvKind kind = kind_from_config(cfg);
    const long long cap = resolve_cycle_cap(cfg);
    const ShiftGraph g = build_graph(cfg.d, kind);
    const std::vector<CornerCandidate> candidates = collect_corner_candidates(g, cap);

    CornersDoc doc;
    doc.d = g.d;
    doc.kind = kind;
    if (cfg.raw) {
        for (const auto& cand : candidates) doc.corners.push_back(entry_from_candidate(cand));
    } else {
        std::vector<std::vector<Rational>> coords;
        coords.reserve(candidates.size());
        for (const auto& cand : candidates) coords.push_back(cand.coords);
        for (std::size_t idx : minimal_corner_indices(g.d, coords)) {
            doc.corners.push_back(entry_from_candidate(candidates[idx]));
        }
    }
    Json j = corners_doc_to_json(doc);
    if (cfg.emit_graph) j["graph"] = graph_to_json(g);
    emit(dump_document(j), cfg, out);
    return kExitOk;
}

inline int cmd_decompose(const RunConfig& cfg, std::ostream& out) {
    require_json_format(cfg);
    const ConvKind kind = kind_from_config(cfg);
    if (cfg.n < 1) throw std::invalid_argument("--n is required and must be positive");
    const ShiftGraph g = build_graph(cfg.d, kind);
    const IntegerSet set = kind == ConvKind::diff
                               ? IntegerSet::make(cfg.set_elements, 1, cfg.n)
                               : IntegerSet::make(cfg.set_elements, -cfg.n, cfg.n);
    const std::vector<int> open_walk =
        kind == ConvKind::diff ? encode_walk(set, g.d) : encode_double_walk(set, g.d);
    const std::vector<int> closed = close_walk(g, open_walk);
    const std::vector<long long> weights = walk_edge_weights(g, closed);
    const std::vector<WeightedCycle> peeled = decompose_edge_weights(g, weights);

    const long long total = static_cast<long long>(closed.size()) - 1;
    long long recovered = 0;
    for (const auto& wc : peeled) recovered += wc.multiplicity * wc.length();
    if (recovered != total) {
        throw InternalError("decomposition weight mismatch: " + std::to_string(recovered) +
                            " != " + std::to_string(total));
    }

    Json j;
    j["schema_version"] = kSchemaVersion;
    j["d"] = g.d;
    j["kind"] = to_string(kind);
    j["n"] = cfg.n;
    j["set"] = cfg.set_elements;
    j["total_weight"] = total;
    Json dec = Json::array();
    for (const auto& wc : peeled) {
        Json e;
        e["cycle"] = wc.vertices;
        e["n"] = wc.multiplicity;
        dec.push_back(std::move(e));
    }
    j["decomposition"] = std::move(dec);
    if (cfg.emit_graph) {
        j["graph"] = graph_to_json(g);
        j["weights"] = weights;
    }
    emit(dump_document(j), cfg, out);
    return kExitOk;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    if (cfg.format != "json" && cfg.format != "csv") {
        throw std::invalid_argument("--format must be json or csv");
    }
    const ConvKind kind = kind_from_config(cfg);
    const auto [lo, hi] = resolve_n_range(cfg);
    const long long cap = resolve_cycle_cap(cfg);
    const ShiftGraph g = build_graph(cfg.d, kind);

    std::vector<int> shifts = cfg.points.empty() ? shifts_identity(g.d) : cfg.points;
    const std::vector<CornerCandidate> candidates = collect_corner_candidates(g, cap);
    std::vector<std::vector<Rational>> coords;
    coords.reserve(candidates.size());
    for (const auto& cand : candidates) coords.push_back(cand.coords);
    Polytope full;
    full.d = g.d;
    for (std::size_t idx : minimal_corner_indices(g.d, coords)) full.corners.push_back(coords[idx]);
    const Polytope poly = static_cast<int>(shifts.size()) == g.d && shifts == shifts_identity(g.d)
                              ? full
                              : project(full, shifts);

    struct Row {
        long long n;
        std::size_t cloud_size;
        Rational forward_max;
        Rational forward_times_n;
        Rational converse_max;
    };
    std::vector<Row> rows;
    for (long long n = lo; n <= hi; ++n) {
        const SpectrumCloud cloud =
            enumerate_spectrum(static_cast<int>(shifts.size()), n, kind, shifts);
        const EnclosureReport report = enclosure_report(cloud, poly);
        rows.push_back(Row{n, cloud.points.size(), report.forward_max,
                           report.forward_max * Rational(n), report.converse_max});
    }

    if (cfg.format == "csv") {
        std::ostringstream csv;
        csv << "n,cloud_size,forward_max,forward_times_n,converse_max\n";
        for (const auto& row : rows) {
            csv << row.n << "," << row.cloud_size << "," << format_rational(row.forward_max) << ","
                << format_rational(row.forward_times_n) << "," << format_rational(row.converse_max)
                << "\n";
        }
        emit(csv.str(), cfg, out);
        return kExitOk;
    }
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["d"] = g.d;
    j["kind"] = to_string(kind);
    j["shifts"] = shifts;
    j["seed"] = cfg.seed;
    Json jrows = Json::array();
    for (const auto& row : rows) {
        Json e;
        e["n"] = row.n;
        e["cloud_size"] = row.cloud_size;
        e["forward_max"] = format_rational(row.forward_max);
        e["forward_times_n"] = format_rational(row.forward_times_n);
        e["converse_max"] = format_rational(row.converse_max);
        jrows.push_back(std::move(e));
    }
    j["rows"] = std::move(jrows);
    emit(dump_document(j), cfg, out);
    return kExitOk;
}

inline int cmd_reconstruct(const RunConfig& cfg, std::ostream& out) {
    require_json_format(cfg);
    const ConvKind kind = kind_from_config(cfg);
    if (cfg.n < 1) throw std::invalid_argument("--n is required and must be positive");
    if (cfg.lambdas_path.empty()) throw std::invalid_argument("--lambdas is required");
    const long long cap = resolve_cycle_cap(cfg);
    const ShiftGraph g = build_graph(cfg.d, kind);
    if (cfg.n < g.d) throw std::invalid_argument("--n must be at least --d");
    const std::vector<std::vector<int>> cycles = enumerate_cycles(g, cap);
    const Json lambda_doc = parse_json_text(read_text_file(cfg.lambdas_path));
    const std::vector<Rational> lambdas = parse_lambda_file(lambda_doc, cycles.size());
    const RealizeResult res = realize(g, cycles, lambdas, cfg.n);

    Json j;
    j["schema_version"] = kSchemaVersion;
    j["d"] = g.d;
    j["kind"] = to_string(kind);
    j["n"] = cfg.n;
    j["set"] = res.set.elements;
    j["target"] = rationals_to_json(res.target);
    j["achieved"] = rationals_to_json(res.achieved);
    j["linf_error"] = format_rational(res.linf_error);
    j["apriori_bound"] = format_rational(res.apriori_bound);
    emit(dump_document(j), cfg, out);
    return kExitOk;
}

inline int cmd_project(const RunConfig& cfg, std::ostream& out) {
    require_json_format(cfg);
    if (cfg.from_path.empty()) throw std::invalid_argument("--from is required");
    if (cfg.points.empty()) throw std::invalid_argument("--points is required");
    const CornersDoc source = parse_corners_doc(parse_json_text(read_text_file(cfg.from_path)));
    for (std::size_t i = 0; i < cfg.points.size(); ++i) {
        if (cfg.points[i] < 1 || cfg.points[i] > source.d) {
            throw std::invalid_argument("--points index out of range");
        }
        if (i > 0 && cfg.points[i] <= cfg.points[i - 1]) {
            throw std::invalid_argument("--points must be strictly increasing");
        }
    }
    std::vector<std::vector<Rational>> projected;
    projected.reserve(source.corners.size());
    for (const auto& entry : source.corners) {
        std::vector<Rational> row;
        row.reserve(cfg.points.size());
        for (int idx : cfg.points) {
            row.emplace_back(BigInt(entry.num[static_cast<std::size_t>(idx - 1)]),
                             BigInt(entry.den));
        }
        projected.push_back(std::move(row));
    }
    CornersDoc doc;
    doc.d = static_cast<int>(cfg.points.size());
    doc.kind = source.kind;
    for (std::size_t idx : minimal_corner_indices(doc.d, projected)) {
        const CornerEntry& src = source.corners[idx];
        CornerEntry entry;
        for (int p : cfg.points) entry.num.push_back(src.num[static_cast<std::size_t>(p - 1)]);
        entry.den = src.den;
        entry.cycle = src.cycle;
        doc.corners.push_back(std::move(entry));
    }
    emit(dump_document(corners_doc_to_json(doc)), cfg, out);
    return kExitOk;
}

} // namespace detail

// In-process entry point; main() is a thin wrapper. args excludes argv[0].
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"cycle-derived polytopes for set correlation spectra"};
    app.name("convopoly");
    RunConfig cfg;

    auto add_common = [&cfg](CLI::App* sub) {
        sub->add_option("--out", cfg.out_path, "write output to this file instead of stdout");
        sub->add_option("--format", cfg.format, "output format")->capture_default_str();
    };
    auto add_cap = [&cfg](CLI::App* sub) {
        sub->add_option("--cap-cycles", cfg.cap_cycles,
                        "cycle enumeration ceiling (overrides CONVOPOLY_CAP_CYCLES)");
    };

    CLI::App* corners = app.add_subcommand("corners", "cycle-derived corner vectors of the polytope");
    corners->add_option("--d", cfg.d, "window length")->required();
    corners->add_option("--kind", cfg.kind_text, "diff or sum")->required();
    corners->add_flag("--raw", cfg.raw, "emit every candidate instead of the minimized corner set");
    corners->add_flag("--emit-graph", cfg.emit_graph, "include the transition graph in the output");
    add_cap(corners);
    add_common(corners);

    CLI::App* verify = app.add_subcommand("verify", "brute-force enclosure check against the polytope");
    verify->add_option("--d", cfg.d, "window length")->required();
    verify->add_option("--kind", cfg.kind_text, "diff or sum")->required();
    verify->add_option("--n", cfg.n, "single interval size");
    verify->add_option("--n-range", cfg.n_range, "interval size range A:B");
    verify->add_option("--points", cfg.points, "correlation shifts x1<...<xd")->delimiter(',');
    verify->add_option("--seed", cfg.seed, "seed echoed into the report");
    add_cap(verify);
    add_common(verify);

    CLI::App* reconstruct =
        app.add_subcommand("reconstruct", "realize a hull point as an explicit set");
    reconstruct->add_option("--d", cfg.d, "window length")->required();
    reconstruct->add_option("--kind", cfg.kind_text, "diff or sum")->required();
    reconstruct->add_option("--n", cfg.n, "target interval size")->required();
    reconstruct->add_option("--lambdas", cfg.lambdas_path,
                            "JSON file mapping cycle indices to \"p/q\" weights")
        ->required();
    add_cap(reconstruct);
    add_common(reconstruct);

    CLI::App* decompose =
        app.add_subcommand("decompose", "peel the walk of a set into weighted cycles");
    decompose->add_option("--d", cfg.d, "window length")->required();
    decompose->add_option("--kind", cfg.kind_text, "diff or sum")->required();
    decompose->add_option("--n", cfg.n, "interval size")->required();
    decompose->add_option("--set", cfg.set_elements, "comma-separated set elements")->delimiter(',');
    decompose->add_flag("--emit-graph", cfg.emit_graph,
                        "include the transition graph and edge weights in the output");
    add_common(decompose);

    CLI::App* project = app.add_subcommand("project", "coordinate-select a corners document");
    project->add_option("--from", cfg.from_path, "corners JSON produced by the corners subcommand")
        ->required();
    project->add_option("--points", cfg.points, "1-indexed coordinates to keep")->delimiter(',');
    add_common(project);

    app.require_subcommand(1);

    try {
        // CLI11's vector overload consumes the arguments back to front
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(corners)) return detail::cmd_corners(cfg, out);
        if (app.got_subcommand(verify)) return detail::cmd_verify(cfg, out);
        if (app.got_subcommand(reconstruct)) return detail::cmd_reconstruct(cfg, out);
        if (app.got_subcommand(decompose)) return detail::cmd_decompose(cfg, out);
        if (app.got_subcommand(project)) return detail::cmd_project(cfg, out);
        err << "no subcommand\n";
        return kExitUsage;
    } catch (const CapExceeded& e) {
        err << "cap exceeded: " << e.what() << "\n";
        return kExitCapExceeded;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const InternalError& e) {
        err << "internal invariant violation: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::invalid_argument& e) {
        err << "invalid arguments: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

} // namespace convopoly
