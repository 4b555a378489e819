#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "eqcol/errors.hpp"
#include "eqcol/graph.hpp"
#include "eqcol/json_io.hpp"
#include "eqcol/oracle.hpp"
#include "eqcol/rng.hpp"
#include "eqcol/solver.hpp"

namespace {

using namespace eqcol;

Graph load_graph(const std::string& path) {
    if (path == "-") return parse_dimacs(std::cin);
    return parse_dimacs_file(path);
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot open output file: " + out_path);
    out << text;
    if (!out) throw InputError("failed writing output file: " + out_path);
}

void emit(const nlohmann::json& doc, const std::string& out_path) {
    write_output(dump_json(doc), out_path);
}

// Smallest k with k >= max_degree/d + 1, the range where solve is guaranteed
// to succeed. d = 0 degenerates to proper colouring, so max_degree + 1.
int auto_k(const Graph& g, int d) {
    int delta = g.max_degree();
    if (d == 0) return delta + 1;
    return (delta + d - 1) / d + 1;
}

struct SolveArgs {
    std::string input;
    std::string out_path;
    int d = 1;
    int k = 0; // 0 = auto
    std::uint64_t seed = 0;
    bool diagnose = false;
    int oracle_fallback_n = 20;
};

int run_solve(const SolveArgs& args) {
    Graph g = load_graph(args.input);
    SolveConfig config;
    config.d = args.d;
    config.k = args.k > 0 ? args.k : auto_k(g, args.d);
    config.rng_seed = args.seed;
    config.diagnostics = args.diagnose;
    config.oracle_fallback_n = args.oracle_fallback_n;
    SolveOutcome out = solve(g, config);
    if (args.diagnose) {
        // Streamed trace, one JSON object per line; the full document embeds
        // the same entries.
        for (const auto& entry : trace_json(out.trace)) std::cerr << entry.dump() << "\n";
    }
    emit(solve_json(g, config, out), args.out_path);
    switch (out.status) {
    case SolveStatus::Solved:
        return 0;
    case SolveStatus::InfeasibleProven:
    case SolveStatus::GaveUp:
        return 1;
    case SolveStatus::TheoryViolation:
        return 3;
    }
    return 2;
}

struct VerifyArgs {
    std::string graph_path;
    std::string colouring_path;
    std::string out_path;
    int d = -1; // -1 = take the document's threshold
    int k = 0;  // 0 = no cross-check
};

int run_verify(const VerifyArgs& args) {
    if (args.graph_path == "-" && args.colouring_path == "-")
        throw InputError("only one of the two inputs may be standard input");
    Graph g = load_graph(args.graph_path);
    ColouringDocument doc;
    if (args.colouring_path == "-") {
        doc = parse_colouring_json(std::cin);
    } else {
        std::ifstream in(args.colouring_path);
        if (!in) throw InputError("cannot open colouring file: " + args.colouring_path);
        doc = parse_colouring_json(in);
    }
    if (args.k > 0 && args.k != doc.colouring.k())
        throw InputError("--k disagrees with the colouring document");
    if (doc.colouring.n() != g.vertex_count())
        throw InputError("colouring covers " + std::to_string(doc.colouring.n()) +
                         " vertices but the graph has " + std::to_string(g.vertex_count()));
    int d = args.d >= 0 ? args.d : doc.d;
    nlohmann::json report = verify_json(g, doc.colouring, d);
    emit(report, args.out_path);
    return report["valid"].get<bool>() && report["equitable"].get<bool>() ? 0 : 1;
}

struct OracleArgs {
    std::string input;
    std::string out_path;
    int d = 1;
    int k = 0; // 0 = auto
};

int run_oracle(const OracleArgs& args) {
    Graph g = load_graph(args.input);
    int k = args.k > 0 ? args.k : auto_k(g, args.d);
    OracleVerdict verdict = oracle_find(g, args.d, k);
    emit(oracle_json(g, args.d, k, verdict), args.out_path);
    return verdict.feasible ? 0 : 1;
}

struct ScanArgs {
    std::string conjecture;
    std::string mode = "exhaustive";
    std::string out_path;
    int nmax = 0;
    int d = 1;
    std::uint64_t seed = 0;
    int jobs = 1;
};

int run_scan(const ScanArgs& args) {
    Conjecture conjecture = args.conjecture == "evac" ? Conjecture::EVAC : Conjecture::EDC;
    ScanMode mode = ScanMode::exhaustive_labelled();
    const std::string sample_prefix = "sample:";
    if (args.mode.rfind(sample_prefix, 0) == 0) {
        int count = 0;
        try {
            size_t used = 0;
            std::string digits = args.mode.substr(sample_prefix.size());
            count = std::stoi(digits, &used);
            if (used != digits.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw InputError("mode must be 'exhaustive' or 'sample:COUNT'");
        }
        if (count < 1) throw InputError("sample count must be positive");
        mode = ScanMode::random_sample(count, args.seed);
    } else if (args.mode != "exhaustive") {
        throw InputError("mode must be 'exhaustive' or 'sample:COUNT'");
    }
    ScanReport report = scan_conjecture(conjecture, args.nmax, mode, args.d, args.jobs);
    emit(scan_json(report), args.out_path);
    return report.counterexamples.empty() ? 0 : 1;
}

struct GenerateArgs {
    std::string out_path;
    int n = 0;
    int delta_max = 3;
    double density = 0.5;
    std::uint64_t seed = 0;
};

int run_generate(const GenerateArgs& args) {
    Graph g = random_bounded_degree_graph(args.n, args.delta_max, args.density, args.seed);
    write_output(serialize_dimacs(g), args.out_path);
    return 0;
}

struct BenchArgs {
    std::string out_path;
    int count = 20;
    int nmax = 40;
    int delta_max = 8;
    double density = 0.5;
    int d = 1;
    int k = 0; // 0 = auto per instance
    std::uint64_t seed = 0;
    int oracle_fallback_n = 20;
};

int run_bench(const BenchArgs& args) {
    Rng rng(args.seed);
    long long solved = 0, infeasible = 0, gave_up = 0, violations = 0;
    long long rounds = 0, restarts = 0;
    long long paths = 0, trims = 0, rotations = 0, exchanges = 0, tree_swaps = 0;
    auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < args.count; ++i) {
        int n = rng.uniform_int(1, args.nmax);
        Graph g = random_bounded_degree_graph(n, args.delta_max, args.density, rng.next_u64());
        SolveConfig config;
        config.d = args.d;
        config.k = args.k > 0 ? args.k : auto_k(g, args.d);
        config.rng_seed = rng.next_u64();
        config.oracle_fallback_n = args.oracle_fallback_n;
        SolveOutcome out = solve(g, config);
        switch (out.status) {
        case SolveStatus::Solved: ++solved; break;
        case SolveStatus::InfeasibleProven: ++infeasible; break;
        case SolveStatus::GaveUp: ++gave_up; break;
        case SolveStatus::TheoryViolation: ++violations; break;
        }
        rounds += out.repair_rounds;
        restarts += out.restarts_used;
        paths += out.paths;
        trims += out.trims;
        rotations += out.rotations;
        exchanges += out.exchanges;
        tree_swaps += out.tree_swaps;
    }
    auto elapsed = std::chrono::steady_clock::now() - start;
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();

    // Wall time goes to the error stream so the JSON document stays
    // byte-identical for a fixed seed.
    std::cerr << "bench: " << args.count << " instances in " << ms << " ms\n";

    nlohmann::json doc;
    doc["count"] = args.count;
    doc["d"] = args.d;
    doc["delta_max"] = args.delta_max;
    doc["density"] = args.density;
    doc["k"] = args.k > 0 ? nlohmann::json(args.k) : nlohmann::json(nullptr);
    doc["nmax"] = args.nmax;
    doc["seed"] = args.seed;
    doc["solved"] = solved;
    doc["infeasible"] = infeasible;
    doc["gave_up"] = gave_up;
    doc["theory_violations"] = violations;
    doc["repair_rounds"] = rounds;
    doc["restarts_used"] = restarts;
    doc["move_counts"] = {{"paths", paths},
                          {"trims", trims},
                          {"rotations", rotations},
                          {"exchanges", exchanges},
                          {"tree_swaps", tree_swaps}};
    emit(doc, args.out_path);
    if (violations > 0) return 3;
    return gave_up > 0 ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"equitable d-degenerate colouring toolkit"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* solve_cmd = app.add_subcommand("solve", "colour a graph equitably");
    solve_cmd->add_option("input", solve_args.input, "DIMACS graph file, or - for stdin")
        ->required();
    solve_cmd->add_option("--d", solve_args.d, "degeneracy threshold for each class")
        ->check(CLI::NonNegativeNumber);
    solve_cmd
        ->add_option("--k", solve_args.k,
                     "class count (default: smallest k with k >= max_degree/d + 1)")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_option("--seed", solve_args.seed, "seed for restart shuffles");
    solve_cmd->add_flag("--diagnose", solve_args.diagnose,
                        "record a repair trace and stuck-state reports");
    solve_cmd
        ->add_option("--oracle-fallback-n", solve_args.oracle_fallback_n,
                     "largest n handed to the exact oracle after attempts are exhausted")
        ->check(CLI::NonNegativeNumber);
    solve_cmd->add_option("--out", solve_args.out_path, "write the JSON document here");

    VerifyArgs verify_args;
    CLI::App* verify_cmd = app.add_subcommand("verify", "check a colouring document");
    verify_cmd->add_option("graph", verify_args.graph_path, "DIMACS graph file, or - for stdin")
        ->required();
    verify_cmd
        ->add_option("colouring", verify_args.colouring_path,
                     "colouring JSON file, or - for stdin")
        ->required();
    verify_cmd
        ->add_option("--d", verify_args.d,
                     "degeneracy threshold (default: the document's value)")
        ->check(CLI::NonNegativeNumber);
    verify_cmd->add_option("--k", verify_args.k, "cross-check the document's class count")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--out", verify_args.out_path, "write the JSON report here");

    OracleArgs oracle_args;
    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "exact feasibility by exhaustive search (small n)");
    oracle_cmd->add_option("input", oracle_args.input, "DIMACS graph file, or - for stdin")
        ->required();
    oracle_cmd->add_option("--d", oracle_args.d, "degeneracy threshold for each class")
        ->check(CLI::NonNegativeNumber);
    oracle_cmd
        ->add_option("--k", oracle_args.k,
                     "class count (default: smallest k with k >= max_degree/d + 1)")
        ->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--out", oracle_args.out_path, "write the JSON document here");

    ScanArgs scan_args;
    CLI::App* scan_cmd = app.add_subcommand("scan", "search a conjecture for counterexamples");
    scan_cmd->add_option("--conjecture", scan_args.conjecture, "evac or edc")
        ->required()
        ->check(CLI::IsMember({"evac", "edc"}));
    scan_cmd->add_option("--nmax", scan_args.nmax, "largest vertex count scanned")
        ->required()
        ->check(CLI::PositiveNumber);
    scan_cmd->add_option("--mode", scan_args.mode, "exhaustive or sample:COUNT");
    scan_cmd->add_option("--d", scan_args.d, "degeneracy threshold (edc only)")
        ->check(CLI::NonNegativeNumber);
    scan_cmd->add_option("--seed", scan_args.seed, "seed for sample mode");
    scan_cmd->add_option("--jobs", scan_args.jobs, "worker threads")
        ->check(CLI::PositiveNumber);
    scan_cmd->add_option("--out", scan_args.out_path, "write the JSON report here");

    GenerateArgs generate_args;
    CLI::App* generate_cmd =
        app.add_subcommand("generate", "emit a seeded bounded-degree random graph");
    generate_cmd->add_option("--n", generate_args.n, "vertex count")
        ->required()
        ->check(CLI::NonNegativeNumber);
    generate_cmd->add_option("--delta-max", generate_args.delta_max, "degree cap")
        ->check(CLI::NonNegativeNumber);
    generate_cmd->add_option("--density", generate_args.density, "edge acceptance probability")
        ->check(CLI::Range(0.0, 1.0));
    generate_cmd->add_option("--seed", generate_args.seed, "generator seed");
    generate_cmd->add_option("--out", generate_args.out_path, "write the DIMACS text here");

    BenchArgs bench_args;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "solve a seeded random family and tally outcomes");
    bench_cmd->add_option("--count", bench_args.count, "number of instances")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--nmax", bench_args.nmax, "largest vertex count drawn")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--delta-max", bench_args.delta_max, "degree cap")
        ->check(CLI::NonNegativeNumber);
    bench_cmd->add_option("--density", bench_args.density, "edge acceptance probability")
        ->check(CLI::Range(0.0, 1.0));
    bench_cmd->add_option("--d", bench_args.d, "degeneracy threshold for each class")
        ->check(CLI::NonNegativeNumber);
    bench_cmd->add_option("--k", bench_args.k, "class count (default: auto per instance)")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", bench_args.seed, "family seed");
    bench_cmd
        ->add_option("--oracle-fallback-n", bench_args.oracle_fallback_n,
                     "largest n handed to the exact oracle after attempts are exhausted")
        ->check(CLI::NonNegativeNumber);
    bench_cmd->add_option("--out", bench_args.out_path, "write the JSON document here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve_cmd->parsed()) return run_solve(solve_args);
        if (verify_cmd->parsed()) return run_verify(verify_args);
        if (oracle_cmd->parsed()) return run_oracle(oracle_args);
        if (scan_cmd->parsed()) return run_scan(scan_args);
        if (generate_cmd->parsed()) return run_generate(generate_args);
        if (bench_cmd->parsed()) return run_bench(bench_args);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
