#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "eqcol/colouring.hpp"
#include "eqcol/graph.hpp"

namespace eqcol {

struct OracleVerdict {
    bool feasible = false;
    std::optional<Colouring> witness; // valid and equitable when feasible
    long long nodes_explored = 0;
};

// Exhaustive search for an equitable colouring with every class valid at
// threshold d. Exact verdict; exponential, intended for small n. Vertices
// are assigned highest degree first; search prunes on the ceiling cap, on
// the incremental class validity test, on remaining capacity against the
// floor, and on class-opening symmetry.
OracleVerdict oracle_find(const Graph& g, int d, int k);

// EVAC: every graph has an equitable forest k-colouring for k at least
// (max_degree+1)/2. EDC: the analogue at threshold d for k at least
// (max_degree+1)/(d+1).
enum class Conjecture { EVAC, EDC };

struct ScanMode {
    bool exhaustive = true;
    int sample_count = 0;
    std::uint64_t seed = 0;

    static ScanMode exhaustive_labelled() { return {true, 0, 0}; }
    static ScanMode random_sample(int count, std::uint64_t seed) { return {false, count, seed}; }
};

struct Counterexample {
    Graph graph;
    int d = 0;
    int k = 0;
};

struct ScanReport {
    Conjecture conjecture = Conjecture::EVAC;
    int n_max = 0;
    int d = 1; // threshold used (always 1 for EVAC)
    bool exhaustive = true;
    long long graphs_checked = 0;
    long long instances_checked = 0; // (graph, k) pairs
    std::vector<Counterexample> counterexamples;
};

// Runs the conjecture's k range (lower bound up to max_degree+1) over every
// labelled graph with 1..n_max vertices (exhaustive mode, n_max <= 7) or
// over seeded random graphs (sample mode: n drawn in [1, n_max]). The d
// argument applies to EDC only. jobs > 1 partitions instances across
// threads; the report is identical for any job count.
ScanReport scan_conjecture(Conjecture conjecture, int n_max, const ScanMode& mode, int d = 1,
                           int jobs = 1);

// Seeded generator: shuffles all candidate pairs, walks a density-sized
// prefix, accepts an edge while both endpoint degrees stay below delta_max.
// Identical output for identical arguments.
Graph random_bounded_degree_graph(int n, int delta_max, double density, std::uint64_t seed);

} // namespace eqcol
