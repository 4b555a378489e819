#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eqcol/colouring.hpp"
#include "eqcol/graph.hpp"
#include "eqcol/move_digraph.hpp"

namespace eqcol {

// Reachability analysis of a colouring snapshot. Classes that reach a
// minimum-size class through the move digraph are accessible; the rest form
// the blocked side whose vertices the exchange moves operate on.
//
// Accessible classes are grouped into components by repeatedly picking the
// least-id remaining minimum-size class and absorbing every remaining class
// with a directed path to it. c_minus is the terminal of the last component.
// u_minus is the separator choice: among classes whose removal strands at
// least one component member away from c_minus, it minimises the number of
// stranded classes (ties to the least class id), and tset holds the classes
// stranded by removing it.
struct PartitionState {
    std::vector<int> min_classes; // ascending
    std::vector<int> max_classes; // ascending
    std::vector<char> accessible; // one flag per class
    std::vector<int> acc_classes;   // ascending
    std::vector<int> inacc_classes; // ascending
    std::vector<int> b_vertices;    // vertices of inaccessible classes, ascending
    int a = 0;
    int b = 0;
    std::vector<std::vector<int>> components; // construction order, members ascending
    std::vector<int> terminals;               // terminal class of each component
    int c_minus = -1;
    int u_minus = -1; // -1 when the last component has no separator
    std::vector<int> tset; // ascending
    int t = 0;
    bool path_stuck = true; // no maximum-size class reaches a minimum-size class
};

PartitionState partition_state(const Colouring& c, const MoveDigraph& dg);

// Lexicographic progress measure of a near-equitable state: size gap, then
// the number of inaccessible classes, then the total core size over tset.
// Every committed improvement move strictly decreases it.
std::array<long long, 3> repair_measure(const Colouring& c, const MoveDigraph& dg,
                                        const PartitionState& st);

// Executes a class-id path from the digraph: each class on the path sends
// its arc representative to the next class. Arcs fire from the end of the
// path backwards, so a mover always enters a class that has only shrunk
// since its movability was certified.
Colouring move_along_path(const Colouring& c, const MoveDigraph& dg,
                          const std::vector<int>& path);

struct TraceStep {
    int vertex = -1;
    int from = -1;
    int to = -1;
};

struct TraceEntry {
    std::string kind; // insert_recolour, path, size_trim, cycle_rotation,
                      // b_vertex_exchange, tree_swap, restart, oracle_fallback
    std::string variant; // exchange: f/g; tree_swap: case1/case2
    int edge_u = -1;
    int edge_v = -1;
    std::vector<TraceStep> steps;
    std::array<long long, 3> measure_before{0, 0, 0};
    std::array<long long, 3> measure_after{0, 0, 0};
};

struct SolveConfig {
    int d = 1;
    int k = 1;
    long long max_repair_rounds = -1; // -1 selects 50 * k * n
    int restart_budget = 5;
    std::uint64_t rng_seed = 0;
    int oracle_fallback_n = 20;
    bool diagnostics = false;
    int recursion_depth = 0; // internal: depth of the enclosing exchange recursion
};

// Which moves were attempted and declined at a stuck state. Drives the
// hypothesis gating of the structural checks: most inequalities only hold
// once the cheaper moves are exhausted.
struct MoveApplicability {
    bool path_stuck = false;
    bool trim_checked = false;
    bool trim_inapplicable = false;
    bool rotation_checked = false;
    bool rotation_inapplicable = false;
    bool exchange_checked = false;
    bool exchange_inapplicable = false;
    bool swap_checked = false;
    bool swap_inapplicable = false;
};

struct DiagnosticItem {
    std::string name;
    bool hard = false;    // violation indicates an implementation bug
    bool checked = false; // hypotheses held, so the predicate was evaluated
    bool violated = false;
    std::string detail;
};

struct DiagnosticsReport {
    std::vector<DiagnosticItem> items;
    bool any_hard_violation() const;
    const DiagnosticItem* find(const std::string& name) const;
};

struct TreeRepairContext; // defined below

// Evaluates the structural facts a stuck near-equitable state must satisfy.
// Hard items are consequences of the state construction itself (plus the
// recorded applicability flags); advisory items additionally assume a
// minimal state, which the solver does not maintain, so their violations
// are informative rather than fatal.
DiagnosticsReport check_structural_lemmas(const Graph& g, const Colouring& c, int d,
                                          const MoveDigraph& dg, const PartitionState& st,
                                          int tau = 2,
                                          const MoveApplicability* applicability = nullptr,
                                          const TreeRepairContext* ctx = nullptr);

// One improvement attempt. Engaged `next` means the move committed: the
// result is valid, and is either equitable or strictly below the input on
// repair_measure. steps replay the reassignments in order.
struct ImprovementMove {
    std::optional<Colouring> next;
    std::string variant;
    std::vector<TraceStep> steps;
    int sink = -1; // cycle_rotation only: sink class when the auxiliary
                   // digraph is acyclic and tset is nonempty
    std::string sub_violation; // nonempty when a recursive solve hit a hard violation
};

// Moves one vertex out of an accessible class holding at least two more
// vertices than c_minus, along its shortest path to a reachable
// minimum-size class.
ImprovementMove size_trim(const Graph& g, const Colouring& c, int d, const MoveDigraph& dg,
                          const PartitionState& st);

// Rotates one vertex per class around a directed cycle of the auxiliary
// digraph on tset, where an arc means some core vertex has degree at most
// d-1 into the target class. Sizes are unchanged; the accessible side can
// only grow. When the auxiliary digraph is acyclic the move reports the
// least-id sink class instead.
ImprovementMove cycle_rotation(const Graph& g, const Colouring& c, int d, const MoveDigraph& dg,
                               const PartitionState& st);

// Rearranges the accessible side around one blocked vertex x, then
// recursively recolours the remaining blocked side with b classes and
// grafts the result back. Two patterns are tried in order: a core vertex
// movable within tset + u_minus whose neighbour x pins its class, and a
// core vertex with two nonadjacent blocked neighbours of full degree into
// its class.
ImprovementMove b_vertex_exchange(const Graph& g, const Colouring& c, int d,
                                  const MoveDigraph& dg, const PartitionState& st,
                                  const SolveConfig& config, int depth);

// Strata of the sink class core and the blocked side used by tree_swap.
// Only defined for d = 1; build_tree_context throws std::logic_error
// otherwise.
struct TreeRepairContext {
    int w_class = -1;
    std::vector<int> wstar; // ascending
    std::vector<int> w1;    // core vertices with degree >= 2 into every other accessible core
    std::vector<int> w2;    // rest with at most one light target among rprime
    std::vector<int> w_gt2; // rest with at least two light targets among rprime
    std::vector<int> rset;   // tset classes sending few edges into wstar
    std::vector<int> rprime; // rset plus u_minus, ascending
    std::vector<int> b1;  // blocked vertices with exactly two wstar neighbours
    std::vector<int> b2;  // exactly three
    std::vector<int> b21; // b2 members with at least two neighbours in w1
    std::vector<int> b22; // the rest of b2
};

TreeRepairContext build_tree_context(const Graph& g, const Colouring& c, int d,
                                     const MoveDigraph& dg, const PartitionState& st,
                                     int w_class);

// Least-id member of candidates with at most one neighbour in wstar and no
// path of length <= 2 to x; -1 when none qualifies.
int select_swap_partner(const Graph& g, const std::vector<int>& candidates,
                        const std::vector<int>& wstar, int x);

// Forest-specific endgame (d = 1): exchanges two core vertices of the sink
// class against a blocked vertex and a partner from a low-traffic class,
// then recursively recolours the rest of the blocked side.
ImprovementMove tree_swap(const Graph& g, const Colouring& c, int d, const MoveDigraph& dg,
                          const PartitionState& st, const TreeRepairContext& ctx,
                          const SolveConfig& config, int depth);

// Outcome of driving one near-equitable state towards equitable.
struct RepairOutcome {
    enum class Kind { Equitable, Stuck, BudgetExhausted, HardViolation };
    Kind kind = Kind::Stuck;
    Colouring colouring; // Equitable: the result; otherwise the final state
    DiagnosticsReport report; // Stuck / HardViolation: checks at the final state
    std::vector<TraceEntry> trace;
    long long rounds = 0;
    long long paths = 0;
    long long trims = 0;
    long long rotations = 0;
    long long exchanges = 0;
    long long tree_swaps = 0;
};

RepairOutcome repair_near_equitable(const Graph& g, const Colouring& c,
                                    const SolveConfig& config, int depth = 0);

// One induction step: g already contains the edge (u, v); c was valid
// before the insertion. Recolours an endpoint when the shared class fails
// the elimination test, then repairs if the sizes left the equitable band.
struct AttemptResult {
    enum class Kind { Equitable, Stuck, BudgetExhausted, HardViolation, NoRecolourTarget };
    Kind kind = Kind::Equitable;
    Colouring colouring;
    DiagnosticsReport report;
    std::vector<TraceEntry> trace;
    long long rounds = 0;
    long long paths = 0;
    long long trims = 0;
    long long rotations = 0;
    long long exchanges = 0;
    long long tree_swaps = 0;
};

AttemptResult insert_edge_and_repair(const Graph& g, const Colouring& c, int u, int v,
                                     const SolveConfig& config, int depth = 0);

enum class SolveStatus { Solved, InfeasibleProven, GaveUp, TheoryViolation };

struct SolveOutcome {
    SolveStatus status = SolveStatus::GaveUp;
    std::optional<Colouring> colouring; // Solved: witness; GaveUp: furthest state reached
    std::string violation;              // TheoryViolation: what broke
    DiagnosticsReport violation_report;
    std::vector<TraceEntry> trace;                // populated when diagnostics is on
    std::vector<DiagnosticsReport> stuck_reports; // likewise
    long long repair_rounds = 0;
    int restarts_used = 0;
    long long edges_completed = 0; // edges of the final attempt's prefix
    bool oracle_used = false;
    long long oracle_nodes = 0;
    long long paths = 0;
    long long trims = 0;
    long long rotations = 0;
    long long exchanges = 0;
    long long tree_swaps = 0;
};

// Edge-by-edge induction from the balanced colouring of the edgeless graph,
// with seeded reshuffles of the insertion order on failure and an
// exhaustive fallback for small instances. Solved outcomes always carry a
// verified equitable witness.
SolveOutcome solve(const Graph& g, const SolveConfig& config);

} // namespace eqcol
