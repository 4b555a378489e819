#pragma once

#include <vector>

#include "eqcol/graph.hpp"

namespace eqcol {

// Result of greedy elimination with threshold d. On success the ordering
// v_1..v_n gives every vertex at most d neighbours among its predecessors.
// On failure ordering is empty and stuck holds the vertices that could not
// be eliminated (every one of them keeps degree >= d+1 among stuck).
struct PeelResult {
    bool degenerate = false;
    std::vector<int> ordering;
    VertexSet stuck;
};

// Repeatedly removes the lowest-id vertex of minimum remaining degree while
// that degree is <= d; the ordering is the reverse of the removal sequence.
PeelResult peel_order(const Graph& g, int d);

// For d >= 1: the unique maximal vertex set inducing minimum degree >= d
// (empty when the graph is (d-1)-degenerate). For d = 0 the convention is
// pinned: all vertices if the graph has an edge, empty otherwise. Total in
// both arguments; never throws on valid ids.
VertexSet compute_vstar(const Graph& g, int d);

// An elimination ordering certified to start with vstar and to minimise the
// last position holding exactly d predecessor neighbours.
struct DegeneracyCertificate {
    std::vector<int> ordering;
    int d = 0;
    int p = 0;
    VertexSet vstar;
};

// Builds an ordering of a d-degenerate graph realising the minimum possible
// p: vstar first (internally ordered by elimination within vstar), then the
// remaining vertices so each has at most d-1 predecessor neighbours.
// Throws InputError when the graph is not d-degenerate.
DegeneracyCertificate assemble_min_p_ordering(const Graph& g, int d);

} // namespace eqcol
