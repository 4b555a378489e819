#pragma once

#include <vector>

#include "eqcol/colouring.hpp"
#include "eqcol/graph.hpp"

namespace eqcol {

// v is movable to a class when the class plus v still eliminates at
// threshold d. False for the vertex's own class. For d >= 1 a dense-core
// degree test short-circuits the peel; that accept is only sound when the
// target class is currently valid, which every solver state guarantees.
bool is_movable(const Graph& g, const Colouring& c, int d, int v, int target_class);

struct MoveArc {
    int from = -1;
    int to = -1;
    int representative = -1; // lowest-id vertex of `from` movable to `to`
};

// Auxiliary digraph on colour classes: arc from -> to when some vertex of
// `from` is movable to `to`. Built once per colouring snapshot; the caller
// rebuilds after committing moves. Requires a valid colouring (throws
// InputError otherwise): arc detection short-circuits through the cached
// class cores, which is only sound for valid classes.
class MoveDigraph {
public:
    static MoveDigraph build(const Graph& g, const Colouring& c, int d);

    int k() const { return k_; }
    bool has_arc(int from, int to) const { return rep_[from][to] >= 0; }
    int representative(int from, int to) const { return rep_[from][to]; }
    const std::vector<MoveArc>& arcs() const { return arcs_; }

    // Dense core of the class subgraph, in original vertex ids.
    const VertexSet& class_vstar(int cls) const { return vstars_[cls]; }

    // Class sequence from..to inclusive, shortest by arc count; empty when
    // unreachable. BFS explores class ids ascending, so ties are stable.
    std::vector<int> shortest_path(int from, int to) const;

    // can_reach[v] != 0 when class v has a directed path to some target.
    std::vector<char> can_reach(const std::vector<int>& targets) const;

private:
    int k_ = 0;
    std::vector<std::vector<int>> rep_;
    std::vector<MoveArc> arcs_;
    std::vector<VertexSet> vstars_;
};

// Dense core of one colour class, mapped back to original vertex ids.
VertexSet class_core(const Graph& g, const Colouring& c, int d, int cls);

} // namespace eqcol
