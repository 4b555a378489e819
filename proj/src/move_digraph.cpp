#include "eqcol/move_digraph.hpp"

#include <algorithm>
#include <deque>

#include "eqcol/degeneracy.hpp"

namespace eqcol {

namespace {

// The fast accept "few neighbours in the target core" is only sound when
// the target class is valid and d >= 1; the d = 0 core follows a convention
// that breaks this reading. Callers owning those invariants pass the core,
// everyone else peels.
bool movable_impl(const Graph& g, const Colouring& c, int d, int v, int target,
                  const VertexSet* core) {
    if (c.colour_of(v) == target) return false;
    if (core != nullptr && g.degree_in(v, *core) <= d) return true;
    std::vector<int> vs = c.members(target);
    vs.push_back(v);
    InducedSubgraph sub = induced_subgraph(g, vs);
    return peel_order(sub.graph, d).degenerate;
}

} // namespace

VertexSet class_core(const Graph& g, const Colouring& c, int d, int cls) {
    InducedSubgraph sub = induced_subgraph(g, c.members(cls));
    VertexSet local = compute_vstar(sub.graph, d);
    VertexSet out(g.vertex_count());
    for (int v : local.members()) out.insert(sub.to_original[v]);
    return out;
}

bool is_movable(const Graph& g, const Colouring& c, int d, int v, int target_class) {
    if (v < 0 || v >= c.n()) throw InputError("vertex out of range: " + std::to_string(v));
    if (target_class < 0 || target_class >= c.k())
        throw InputError("class out of range: " + std::to_string(target_class));
    if (d >= 1) {
        VertexSet core = class_core(g, c, d, target_class);
        return movable_impl(g, c, d, v, target_class, &core);
    }
    return movable_impl(g, c, d, v, target_class, nullptr);
}

MoveDigraph MoveDigraph::build(const Graph& g, const Colouring& c, int d) {
    ValidityReport validity = verify_colouring(g, c, d);
    if (!validity.valid)
        throw InputError("move digraph requires a valid colouring; class " +
                         std::to_string(validity.failing_classes.front()) + " is not");
    MoveDigraph dg;
    dg.k_ = c.k();
    dg.rep_.assign(dg.k_, std::vector<int>(dg.k_, -1));
    dg.vstars_.reserve(dg.k_);
    for (int cls = 0; cls < dg.k_; ++cls) dg.vstars_.push_back(class_core(g, c, d, cls));

    for (int from = 0; from < dg.k_; ++from) {
        int remaining = dg.k_ - 1;
        for (int v : c.members(from)) {
            for (int to = 0; to < dg.k_ && remaining > 0; ++to) {
                if (to == from || dg.rep_[from][to] >= 0) continue;
                const VertexSet* core = d >= 1 ? &dg.vstars_[to] : nullptr;
                if (movable_impl(g, c, d, v, to, core)) {
                    dg.rep_[from][to] = v;
                    --remaining;
                }
            }
            if (remaining == 0) break;
        }
    }
    for (int from = 0; from < dg.k_; ++from)
        for (int to = 0; to < dg.k_; ++to)
            if (dg.rep_[from][to] >= 0) dg.arcs_.push_back({from, to, dg.rep_[from][to]});
    return dg;
}

std::vector<int> MoveDigraph::shortest_path(int from, int to) const {
    std::vector<int> parent(k_, -1);
    std::vector<char> seen(k_, 0);
    std::deque<int> queue;
    seen[from] = 1;
    queue.push_back(from);
    while (!queue.empty()) {
        int at = queue.front();
        queue.pop_front();
        if (at == to) break;
        for (int next = 0; next < k_; ++next) {
            if (seen[next] || rep_[at][next] < 0) continue;
            seen[next] = 1;
            parent[next] = at;
            queue.push_back(next);
        }
    }
    if (!seen[to]) return {};
    std::vector<int> path;
    for (int at = to; at != -1; at = parent[at]) path.push_back(at);
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<char> MoveDigraph::can_reach(const std::vector<int>& targets) const {
    std::vector<char> reach(k_, 0);
    std::deque<int> queue;
    for (int t : targets) {
        if (!reach[t]) {
            reach[t] = 1;
            queue.push_back(t);
        }
    }
    // Walk arcs backwards: from reaches to, so reaching `to` admits `from`.
    while (!queue.empty()) {
        int at = queue.front();
        queue.pop_front();
        for (int from = 0; from < k_; ++from) {
            if (reach[from] || rep_[from][at] < 0) continue;
            reach[from] = 1;
            queue.push_back(from);
        }
    }
    return reach;
}

} // namespace eqcol
