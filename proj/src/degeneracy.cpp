#include "eqcol/degeneracy.hpp"

#include <algorithm>
#include <string>

namespace eqcol {

namespace {

// Removes vertices one by one, always the lowest-id vertex whose remaining
// degree is minimal, while a vertex of remaining degree <= threshold exists.
// Returns the removal sequence; survivors stay marked in alive.
std::vector<int> greedy_eliminate(const Graph& g, int threshold, std::vector<char>& alive) {
    int n = g.vertex_count();
    std::vector<int> deg(n, 0);
    int alive_count = 0;
    for (int v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        ++alive_count;
        for (int u : g.neighbours(v))
            if (alive[u]) ++deg[v];
    }
    std::vector<int> removed;
    removed.reserve(alive_count);
    while (alive_count > 0) {
        int pick = -1;
        for (int v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            if (pick < 0 || deg[v] < deg[pick]) pick = v;
        }
        if (deg[pick] > threshold) break;
        alive[pick] = 0;
        --alive_count;
        removed.push_back(pick);
        for (int u : g.neighbours(pick))
            if (alive[u]) --deg[u];
    }
    return removed;
}

} // namespace

PeelResult peel_order(const Graph& g, int d) {
    int n = g.vertex_count();
    std::vector<char> alive(n, 1);
    std::vector<int> removed = greedy_eliminate(g, d, alive);

    PeelResult res;
    res.stuck = VertexSet(n);
    if (static_cast<int>(removed.size()) == n) {
        res.degenerate = true;
        res.ordering.assign(removed.rbegin(), removed.rend());
    } else {
        res.degenerate = false;
        for (int v = 0; v < n; ++v)
            if (alive[v]) res.stuck.insert(v);
    }
    return res;
}

VertexSet compute_vstar(const Graph& g, int d) {
    int n = g.vertex_count();
    if (d <= 0) {
        // Pinned convention for d = 0; the maximal-min-degree reading would
        // always return every vertex.
        VertexSet all(n);
        if (g.edge_count() > 0)
            for (int v = 0; v < n; ++v) all.insert(v);
        return all;
    }
    // Survivors of elimination at threshold d-1 are exactly the maximal set
    // inducing minimum degree >= d.
    std::vector<char> alive(n, 1);
    greedy_eliminate(g, d - 1, alive);
    VertexSet core(n);
    for (int v = 0; v < n; ++v)
        if (alive[v]) core.insert(v);
    return core;
}

DegeneracyCertificate assemble_min_p_ordering(const Graph& g, int d) {
    if (d < 0) throw InputError("degeneracy parameter must be non-negative");
    int n = g.vertex_count();

    DegeneracyCertificate cert;
    cert.d = d;
    cert.vstar = compute_vstar(g, d);

    if (d == 0) {
        if (g.edge_count() > 0)
            throw InputError("graph has an edge, not 0-degenerate");
        cert.ordering.resize(n);
        for (int v = 0; v < n; ++v) cert.ordering[v] = v;
        cert.p = 0;
        return cert;
    }

    if (!compute_vstar(g, d + 1).empty())
        throw InputError("graph is not " + std::to_string(d) + "-degenerate");

    // Core first. The core induces a d-degenerate graph, so elimination at
    // threshold d orders it; its last vertex then has exactly d predecessor
    // neighbours (at least d inside the core, at most d by the ordering).
    std::vector<int> core_vs = cert.vstar.members();
    std::vector<int> ordering;
    ordering.reserve(n);
    if (!core_vs.empty()) {
        InducedSubgraph sub = induced_subgraph(g, core_vs);
        PeelResult core_peel = peel_order(sub.graph, d);
        for (int local : core_peel.ordering) ordering.push_back(sub.to_original[local]);
    }
    cert.p = static_cast<int>(core_vs.size());

    // Remaining vertices, removed far end first with at most d-1 neighbours
    // still present. Such a vertex always exists outside the core: a set
    // where every non-core vertex kept degree >= d would have minimum degree
    // >= d and so be inside the core.
    std::vector<char> alive(n, 1);
    std::vector<int> deg(n, 0);
    for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
    int outside = n - cert.p;
    std::vector<int> tail;
    tail.reserve(outside);
    while (outside > 0) {
        int pick = -1;
        for (int v = 0; v < n; ++v) {
            if (!alive[v] || cert.vstar.contains(v)) continue;
            if (deg[v] <= d - 1 && (pick < 0 || deg[v] < deg[pick])) pick = v;
        }
        if (pick < 0) throw std::logic_error("suffix elimination stalled on a d-degenerate graph");
        alive[pick] = 0;
        --outside;
        tail.push_back(pick);
        for (int u : g.neighbours(pick))
            if (alive[u]) --deg[u];
    }
    ordering.insert(ordering.end(), tail.rbegin(), tail.rend());
    cert.ordering = std::move(ordering);
    return cert;
}

} // namespace eqcol
