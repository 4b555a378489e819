#include "eqcol/solver.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>

#include "eqcol/degeneracy.hpp"
#include "eqcol/oracle.hpp"
#include "eqcol/rng.hpp"

namespace eqcol {

namespace {

// Recursive recolouring of the blocked side is capped: every level strictly
// shrinks the vertex set, but the sub-solves are the expensive part of a
// repair round and deep chains never pay off.
constexpr int kMaxRecursionDepth = 8;

VertexSet class_set(const Colouring& c, int cls) {
    return VertexSet::of(c.n(), c.members(cls));
}

std::vector<TraceStep> diff_steps(const Colouring& from, const Colouring& to) {
    std::vector<TraceStep> steps;
    for (int v = 0; v < from.n(); ++v) {
        if (from.colour_of(v) != to.colour_of(v)) {
            steps.push_back({v, from.colour_of(v), to.colour_of(v)});
        }
    }
    return steps;
}

std::array<long long, 3> size_gap_only(const Colouring& c) {
    auto szs = c.sizes();
    auto [mn, mx] = std::minmax_element(szs.begin(), szs.end());
    return {static_cast<long long>(*mx - *mn), 0, 0};
}

std::array<long long, 3> measure_of(const Graph& g, const Colouring& c, int d) {
    if (classify(c) != SizeProfile::NearEquitable) return size_gap_only(c);
    MoveDigraph dg = MoveDigraph::build(g, c, d);
    PartitionState st = partition_state(c, dg);
    return repair_measure(c, dg, st);
}

struct CandidateEval {
    bool commit = false;
    std::array<long long, 3> after{0, 0, 0};
};

// Commit policy shared by every improvement move: the candidate must be
// valid and either equitable or strictly below the current state.
CandidateEval evaluate_candidate(const Graph& g, int d, const Colouring& cand,
                                 const std::array<long long, 3>& current) {
    CandidateEval ev;
    if (!verify_colouring(g, cand, d).valid) return ev;
    SizeProfile prof = classify(cand);
    if (prof == SizeProfile::Equitable) {
        ev.commit = true;
        ev.after = size_gap_only(cand);
        return ev;
    }
    if (prof != SizeProfile::NearEquitable) return ev;
    MoveDigraph dg = MoveDigraph::build(g, cand, d);
    PartitionState st = partition_state(cand, dg);
    ev.after = repair_measure(cand, dg, st);
    ev.commit = ev.after < current;
    return ev;
}

// Shortest class path from -> to that never touches `banned`; {from} when
// from == to, empty when unreachable. BFS expands class ids ascending so
// tie-breaks are stable.
std::vector<int> path_avoiding(const MoveDigraph& dg, int from, int to, int banned) {
    if (from == banned || to == banned || from < 0 || to < 0) return {};
    if (from == to) return {from};
    int k = dg.k();
    std::vector<int> parent(k, -1);
    std::vector<char> seen(k, 0);
    seen[from] = 1;
    std::vector<int> queue{from};
    for (size_t head = 0; head < queue.size(); ++head) {
        int u = queue[head];
        for (int w = 0; w < k; ++w) {
            if (w == banned || seen[w] || !dg.has_arc(u, w)) continue;
            seen[w] = 1;
            parent[w] = u;
            if (w == to) {
                std::vector<int> path{to};
                while (path.back() != from) path.push_back(parent[path.back()]);
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(w);
        }
    }
    return {};
}

std::vector<int> exchange_targets(const PartitionState& st, int excluded) {
    std::vector<int> targets;
    for (int v : st.tset) {
        if (v != excluded) targets.push_back(v);
    }
    if (st.u_minus >= 0 && st.u_minus != excluded) targets.push_back(st.u_minus);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    return targets;
}

// Sub-solves of the blocked side minus one vertex are cached per excluded
// vertex: the pattern scans retry many (v, x) pairs sharing the same x.
struct BlockedSideSolver {
    const Graph& g;
    const PartitionState& st;
    const SolveConfig& config;
    int depth;
    std::string violation; // nonempty when a sub-solve hit a hard violation

    struct Entry {
        std::optional<Colouring> colouring;
        InducedSubgraph sub;
    };
    std::map<int, Entry> by_excluded;

    const Entry& run(int x) {
        auto it = by_excluded.find(x);
        if (it != by_excluded.end()) return it->second;
        Entry entry;
        std::vector<int> vertices;
        vertices.reserve(st.b_vertices.size());
        for (int w : st.b_vertices) {
            if (w != x) vertices.push_back(w);
        }
        entry.sub = induced_subgraph(g, vertices);
        SolveConfig sc;
        sc.d = config.d;
        sc.k = st.b;
        sc.max_repair_rounds = -1;
        sc.restart_budget = std::min(config.restart_budget, 2);
        sc.rng_seed = config.rng_seed * 0x9E3779B97F4A7C15ULL +
                      0xD1B54A32D192ED03ULL * static_cast<std::uint64_t>(depth + 1) +
                      static_cast<std::uint64_t>(x);
        sc.oracle_fallback_n = config.oracle_fallback_n;
        sc.diagnostics = false;
        sc.recursion_depth = depth + 1;
        SolveOutcome out = solve(entry.sub.graph, sc);
        if (out.status == SolveStatus::Solved) {
            entry.colouring = out.colouring;
        } else if (out.status == SolveStatus::TheoryViolation && violation.empty()) {
            violation = "recursive blocked-side solve: " + out.violation;
        }
        return by_excluded.emplace(x, std::move(entry)).first->second;
    }
};

// Reassigns every blocked vertex except `excluded` to the class the
// recursive colouring chose, mapped onto the inaccessible class ids in
// ascending order.
Colouring graft_blocked_side(const Colouring& base, const PartitionState& st, int excluded,
                             const BlockedSideSolver::Entry& entry) {
    std::vector<int> assignment = base.assignment();
    const Colouring& psi = *entry.colouring;
    for (int w : st.b_vertices) {
        if (w == excluded) continue;
        assignment[w] = st.inacc_classes[psi.colour_of(entry.sub.to_local[w])];
    }
    return Colouring::from_assignment(base.k(), assignment);
}

} // namespace

PartitionState partition_state(const Colouring& c, const MoveDigraph& dg) {
    PartitionState st;
    int k = c.k();
    auto sizes = c.sizes();
    int mn = *std::min_element(sizes.begin(), sizes.end());
    int mx = *std::max_element(sizes.begin(), sizes.end());
    for (int cls = 0; cls < k; ++cls) {
        if (sizes[cls] == mn) st.min_classes.push_back(cls);
        if (sizes[cls] == mx) st.max_classes.push_back(cls);
    }
    st.accessible = dg.can_reach(st.min_classes);
    for (int cls = 0; cls < k; ++cls) {
        if (st.accessible[cls]) {
            st.acc_classes.push_back(cls);
        } else {
            st.inacc_classes.push_back(cls);
        }
    }
    st.a = static_cast<int>(st.acc_classes.size());
    st.b = static_cast<int>(st.inacc_classes.size());
    for (int cls : st.inacc_classes) {
        const auto& mem = c.members(cls);
        st.b_vertices.insert(st.b_vertices.end(), mem.begin(), mem.end());
    }
    std::sort(st.b_vertices.begin(), st.b_vertices.end());
    st.path_stuck = true;
    for (int cls : st.max_classes) {
        if (st.accessible[cls]) st.path_stuck = false;
    }

    // Components: peel off the reachability closure of the least remaining
    // minimum-size class until no minimum-size class is left.
    std::vector<std::vector<int>> radj(k);
    for (const MoveArc& arc : dg.arcs()) radj[arc.to].push_back(arc.from);
    std::vector<char> remaining(k, 0);
    for (int cls : st.acc_classes) remaining[cls] = 1;
    while (true) {
        int terminal = -1;
        for (int m : st.min_classes) {
            if (remaining[m]) {
                terminal = m;
                break;
            }
        }
        if (terminal < 0) break;
        std::vector<char> in_comp(k, 0);
        in_comp[terminal] = 1;
        std::vector<int> queue{terminal};
        for (size_t head = 0; head < queue.size(); ++head) {
            for (int u : radj[queue[head]]) {
                if (remaining[u] && !in_comp[u]) {
                    in_comp[u] = 1;
                    queue.push_back(u);
                }
            }
        }
        std::vector<int> comp;
        for (int cls = 0; cls < k; ++cls) {
            if (in_comp[cls]) {
                comp.push_back(cls);
                remaining[cls] = 0;
            }
        }
        st.components.push_back(std::move(comp));
        st.terminals.push_back(terminal);
    }
    if (!st.terminals.empty()) st.c_minus = st.terminals.back();

    // Separator choice over the last component: count the classes stranded
    // away from c_minus when one class is deleted, keep candidates that
    // strand at least one, and take the smallest count (ties to the least
    // class id).
    if (!st.components.empty() && st.components.back().size() >= 2) {
        const std::vector<int>& last = st.components.back();
        std::vector<char> in_last(k, 0);
        for (int cls : last) in_last[cls] = 1;
        int best_count = -1;
        std::vector<int> best_stranded;
        for (int cand : last) {
            std::vector<char> reached(k, 0);
            std::vector<int> queue;
            if (cand != st.c_minus) {
                reached[st.c_minus] = 1;
                queue.push_back(st.c_minus);
            }
            for (size_t head = 0; head < queue.size(); ++head) {
                for (int u : radj[queue[head]]) {
                    if (in_last[u] && u != cand && !reached[u]) {
                        reached[u] = 1;
                        queue.push_back(u);
                    }
                }
            }
            std::vector<int> stranded;
            for (int cls : last) {
                if (cls != cand && !reached[cls]) stranded.push_back(cls);
            }
            if (stranded.empty()) continue;
            int count = static_cast<int>(stranded.size());
            if (best_count < 0 || count < best_count) {
                best_count = count;
                best_stranded = std::move(stranded);
                st.u_minus = cand;
            }
        }
        if (best_count >= 0) {
            st.tset = std::move(best_stranded);
            st.t = static_cast<int>(st.tset.size());
        }
    }
    return st;
}

std::array<long long, 3> repair_measure(const Colouring& c, const MoveDigraph& dg,
                                        const PartitionState& st) {
    auto gap = size_gap_only(c);
    long long core_total = 0;
    for (int cls : st.tset) core_total += dg.class_vstar(cls).size();
    return {gap[0], static_cast<long long>(st.b), core_total};
}

Colouring move_along_path(const Colouring& c, const MoveDigraph& dg,
                          const std::vector<int>& path) {
    if (path.size() < 2) throw std::logic_error("move_along_path: need at least one arc");
    Colouring cur = c;
    for (int i = static_cast<int>(path.size()) - 2; i >= 0; --i) {
        int rep = dg.representative(path[i], path[i + 1]);
        if (rep < 0) throw std::logic_error("move_along_path: missing arc");
        if (cur.colour_of(rep) != path[i]) {
            throw std::logic_error("move_along_path: stale representative");
        }
        cur = apply_move(cur, rep, path[i + 1]);
    }
    return cur;
}

ImprovementMove size_trim(const Graph& g, const Colouring& c, int d, const MoveDigraph& dg,
                          const PartitionState& st) {
    ImprovementMove mv;
    if (st.c_minus < 0) return mv;
    int threshold = c.size_of(st.c_minus) + 2;
    auto current = repair_measure(c, dg, st);
    for (int cls : st.acc_classes) {
        if (c.size_of(cls) < threshold) continue;
        std::vector<int> best;
        for (int m : st.min_classes) {
            auto path = dg.shortest_path(cls, m);
            if (path.empty()) continue;
            if (best.empty() || path.size() < best.size()) best = std::move(path);
        }
        if (best.empty()) continue;
        Colouring next = move_along_path(c, dg, best);
        CandidateEval ev = evaluate_candidate(g, d, next, current);
        if (!ev.commit) continue;
        mv.steps = diff_steps(c, next);
        mv.next = std::move(next);
        return mv;
    }
    return mv;
}

ImprovementMove cycle_rotation(const Graph& g, const Colouring& c, int d, const MoveDigraph& dg,
                               const PartitionState& st) {
    ImprovementMove mv;
    if (st.t == 0) return mv;
    int k = c.k();
    int n = c.n();

    // Auxiliary digraph on tset: an arc means some core vertex can enter
    // the whole target class with a degree to spare.
    std::vector<std::vector<int>> aux(k);
    std::vector<std::vector<int>> aux_rep(k, std::vector<int>(k, -1));
    for (int from : st.tset) {
        for (int to : st.tset) {
            if (from == to) continue;
            VertexSet target = class_set(c, to);
            for (int v : dg.class_vstar(from).members()) {
                if (g.degree_in(v, target) <= d - 1) {
                    aux[from].push_back(to);
                    aux_rep[from][to] = v;
                    break;
                }
            }
        }
    }

    std::vector<int> state(k, 0);
    std::vector<int> stack;
    std::vector<int> cycle;
    std::function<bool(int)> dfs = [&](int u) {
        state[u] = 1;
        stack.push_back(u);
        for (int w : aux[u]) {
            if (state[w] == 1) {
                auto it = std::find(stack.begin(), stack.end(), w);
                cycle.assign(it, stack.end());
                return true;
            }
            if (state[w] == 0 && dfs(w)) return true;
        }
        state[u] = 2;
        stack.pop_back();
        return false;
    };
    for (int cls : st.tset) {
        if (state[cls] == 0 && dfs(cls)) break;
    }

    if (cycle.empty()) {
        for (int cls : st.tset) {
            if (aux[cls].empty()) {
                mv.sink = cls;
                break;
            }
        }
        return mv;
    }

    auto current = repair_measure(c, dg, st);
    Colouring next = c;
    int len = static_cast<int>(cycle.size());
    for (int i = 0; i < len; ++i) {
        int from = cycle[i];
        int to = cycle[(i + 1) % len];
        int rep = aux_rep[from][to];
        if (rep < 0) throw std::logic_error("cycle_rotation: missing cycle representative");
        next = apply_move(next, rep, to);
    }
    (void)n;
    CandidateEval ev = evaluate_candidate(g, d, next, current);
    if (!ev.commit) return mv; // discarded; no sink either, the digraph was cyclic
    mv.steps = diff_steps(c, next);
    mv.next = std::move(next);
    return mv;
}

ImprovementMove b_vertex_exchange(const Graph& g, const Colouring& c, int d,
                                  const MoveDigraph& dg, const PartitionState& st,
                                  const SolveConfig& config, int depth) {
    ImprovementMove mv;
    if (depth >= kMaxRecursionDepth) return mv;
    if (st.t == 0 || st.b == 0 || st.c_minus < 0) return mv;
    int n = c.n();
    VertexSet blocked = VertexSet::of(n, st.b_vertices);
    auto current = repair_measure(c, dg, st);
    BlockedSideSolver sub{g, st, config, depth, {}, {}};

    // First pattern: a core vertex v that is movable within the stranded
    // classes plus the separator, pinned by a blocked neighbour x whose
    // whole core degree lands in v's class. Freeing v lets x take its seat
    // while a path ending at c_minus absorbs the size shift.
    for (int V : st.tset) {
        const VertexSet& core = dg.class_vstar(V);
        for (int v : core.members()) {
            for (int x : g.neighbours(v)) {
                if (!blocked.contains(x)) continue;
                if (g.degree_in(x, core) != d + 1) continue;
                for (int target : exchange_targets(st, V)) {
                    if (!is_movable(g, c, d, v, target)) continue;
                    auto path = path_avoiding(dg, target, st.c_minus, V);
                    if (path.empty()) continue;
                    const auto& entry = sub.run(x);
                    if (!sub.violation.empty()) {
                        mv.sub_violation = sub.violation;
                        return mv;
                    }
                    if (!entry.colouring) continue;
                    Colouring cand = c;
                    if (path.size() >= 2) cand = move_along_path(cand, dg, path);
                    cand = apply_move(cand, x, V);
                    cand = apply_move(cand, v, target);
                    cand = graft_blocked_side(cand, st, x, entry);
                    CandidateEval ev = evaluate_candidate(g, d, cand, current);
                    if (!ev.commit) continue;
                    mv.steps = diff_steps(c, cand);
                    mv.next = std::move(cand);
                    mv.variant = "f";
                    return mv;
                }
            }
        }
    }

    // Second pattern: v is pinned by two nonadjacent blocked neighbours of
    // full class degree. v swaps into the recursive colouring of the
    // blocked side while one of the witnesses takes its class.
    for (int V : st.tset) {
        const auto& members = c.members(V);
        VertexSet whole = class_set(c, V);
        for (int v : members) {
            std::vector<int> witnesses;
            for (int x : g.neighbours(v)) {
                if (blocked.contains(x) && g.degree_in(x, whole) == d + 1) {
                    witnesses.push_back(x);
                }
            }
            for (size_t i = 0; i < witnesses.size(); ++i) {
                for (size_t j = i + 1; j < witnesses.size(); ++j) {
                    int x = witnesses[i];
                    if (g.adjacent(x, witnesses[j])) continue;
                    const auto& entry = sub.run(x);
                    if (!sub.violation.empty()) {
                        mv.sub_violation = sub.violation;
                        return mv;
                    }
                    if (!entry.colouring) continue;
                    int chosen = -1;
                    for (int cls : entry.colouring->classes_by_size()) {
                        int deg = 0;
                        for (int local : entry.colouring->members(cls)) {
                            int w = entry.sub.to_original[local];
                            if (g.adjacent(v, w)) ++deg;
                        }
                        if (deg <= d) {
                            chosen = cls;
                            break;
                        }
                    }
                    if (chosen < 0) continue;
                    Colouring cand = apply_move(c, x, V);
                    cand = apply_move(cand, v, st.inacc_classes[chosen]);
                    cand = graft_blocked_side(cand, st, x, entry);
                    CandidateEval ev = evaluate_candidate(g, d, cand, current);
                    if (!ev.commit) continue;
                    mv.steps = diff_steps(c, cand);
                    mv.next = std::move(cand);
                    mv.variant = "g";
                    return mv;
                }
            }
        }
    }
    return mv;
}

TreeRepairContext build_tree_context(const Graph& g, const Colouring& c, int d,
                                     const MoveDigraph& dg, const PartitionState& st,
                                     int w_class) {
    if (d != 1) throw std::logic_error("build_tree_context: defined for d == 1 only");
    if (w_class < 0) throw std::logic_error("build_tree_context: no sink class");
    TreeRepairContext ctx;
    ctx.w_class = w_class;
    int n = c.n();
    ctx.wstar = dg.class_vstar(w_class).members();
    VertexSet wstar_set = VertexSet::of(n, ctx.wstar);

    for (int w : ctx.wstar) {
        bool heavy_everywhere = true;
        for (int cls : st.acc_classes) {
            if (cls == w_class) continue;
            if (g.degree_in(w, dg.class_vstar(cls)) < 2) {
                heavy_everywhere = false;
                break;
            }
        }
        if (heavy_everywhere) ctx.w1.push_back(w);
    }
    VertexSet w1_set = VertexSet::of(n, ctx.w1);

    long long delta_sq = static_cast<long long>(g.max_degree()) * g.max_degree();
    for (int cls : st.tset) {
        if (cls == w_class) continue;
        long long traffic = edge_count_between(g, class_set(c, cls), wstar_set);
        if (traffic < 2 * (c.size_of(cls) - delta_sq)) ctx.rset.push_back(cls);
    }
    ctx.rprime = ctx.rset;
    if (st.u_minus >= 0) ctx.rprime.push_back(st.u_minus);
    std::sort(ctx.rprime.begin(), ctx.rprime.end());
    ctx.rprime.erase(std::unique(ctx.rprime.begin(), ctx.rprime.end()), ctx.rprime.end());

    for (int w : ctx.wstar) {
        if (w1_set.contains(w)) continue;
        int light_targets = 0;
        for (int cls : ctx.rprime) {
            if (g.degree_in(w, dg.class_vstar(cls)) <= 1) ++light_targets;
        }
        if (light_targets <= 1) {
            ctx.w2.push_back(w);
        } else {
            ctx.w_gt2.push_back(w);
        }
    }

    for (int x : st.b_vertices) {
        int deg = g.degree_in(x, wstar_set);
        if (deg == 2) {
            ctx.b1.push_back(x);
        } else if (deg == 3) {
            ctx.b2.push_back(x);
            if (g.degree_in(x, w1_set) >= 2) {
                ctx.b21.push_back(x);
            } else {
                ctx.b22.push_back(x);
            }
        }
    }
    return ctx;
}

int select_swap_partner(const Graph& g, const std::vector<int>& candidates,
                        const std::vector<int>& wstar, int x) {
    if (candidates.empty()) return -1;
    int n = 0;
    for (int v : candidates) n = std::max(n, v + 1);
    for (int v : wstar) n = std::max(n, v + 1);
    n = std::max(n, x + 1);
    VertexSet wstar_set = VertexSet::of(n, wstar);
    for (int u : candidates) {
        if (u == x || g.adjacent(u, x)) continue;
        if (g.degree_in(u, wstar_set) > 1) continue;
        bool near_x = false;
        for (int z : g.neighbours(u)) {
            if (z == x || g.adjacent(z, x)) {
                near_x = true;
                break;
            }
        }
        if (!near_x) return u;
    }
    return -1;
}

ImprovementMove tree_swap(const Graph& g, const Colouring& c, int d, const MoveDigraph& dg,
                          const PartitionState& st, const TreeRepairContext& ctx,
                          const SolveConfig& config, int depth) {
    ImprovementMove mv;
    if (d != 1) throw std::logic_error("tree_swap: defined for d == 1 only");
    if (depth >= kMaxRecursionDepth) return mv;
    if (ctx.b22.empty() || ctx.w_gt2.empty() || st.c_minus < 0 || st.b == 0) return mv;
    int n = c.n();
    int W = ctx.w_class;
    VertexSet gt2_set = VertexSet::of(n, ctx.w_gt2);
    std::vector<int> movable_core = ctx.w2;
    movable_core.insert(movable_core.end(), ctx.w_gt2.begin(), ctx.w_gt2.end());
    std::sort(movable_core.begin(), movable_core.end());
    VertexSet movable_set = VertexSet::of(n, movable_core);
    auto current = repair_measure(c, dg, st);
    BlockedSideSolver sub{g, st, config, depth, {}, {}};

    for (int x : ctx.b22) {
        std::vector<int> heavy; // neighbours in the doubly-movable stratum
        std::vector<int> loose; // neighbours movable at least once
        for (int w : g.neighbours(x)) {
            if (gt2_set.contains(w)) heavy.push_back(w);
            if (movable_set.contains(w)) loose.push_back(w);
        }
        if (heavy.empty()) continue;
        for (int w2v : heavy) {
            for (int w1v : loose) {
                if (w1v == w2v) continue;
                for (int V1 : exchange_targets(st, W)) {
                    if (g.degree_in(w1v, dg.class_vstar(V1)) > 1) continue;
                    auto path = path_avoiding(dg, V1, st.c_minus, W);
                    if (path.empty()) continue;
                    std::vector<int> pos(c.k(), -1);
                    for (size_t i = 0; i < path.size(); ++i) pos[path[i]] = static_cast<int>(i);
                    std::vector<int> light; // rprime classes w2v can enter
                    for (int cls : ctx.rprime) {
                        if (g.degree_in(w2v, dg.class_vstar(cls)) <= 1) light.push_back(cls);
                    }
                    if (light.size() < 2) continue;
                    std::vector<int> on_path;
                    std::vector<int> off_path;
                    for (int cls : light) {
                        (pos[cls] >= 0 ? on_path : off_path).push_back(cls);
                    }
                    std::sort(on_path.begin(), on_path.end(),
                              [&](int lhs, int rhs) { return pos[lhs] < pos[rhs]; });

                    Colouring cand = apply_move(c, w1v, V1);
                    int donor_class = -1;
                    int partner = -1;
                    if (on_path.size() >= 2) {
                        int u1_cls = on_path.front();
                        int u2_cls = on_path.back();
                        partner = select_swap_partner(g, c.members(u1_cls), ctx.wstar, x);
                        if (partner < 0) continue;
                        donor_class = u2_cls;
                        std::vector<int> prefix(path.begin(), path.begin() + pos[u1_cls] + 1);
                        std::vector<int> suffix(path.begin() + pos[u2_cls], path.end());
                        if (prefix.size() >= 2) cand = move_along_path(cand, dg, prefix);
                        if (suffix.size() >= 2) cand = move_along_path(cand, dg, suffix);
                        mv.variant = "case1";
                    } else if (!off_path.empty()) {
                        int ui_cls = off_path.front();
                        partner = select_swap_partner(g, c.members(ui_cls), ctx.wstar, x);
                        if (partner < 0) continue;
                        donor_class = ui_cls;
                        if (path.size() >= 2) cand = move_along_path(cand, dg, path);
                        mv.variant = "case2";
                    } else {
                        continue;
                    }
                    cand = apply_move(cand, w2v, donor_class);
                    cand = apply_move(cand, x, W);
                    cand = apply_move(cand, partner, W);

                    const auto& entry = sub.run(x);
                    if (!sub.violation.empty()) {
                        mv.sub_violation = sub.violation;
                        mv.variant.clear();
                        return mv;
                    }
                    if (!entry.colouring) {
                        mv.variant.clear();
                        continue;
                    }
                    cand = graft_blocked_side(cand, st, x, entry);
                    CandidateEval ev = evaluate_candidate(g, d, cand, current);
                    if (!ev.commit) {
                        mv.variant.clear();
                        continue;
                    }
                    mv.steps = diff_steps(c, cand);
                    mv.next = std::move(cand);
                    return mv;
                }
            }
        }
    }
    mv.variant.clear();
    return mv;
}

bool DiagnosticsReport::any_hard_violation() const {
    for (const auto& item : items) {
        if (item.hard && item.checked && item.violated) return true;
    }
    return false;
}

const DiagnosticItem* DiagnosticsReport::find(const std::string& name) const {
    for (const auto& item : items) {
        if (item.name == name) return &item;
    }
    return nullptr;
}

DiagnosticsReport check_structural_lemmas(const Graph& g, const Colouring& c, int d,
                                          const MoveDigraph& dg, const PartitionState& st,
                                          int tau, const MoveApplicability* appl,
                                          const TreeRepairContext* ctx) {
    DiagnosticsReport rep;
    int k = c.k();
    int n = c.n();
    int delta = g.max_degree();
    bool near = classify(c) == SizeProfile::NearEquitable;
    bool stuck = appl != nullptr && appl->path_stuck;
    bool trim_na = appl != nullptr && appl->trim_checked && appl->trim_inapplicable;
    bool rot_na = appl != nullptr && appl->rotation_checked && appl->rotation_inapplicable;
    bool ex_na = appl != nullptr && appl->exchange_checked && appl->exchange_inapplicable;
    bool swap_na = appl != nullptr &&
                   (d != 1 || (appl->swap_checked && appl->swap_inapplicable));
    VertexSet blocked = VertexSet::of(n, st.b_vertices);

    auto add = [&rep](const std::string& name, bool hard, bool checked, bool violated,
                      std::string detail) {
        rep.items.push_back({name, hard, checked, checked && violated, std::move(detail)});
    };

    // Core vertices keep degree >= d inside their own core.
    {
        bool viol = false;
        std::string detail;
        if (d >= 1) {
            for (int cls = 0; cls < k && !viol; ++cls) {
                const VertexSet& core = dg.class_vstar(cls);
                for (int v : core.members()) {
                    if (g.degree_in(v, core) < d) {
                        viol = true;
                        detail = "class " + std::to_string(cls) + " core vertex " +
                                 std::to_string(v);
                        break;
                    }
                }
            }
        }
        add("core-min-degree", true, d >= 1, viol, detail);
    }

    // Blocked vertices exceed the threshold into every accessible core:
    // anything lighter would be movable and its class would be accessible.
    {
        bool viol = false;
        std::string detail;
        if (d >= 1) {
            for (int x : st.b_vertices) {
                for (int cls : st.acc_classes) {
                    if (g.degree_in(x, dg.class_vstar(cls)) < d + 1) {
                        viol = true;
                        detail = "vertex " + std::to_string(x) + " into class " +
                                 std::to_string(cls);
                        break;
                    }
                }
                if (viol) break;
            }
        }
        add("blocked-vertex-degree", true, d >= 1, viol, detail);
    }

    // Vertices of the last component exceed the threshold into the cores of
    // accessible classes outside it; otherwise the class would have been
    // absorbed into an earlier component.
    {
        bool checked = d >= 1 && !st.components.empty();
        bool viol = false;
        std::string detail;
        if (checked) {
            const auto& last = st.components.back();
            std::vector<char> in_last(k, 0);
            for (int cls : last) in_last[cls] = 1;
            for (int cls : last) {
                for (int v : c.members(cls)) {
                    for (int other : st.acc_classes) {
                        if (in_last[other]) continue;
                        if (g.degree_in(v, dg.class_vstar(other)) < d + 1) {
                            viol = true;
                            detail = "vertex " + std::to_string(v) + " into class " +
                                     std::to_string(other);
                            break;
                        }
                    }
                    if (viol) break;
                }
                if (viol) break;
            }
        }
        add("stranded-class-degree", true, checked, viol, detail);
    }

    // With k(d+1) >= maxdeg+1 a near-equitable state cannot isolate its
    // last terminal: the component holds at least two classes.
    {
        bool checked = d >= 1 && near &&
                       static_cast<long long>(k) * (d + 1) >= static_cast<long long>(delta) + 1;
        bool viol = checked && (st.components.empty() || st.components.back().size() < 2);
        add("stranded-pair-count", true, checked, viol,
            viol ? "last component has fewer than two classes" : "");
    }

    // At a path-stuck state every accessible class keeps a nonempty core:
    // an empty core would accept any vertex and unblock the largest class.
    {
        bool checked = d >= 1 && stuck;
        bool viol = false;
        std::string detail;
        if (checked) {
            for (int cls : st.acc_classes) {
                if (dg.class_vstar(cls).empty()) {
                    viol = true;
                    detail = "class " + std::to_string(cls);
                    break;
                }
            }
        }
        add("accessible-core-nonempty", true, checked, viol, detail);
    }

    // Once size_trim declines, accessible classes stay within one vertex of
    // the last terminal.
    {
        bool checked = stuck && trim_na && st.c_minus >= 0;
        bool viol = false;
        std::string detail;
        if (checked) {
            for (int cls : st.acc_classes) {
                if (c.size_of(cls) > c.size_of(st.c_minus) + 1) {
                    viol = true;
                    detail = "class " + std::to_string(cls);
                    break;
                }
            }
        }
        add("accessible-size-band", true, checked, viol, detail);
    }

    // The blocked side outnumbers b copies of every accessible class: the
    // largest class is blocked and the accessible sizes are pinned down.
    {
        bool checked = near && stuck && trim_na && st.b >= 1;
        bool viol = false;
        std::string detail;
        if (checked) {
            long long total = static_cast<long long>(st.b_vertices.size());
            for (int cls : st.acc_classes) {
                if (total < static_cast<long long>(st.b) * c.size_of(cls) + 1) {
                    viol = true;
                    detail = "class " + std::to_string(cls);
                    break;
                }
            }
        }
        add("blocked-side-count", true, checked, viol, detail);
    }

    // Advisory facts are evaluated before the ratio bound below, which
    // assumes they hold.
    bool fact_c_viol = false;
    std::string fact_c_detail;
    bool fact_c_checked = d >= 1 && st.t >= 1 && st.u_minus >= 0;
    if (fact_c_checked) {
        std::vector<char> excluded(k, 0);
        for (int cls : st.tset) excluded[cls] = 1;
        excluded[st.u_minus] = 1;
        for (int V : st.tset) {
            for (int v : c.members(V)) {
                for (int U : st.acc_classes) {
                    if (U == V || excluded[U]) continue;
                    if (is_movable(g, c, d, v, U)) {
                        fact_c_viol = true;
                        fact_c_detail = "vertex " + std::to_string(v) + " movable to class " +
                                        std::to_string(U);
                        break;
                    }
                }
                if (fact_c_viol) break;
            }
            if (fact_c_viol) break;
        }
    }

    bool fact_d_viol = false;
    std::string fact_d_detail;
    bool fact_d_checked = d >= 1 && st.t >= 2;
    if (fact_d_checked) {
        for (int V : st.tset) {
            for (int other : st.tset) {
                if (other == V) continue;
                if (path_avoiding(dg, other, st.c_minus, V).empty()) {
                    fact_d_viol = true;
                    fact_d_detail = "no path from class " + std::to_string(other) +
                                    " avoiding class " + std::to_string(V);
                    break;
                }
            }
            if (fact_d_viol) break;
        }
    }

    bool fact_e_viol = false;
    bool fact_e_checked = d >= 1 && st.t >= 1;
    if (fact_e_checked) {
        bool found = false;
        for (int W : st.tset) {
            bool all_heavy = true;
            for (int w : dg.class_vstar(W).members()) {
                for (int V : st.tset) {
                    if (g.degree_in(w, class_set(c, V)) < d) {
                        all_heavy = false;
                        break;
                    }
                }
                if (!all_heavy) break;
            }
            if (all_heavy) {
                found = true;
                break;
            }
        }
        fact_e_viol = !found;
    }

    bool fact_f_viol = false;
    std::string fact_f_detail;
    bool fact_f_checked = d >= 1 && st.t >= 1;
    if (fact_f_checked) {
        for (int V : st.tset) {
            const VertexSet& core = dg.class_vstar(V);
            for (int v : core.members()) {
                bool pinned = false;
                for (int x : g.neighbours(v)) {
                    if (blocked.contains(x) && g.degree_in(x, core) == d + 1) {
                        pinned = true;
                        break;
                    }
                }
                if (!pinned) continue;
                for (int U : st.acc_classes) {
                    if (U == V) continue;
                    if (is_movable(g, c, d, v, U)) {
                        fact_f_viol = true;
                        fact_f_detail = "pinned vertex " + std::to_string(v) +
                                        " movable to class " + std::to_string(U);
                        break;
                    }
                }
                if (fact_f_viol) break;
            }
            if (fact_f_viol) break;
        }
    }

    bool fact_g_viol = false;
    std::string fact_g_detail;
    bool fact_g_checked = d >= 1 && st.t >= 1;
    if (fact_g_checked) {
        for (int V : st.tset) {
            VertexSet whole = class_set(c, V);
            for (int v : c.members(V)) {
                std::vector<int> witnesses;
                for (int x : g.neighbours(v)) {
                    if (blocked.contains(x) && g.degree_in(x, whole) == d + 1) {
                        witnesses.push_back(x);
                    }
                }
                for (size_t i = 0; i < witnesses.size() && !fact_g_viol; ++i) {
                    for (size_t j = i + 1; j < witnesses.size(); ++j) {
                        if (!g.adjacent(witnesses[i], witnesses[j])) {
                            fact_g_viol = true;
                            fact_g_detail = "vertices " + std::to_string(witnesses[i]) + " and " +
                                            std::to_string(witnesses[j]) + " around " +
                                            std::to_string(v);
                            break;
                        }
                    }
                }
                if (fact_g_viol) break;
            }
            if (fact_g_viol) break;
        }
    }

    // Stranded classes stay scarce relative to the blocked side once every
    // move has declined and the witness facts stand.
    {
        bool checked = d >= 1 && near && stuck && trim_na && rot_na && ex_na && swap_na &&
                       tau >= 1 && tau <= d + 1 &&
                       static_cast<long long>(k) * tau * (d + 2) >=
                           static_cast<long long>(1 + tau) * (delta + 1) &&
                       fact_f_checked && !fact_f_viol && fact_g_checked && !fact_g_viol;
        bool viol = checked && !(st.t < static_cast<long long>(tau) * st.b);
        add("stranded-ratio", true, checked, viol,
            viol ? "t = " + std::to_string(st.t) + ", b = " + std::to_string(st.b) : "");
    }

    // Independent recomputation of the reachability analysis.
    {
        bool viol = false;
        std::string detail;
        std::vector<std::vector<int>> adj(k);
        for (const MoveArc& arc : dg.arcs()) adj[arc.from].push_back(arc.to);
        auto sizes = c.sizes();
        int mn = k > 0 ? *std::min_element(sizes.begin(), sizes.end()) : 0;
        for (int cls = 0; cls < k && !viol; ++cls) {
            std::vector<char> seen(k, 0);
            seen[cls] = 1;
            std::vector<int> queue{cls};
            bool reaches = sizes[cls] == mn;
            for (size_t head = 0; head < queue.size() && !reaches; ++head) {
                for (int w : adj[queue[head]]) {
                    if (!seen[w]) {
                        seen[w] = 1;
                        if (sizes[w] == mn) reaches = true;
                        queue.push_back(w);
                    }
                }
            }
            if (reaches != (st.accessible[cls] != 0)) {
                viol = true;
                detail = "accessibility of class " + std::to_string(cls);
            }
        }
        if (!viol) {
            std::vector<int> unioned;
            for (const auto& comp : st.components) {
                unioned.insert(unioned.end(), comp.begin(), comp.end());
            }
            std::sort(unioned.begin(), unioned.end());
            if (unioned != st.acc_classes) {
                viol = true;
                detail = "component union differs from the accessible classes";
            }
        }
        if (!viol) {
            for (int m : st.min_classes) {
                if (!st.accessible[m]) {
                    viol = true;
                    detail = "minimum-size class " + std::to_string(m) + " not accessible";
                    break;
                }
            }
        }
        if (!viol && !st.terminals.empty() && st.c_minus != st.terminals.back()) {
            viol = true;
            detail = "terminal bookkeeping";
        }
        add("state-consistency", true, true, viol, detail);
    }

    add("stranded-nonmovability", false, fact_c_checked, fact_c_viol, fact_c_detail);
    add("stranded-bypass-paths", false, fact_d_checked, fact_d_viol, fact_d_detail);
    add("sink-degree-floor", false, fact_e_checked, fact_e_viol,
        fact_e_viol ? "no stranded class is heavy into all of tset" : "");
    add("exchange-blocked-degrees", false, fact_f_checked, fact_f_viol, fact_f_detail);
    add("exchange-witness-adjacency", false, fact_g_checked, fact_g_viol, fact_g_detail);

    // Edge budgets of the sink strata; they assume the full endgame
    // hypotheses, so violations stay advisory.
    {
        bool checked = d == 1 && ctx != nullptr && near && stuck;
        bool viol_w1 = false;
        bool viol_w2 = false;
        bool viol_total = false;
        std::string detail_w1;
        std::string detail_w2;
        std::string detail_total;
        if (checked) {
            long long b = st.b;
            long long t = st.t;
            long long r = static_cast<long long>(ctx->rset.size());
            long long e_w1 = edge_count_between(g, blocked, VertexSet::of(n, ctx->w1));
            long long e_w2 = edge_count_between(g, blocked, VertexSet::of(n, ctx->w2));
            long long e_all = edge_count_between(g, blocked, VertexSet::of(n, ctx->wstar));
            long long w_size = c.size_of(ctx->w_class);
            viol_w1 = e_w1 > (2 * b - 1) * static_cast<long long>(ctx->w1.size());
            viol_w2 = e_w2 > (2 * b + t - r) * static_cast<long long>(ctx->w2.size());
            viol_total = 3 * e_all > 3 * (2 * b + 1) * w_size +
                                         2 * static_cast<long long>(ctx->w2.size()) +
                                         3 * (r + 1) * static_cast<long long>(ctx->w_gt2.size());
            if (viol_w1) detail_w1 = "edges into the immovable stratum: " + std::to_string(e_w1);
            if (viol_w2) detail_w2 = "edges into the single-target stratum: " + std::to_string(e_w2);
            if (viol_total) detail_total = "edges into the sink core: " + std::to_string(e_all);
        }
        add("sink-edge-bound-w1", false, checked, viol_w1, detail_w1);
        add("sink-edge-bound-w2", false, checked, viol_w2, detail_w2);
        add("sink-edge-bound-total", false, checked, viol_total, detail_total);
    }

    return rep;
}

RepairOutcome repair_near_equitable(const Graph& g, const Colouring& c,
                                    const SolveConfig& config, int depth) {
    RepairOutcome out;
    out.colouring = c;
    const int d = config.d;
    long long budget = config.max_repair_rounds >= 0
                           ? config.max_repair_rounds
                           : 50LL * std::max(1, c.k()) * std::max(1, c.n());
    Colouring cur = c;

    auto record = [&](const std::string& kind, const std::string& variant,
                      const std::vector<TraceStep>& steps,
                      const std::array<long long, 3>& before, const Colouring& next) {
        if (!config.diagnostics) return;
        TraceEntry entry;
        entry.kind = kind;
        entry.variant = variant;
        entry.steps = steps;
        entry.measure_before = before;
        entry.measure_after = measure_of(g, next, d);
        out.trace.push_back(std::move(entry));
    };

    while (true) {
        SizeProfile prof = classify(cur);
        if (prof == SizeProfile::Equitable) {
            out.kind = RepairOutcome::Kind::Equitable;
            out.colouring = cur;
            return out;
        }
        if (prof != SizeProfile::NearEquitable) {
            throw std::logic_error("repair_near_equitable: state left the near-equitable band");
        }
        if (out.rounds >= budget) {
            out.kind = RepairOutcome::Kind::BudgetExhausted;
            out.colouring = cur;
            return out;
        }
        MoveDigraph dg = MoveDigraph::build(g, cur, d);
        PartitionState st = partition_state(cur, dg);
        auto before = repair_measure(cur, dg, st);

        if (!st.path_stuck) {
            // Shortest path from a largest class to a smallest one; ties to
            // the least source id, then the least target id.
            std::vector<int> best;
            for (int mx : st.max_classes) {
                for (int mn : st.min_classes) {
                    auto path = dg.shortest_path(mx, mn);
                    if (path.empty()) continue;
                    if (best.empty() || path.size() < best.size()) best = std::move(path);
                }
            }
            if (best.empty()) throw std::logic_error("repair_near_equitable: lost the path");
            Colouring next = move_along_path(cur, dg, best);
            record("path", "", diff_steps(cur, next), before, next);
            ++out.rounds;
            ++out.paths;
            cur = std::move(next);
            continue;
        }

        MoveApplicability appl;
        appl.path_stuck = true;

        appl.trim_checked = true;
        ImprovementMove trimmed = size_trim(g, cur, d, dg, st);
        if (trimmed.next) {
            record("size_trim", "", trimmed.steps, before, *trimmed.next);
            ++out.rounds;
            ++out.trims;
            cur = std::move(*trimmed.next);
            continue;
        }
        appl.trim_inapplicable = true;

        appl.rotation_checked = true;
        ImprovementMove rotated = cycle_rotation(g, cur, d, dg, st);
        if (rotated.next) {
            record("cycle_rotation", "", rotated.steps, before, *rotated.next);
            ++out.rounds;
            ++out.rotations;
            cur = std::move(*rotated.next);
            continue;
        }
        appl.rotation_inapplicable = true;

        appl.exchange_checked = true;
        ImprovementMove exchanged = b_vertex_exchange(g, cur, d, dg, st, config, depth);
        if (!exchanged.sub_violation.empty()) {
            out.kind = RepairOutcome::Kind::HardViolation;
            out.colouring = cur;
            out.report.items.push_back(
                {"recursive-solve", true, true, true, exchanged.sub_violation});
            return out;
        }
        if (exchanged.next) {
            record("b_vertex_exchange", exchanged.variant, exchanged.steps, before,
                   *exchanged.next);
            ++out.rounds;
            ++out.exchanges;
            cur = std::move(*exchanged.next);
            continue;
        }
        appl.exchange_inapplicable = true;

        std::optional<TreeRepairContext> ctx;
        if (d == 1) {
            appl.swap_checked = true;
            if (rotated.sink >= 0) {
                ctx = build_tree_context(g, cur, d, dg, st, rotated.sink);
                ImprovementMove swapped = tree_swap(g, cur, d, dg, st, *ctx, config, depth);
                if (!swapped.sub_violation.empty()) {
                    out.kind = RepairOutcome::Kind::HardViolation;
                    out.colouring = cur;
                    out.report.items.push_back(
                        {"recursive-solve", true, true, true, swapped.sub_violation});
                    return out;
                }
                if (swapped.next) {
                    record("tree_swap", swapped.variant, swapped.steps, before, *swapped.next);
                    ++out.rounds;
                    ++out.tree_swaps;
                    cur = std::move(*swapped.next);
                    continue;
                }
            }
            appl.swap_inapplicable = true;
        }

        out.report = check_structural_lemmas(g, cur, d, dg, st, 2, &appl,
                                             ctx ? &*ctx : nullptr);
        out.colouring = cur;
        out.kind = out.report.any_hard_violation() ? RepairOutcome::Kind::HardViolation
                                                   : RepairOutcome::Kind::Stuck;
        return out;
    }
}

AttemptResult insert_edge_and_repair(const Graph& g, const Colouring& c, int u, int v,
                                     const SolveConfig& config, int depth) {
    AttemptResult res;
    res.colouring = c;
    const int d = config.d;
    const int k = c.k();
    Colouring cur = c;
    int moved = -1;
    int target = -1;

    if (c.colour_of(u) == c.colour_of(v)) {
        int shared = c.colour_of(u);
        auto sub = induced_subgraph(g, c.members(shared));
        if (!peel_order(sub.graph, d).degenerate) {
            // Recolour the endpoint with the most slack left at its best
            // target; ties go to the higher vertex id, then the least class.
            auto best_for = [&](int w) {
                std::pair<int, int> best{-1, -1}; // slack, class
                for (int cls = 0; cls < k; ++cls) {
                    if (cls == shared) continue;
                    int deg = g.degree_in(w, class_set(c, cls));
                    if (deg > d) continue;
                    if (d - deg > best.first) best = {d - deg, cls};
                }
                return best;
            };
            auto bu = best_for(u);
            auto bv = best_for(v);
            if (bu.first < 0 && bv.first < 0) {
                res.kind = AttemptResult::Kind::NoRecolourTarget;
                return res;
            }
            if (bv.first >= bu.first) {
                moved = v;
                target = bv.second;
            } else {
                moved = u;
                target = bu.second;
            }
            cur = apply_move(cur, moved, target);
        }
    }

    if (config.diagnostics && moved >= 0) {
        TraceEntry entry;
        entry.kind = "insert_recolour";
        entry.edge_u = u;
        entry.edge_v = v;
        entry.steps.push_back({moved, c.colour_of(moved), target});
        res.trace.push_back(std::move(entry));
    }

    SizeProfile prof = classify(cur);
    if (prof == SizeProfile::Equitable) {
        res.kind = AttemptResult::Kind::Equitable;
        res.colouring = std::move(cur);
        return res;
    }
    if (prof != SizeProfile::NearEquitable) {
        throw std::logic_error("insert_edge_and_repair: recolouring left the band");
    }

    RepairOutcome repair = repair_near_equitable(g, cur, config, depth);
    switch (repair.kind) {
        case RepairOutcome::Kind::Equitable:
            res.kind = AttemptResult::Kind::Equitable;
            break;
        case RepairOutcome::Kind::Stuck:
            res.kind = AttemptResult::Kind::Stuck;
            break;
        case RepairOutcome::Kind::BudgetExhausted:
            res.kind = AttemptResult::Kind::BudgetExhausted;
            break;
        case RepairOutcome::Kind::HardViolation:
            res.kind = AttemptResult::Kind::HardViolation;
            break;
    }
    res.colouring = std::move(repair.colouring);
    res.report = std::move(repair.report);
    for (auto& entry : repair.trace) res.trace.push_back(std::move(entry));
    res.rounds = repair.rounds;
    res.paths = repair.paths;
    res.trims = repair.trims;
    res.rotations = repair.rotations;
    res.exchanges = repair.exchanges;
    res.tree_swaps = repair.tree_swaps;
    return res;
}

SolveOutcome solve(const Graph& g, const SolveConfig& config) {
    if (config.k < 1) throw InputError("solve: k must be at least 1");
    if (config.d < 0) throw InputError("solve: d must be nonnegative");
    if (config.restart_budget < 0) throw InputError("solve: restart budget must be nonnegative");

    SolveOutcome out;
    const int n = g.vertex_count();
    const auto& base_edges = g.edge_list();

    for (int attempt = 0; attempt <= config.restart_budget; ++attempt) {
        out.restarts_used = attempt;
        std::vector<std::pair<int, int>> order = base_edges;
        if (attempt > 0) {
            Rng rng(config.rng_seed +
                    0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(attempt));
            rng.shuffle(order);
            if (config.diagnostics) {
                TraceEntry entry;
                entry.kind = "restart";
                out.trace.push_back(std::move(entry));
            }
        }

        Colouring cur = Colouring::balanced(n, config.k);
        std::vector<std::pair<int, int>> prefix;
        prefix.reserve(order.size());
        bool attempt_failed = false;
        for (const auto& [eu, ev] : order) {
            prefix.push_back({eu, ev});
            Graph gp = Graph::build(n, prefix);
            AttemptResult step =
                insert_edge_and_repair(gp, cur, eu, ev, config, config.recursion_depth);
            out.repair_rounds += step.rounds;
            out.paths += step.paths;
            out.trims += step.trims;
            out.rotations += step.rotations;
            out.exchanges += step.exchanges;
            out.tree_swaps += step.tree_swaps;
            if (config.diagnostics) {
                for (auto& entry : step.trace) out.trace.push_back(std::move(entry));
            }
            if (step.kind == AttemptResult::Kind::Equitable) {
                cur = std::move(step.colouring);
                continue;
            }
            if (step.kind == AttemptResult::Kind::HardViolation) {
                out.status = SolveStatus::TheoryViolation;
                out.violation = "structural check failed at a stuck state";
                out.violation_report = std::move(step.report);
                out.colouring = std::move(step.colouring);
                out.edges_completed = static_cast<long long>(prefix.size()) - 1;
                return out;
            }
            if (step.kind == AttemptResult::Kind::NoRecolourTarget) {
                if (static_cast<long long>(gp.max_degree()) <=
                    static_cast<long long>(config.k) * (config.d + 1) - 1) {
                    out.status = SolveStatus::TheoryViolation;
                    out.violation = "no recolouring target although the degree bound holds";
                    out.colouring = cur;
                    out.edges_completed = static_cast<long long>(prefix.size()) - 1;
                    return out;
                }
                attempt_failed = true;
                out.colouring = cur;
                out.edges_completed = static_cast<long long>(prefix.size()) - 1;
                break;
            }
            // Stuck or BudgetExhausted: keep the furthest state and restart.
            if (config.diagnostics && step.report.items.size() > 0) {
                out.stuck_reports.push_back(std::move(step.report));
            }
            attempt_failed = true;
            out.colouring = std::move(step.colouring);
            out.edges_completed = static_cast<long long>(prefix.size());
            break;
        }
        if (!attempt_failed) {
            if (!verify_colouring(g, cur, config.d).valid ||
                classify(cur) != SizeProfile::Equitable) {
                throw std::logic_error("solve: final state failed verification");
            }
            out.status = SolveStatus::Solved;
            out.colouring = std::move(cur);
            out.edges_completed = static_cast<long long>(base_edges.size());
            return out;
        }
    }

    if (n <= config.oracle_fallback_n) {
        OracleVerdict verdict = oracle_find(g, config.d, config.k);
        out.oracle_used = true;
        out.oracle_nodes = verdict.nodes_explored;
        if (config.diagnostics) {
            TraceEntry entry;
            entry.kind = "oracle_fallback";
            out.trace.push_back(std::move(entry));
        }
        if (verdict.feasible) {
            out.status = SolveStatus::Solved;
            out.colouring = std::move(verdict.witness);
            out.edges_completed = static_cast<long long>(base_edges.size());
        } else {
            out.status = SolveStatus::InfeasibleProven;
        }
        return out;
    }

    out.status = SolveStatus::GaveUp;
    return out;
}

} // namespace eqcol
