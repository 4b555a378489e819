#include "eqcol/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "eqcol/degeneracy.hpp"
#include "eqcol/rng.hpp"

namespace eqcol {

namespace {

// Class plus v still eliminates at threshold d. Small classes are free:
// any graph on at most d+1 vertices eliminates.
bool class_accepts(const Graph& g, const std::vector<int>& members, int v, int d) {
    if (d == 0) {
        for (int u : g.neighbours(v))
            if (std::find(members.begin(), members.end(), u) != members.end()) return false;
        return true;
    }
    if (static_cast<int>(members.size()) + 1 <= d + 1) return true;
    std::vector<int> vs = members;
    vs.push_back(v);
    return peel_order(induced_subgraph(g, vs).graph, d).degenerate;
}

struct OracleSearch {
    const Graph& g;
    int d;
    int k;
    int n;
    int floor_cap;
    int ceil_cap;
    std::vector<int> order;
    std::vector<std::vector<int>> classes;
    std::vector<int> assignment;
    int opened = 0;
    int deficit = 0; // total vertices still needed to lift every class to the floor
    long long nodes = 0;

    bool dfs(int idx) {
        ++nodes;
        if (idx == n) return true;
        int remaining_after = n - idx - 1;
        int v = order[idx];
        int limit = std::min(k - 1, opened); // first empty class, never beyond
        for (int cls = 0; cls <= limit; ++cls) {
            int size = static_cast<int>(classes[cls].size());
            if (size >= ceil_cap) continue;
            int new_deficit = deficit - (size < floor_cap ? 1 : 0);
            if (new_deficit > remaining_after) continue;
            if (!class_accepts(g, classes[cls], v, d)) continue;
            classes[cls].push_back(v);
            assignment[v] = cls;
            deficit = new_deficit;
            bool was_first = size == 0;
            if (was_first) ++opened;
            if (dfs(idx + 1)) return true;
            if (was_first) --opened;
            deficit += size < floor_cap ? 1 : 0;
            classes[cls].pop_back();
            assignment[v] = -1;
        }
        return false;
    }
};

// All pairs u < v over n vertices.
std::vector<std::pair<int, int>> all_pairs(int n) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<size_t>(n) * (n - 1) / 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    return pairs;
}

int conjecture_k_lower(Conjecture conjecture, int delta, int d) {
    if (conjecture == Conjecture::EVAC) return (delta + 2) / 2; // ceil((delta+1)/2)
    return (delta + 1 + d) / (d + 1);                           // ceil((delta+1)/(d+1))
}

} // namespace

OracleVerdict oracle_find(const Graph& g, int d, int k) {
    if (k < 1) throw InputError("colour count must be at least 1");
    if (d < 0) throw InputError("threshold must be non-negative");
    int n = g.vertex_count();

    OracleSearch search{g, d, k, n, n / k, (n + k - 1) / k, {}, {}, {}, 0, 0, 0};
    search.order.resize(n);
    std::iota(search.order.begin(), search.order.end(), 0);
    std::stable_sort(search.order.begin(), search.order.end(), [&g](int lhs, int rhs) {
        if (g.degree(lhs) != g.degree(rhs)) return g.degree(lhs) > g.degree(rhs);
        return lhs < rhs;
    });
    search.classes.assign(k, {});
    search.assignment.assign(n, -1);
    search.deficit = search.floor_cap * k;

    OracleVerdict verdict;
    if (search.dfs(0)) {
        verdict.feasible = true;
        verdict.witness = Colouring::from_assignment(k, search.assignment);
    }
    verdict.nodes_explored = search.nodes;
    return verdict;
}

Graph random_bounded_degree_graph(int n, int delta_max, double density, std::uint64_t seed) {
    if (n < 0) throw InputError("vertex count must be non-negative");
    if (delta_max < 0) throw InputError("degree cap must be non-negative");
    if (!(density >= 0.0 && density <= 1.0)) throw InputError("density must lie in [0,1]");

    std::vector<std::pair<int, int>> pairs = all_pairs(n);
    Rng rng(seed);
    rng.shuffle(pairs);
    auto budget = static_cast<size_t>(std::llround(density * static_cast<double>(pairs.size())));
    budget = std::min(budget, pairs.size());

    std::vector<int> degree(n, 0);
    std::vector<std::pair<int, int>> edges;
    for (size_t i = 0; i < budget; ++i) {
        auto [u, v] = pairs[i];
        if (degree[u] < delta_max && degree[v] < delta_max) {
            edges.emplace_back(u, v);
            ++degree[u];
            ++degree[v];
        }
    }
    return Graph::build(n, edges);
}

namespace {

struct ScanInstance {
    Graph graph;
    int d;
    int k;
};

struct WorkerTally {
    long long instances = 0;
    std::vector<std::pair<size_t, Counterexample>> found; // keyed by instance index
};

} // namespace

ScanReport scan_conjecture(Conjecture conjecture, int n_max, const ScanMode& mode, int d,
                           int jobs) {
    if (n_max < 1) throw InputError("scan requires n_max >= 1");
    if (mode.exhaustive && n_max > 7)
        throw InputError("exhaustive scan is limited to n_max <= 7");
    if (!mode.exhaustive && mode.sample_count < 0) throw InputError("sample count must be non-negative");
    if (conjecture == Conjecture::EDC && d < 0) throw InputError("threshold must be non-negative");
    if (jobs < 1) throw InputError("jobs must be at least 1");

    int d_eff = conjecture == Conjecture::EVAC ? 1 : d;

    // Materialise graphs first so the instance list is identical no matter
    // how many workers run it.
    std::vector<Graph> graphs;
    if (mode.exhaustive) {
        for (int n = 1; n <= n_max; ++n) {
            std::vector<std::pair<int, int>> pairs = all_pairs(n);
            auto m = static_cast<std::uint64_t>(pairs.size());
            for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
                std::vector<std::pair<int, int>> edges;
                for (std::uint64_t bit = 0; bit < m; ++bit)
                    if (mask & (1ULL << bit)) edges.push_back(pairs[bit]);
                graphs.push_back(Graph::build(n, edges));
            }
        }
    } else {
        Rng rng(mode.seed);
        for (int i = 0; i < mode.sample_count; ++i) {
            int n = rng.uniform_int(1, n_max);
            double density = rng.uniform_int(1, 9) / 10.0;
            graphs.push_back(random_bounded_degree_graph(n, n - 1, density, rng.next_u64()));
        }
    }

    std::vector<ScanInstance> instances;
    for (const Graph& graph : graphs) {
        int delta = graph.max_degree();
        for (int k = conjecture_k_lower(conjecture, delta, d_eff); k <= delta + 1; ++k)
            instances.push_back({graph, d_eff, k});
    }

    int workers = std::min(jobs, std::max(1, static_cast<int>(instances.size())));
    std::vector<WorkerTally> tallies(workers);
    auto run_range = [&instances, &tallies](int worker, size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
            const ScanInstance& inst = instances[i];
            ++tallies[worker].instances;
            if (!oracle_find(inst.graph, inst.d, inst.k).feasible)
                tallies[worker].found.emplace_back(i, Counterexample{inst.graph, inst.d, inst.k});
        }
    };

    if (workers <= 1) {
        run_range(0, 0, instances.size());
    } else {
        std::vector<std::thread> threads;
        size_t chunk = (instances.size() + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            size_t begin = std::min(instances.size(), w * chunk);
            size_t end = std::min(instances.size(), begin + chunk);
            threads.emplace_back(run_range, w, begin, end);
        }
        for (auto& t : threads) t.join();
    }

    ScanReport report;
    report.conjecture = conjecture;
    report.n_max = n_max;
    report.d = d_eff;
    report.exhaustive = mode.exhaustive;
    report.graphs_checked = static_cast<long long>(graphs.size());
    std::vector<std::pair<size_t, Counterexample>> merged;
    for (WorkerTally& tally : tallies) {
        report.instances_checked += tally.instances;
        for (auto& item : tally.found) merged.push_back(std::move(item));
    }
    std::sort(merged.begin(), merged.end(),
              [](const auto& lhs, const auto& rhs) { return lhs.first < rhs.first; });
    for (auto& [index, cex] : merged) report.counterexamples.push_back(std::move(cex));
    return report;
}

} // namespace eqcol
