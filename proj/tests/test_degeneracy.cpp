#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "eqcol/degeneracy.hpp"
#include "eqcol/rng.hpp"

using namespace eqcol;

namespace {

Graph make_graph(int n, std::vector<std::pair<int, int>> edges) {
    return Graph::build(n, edges);
}

int earlier_neighbours(const Graph& g, const std::vector<int>& ordering, int pos) {
    std::set<int> earlier(ordering.begin(), ordering.begin() + pos);
    int count = 0;
    for (int u : g.neighbours(ordering[pos]))
        if (earlier.count(u)) ++count;
    return count;
}

bool is_elimination_ordering(const Graph& g, const std::vector<int>& ordering, int d) {
    if (static_cast<int>(ordering.size()) != g.vertex_count()) return false;
    std::vector<int> sorted = ordering;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < g.vertex_count(); ++i)
        if (sorted[i] != i) return false;
    for (int i = 0; i < g.vertex_count(); ++i)
        if (earlier_neighbours(g, ordering, i) > d) return false;
    return true;
}

// Last 1-based position whose vertex has exactly d earlier neighbours, 0 if none.
int ordering_p(const Graph& g, const std::vector<int>& ordering, int d) {
    int p = 0;
    for (int i = 0; i < static_cast<int>(ordering.size()); ++i)
        if (earlier_neighbours(g, ordering, i) == d) p = i + 1;
    return p;
}

// Exhaustive minimum of ordering_p over all valid orderings, with the set of
// prefixes realising it. Only for tiny graphs.
struct BruteMinP {
    bool feasible = false;
    int p = 0;
    std::set<std::set<int>> minimising_prefixes;
};

BruteMinP brute_min_p(const Graph& g, int d) {
    BruteMinP out;
    std::vector<int> perm(g.vertex_count());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (!is_elimination_ordering(g, perm, d)) continue;
        int p = ordering_p(g, perm, d);
        if (!out.feasible || p < out.p) {
            out.feasible = true;
            out.p = p;
            out.minimising_prefixes.clear();
        }
        if (p == out.p)
            out.minimising_prefixes.insert(std::set<int>(perm.begin(), perm.begin() + p));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

Graph random_graph(int n, double density, Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.uniform_int(0, 999) < static_cast<int>(density * 1000)) edges.emplace_back(u, v);
    return Graph::build(n, edges);
}

} // namespace

TEST_CASE("elimination succeeds exactly when a low-degree vertex always exists") {
    Graph path = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
    PeelResult r = peel_order(path, 1);
    CHECK(r.degenerate);
    CHECK(is_elimination_ordering(path, r.ordering, 1));

    Graph cycle = make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    r = peel_order(cycle, 1);
    CHECK(!r.degenerate);
    CHECK(r.ordering.empty());
    CHECK(r.stuck.size() == 5);
    r = peel_order(cycle, 2);
    CHECK(r.degenerate);
    CHECK(is_elimination_ordering(cycle, r.ordering, 2));

    Graph k5 = make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
    CHECK(!peel_order(k5, 3).degenerate);
    CHECK(peel_order(k5, 4).degenerate);
}

TEST_CASE("elimination removes the lowest id among minimum degree") {
    Graph edgeless = make_graph(3, {});
    PeelResult r = peel_order(edgeless, 0);
    CHECK(r.degenerate);
    // Removal runs 0,1,2; the ordering is the reverse.
    CHECK(r.ordering == std::vector<int>{2, 1, 0});

    // Star: leaves 1 and 2 go first; the centre then has degree 1 and its
    // lower id beats leaf 3.
    Graph star = make_graph(4, {{0, 1}, {0, 2}, {0, 3}});
    r = peel_order(star, 1);
    CHECK(r.degenerate);
    CHECK(r.ordering == std::vector<int>{3, 0, 2, 1});
}

TEST_CASE("stuck set induces minimum degree above the threshold") {
    // Triangle with a pendant path: the triangle blocks elimination at d=1.
    Graph g = make_graph(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}});
    PeelResult r = peel_order(g, 1);
    CHECK(!r.degenerate);
    CHECK(r.stuck.members() == std::vector<int>{0, 1, 2});
    for (int v : r.stuck.members()) CHECK(g.degree_in(v, r.stuck) >= 2);
}

TEST_CASE("maximal dense set computation matches its definition") {
    Graph tri_pendant = make_graph(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}});
    CHECK(compute_vstar(tri_pendant, 2).members() == std::vector<int>{0, 1, 2});
    CHECK(compute_vstar(tri_pendant, 3).empty());

    Graph cycle = make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    CHECK(compute_vstar(cycle, 2).size() == 5);
    CHECK(compute_vstar(cycle, 3).empty());

    Graph path = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(compute_vstar(path, 2).empty());
    CHECK(compute_vstar(path, 1).size() == 4);
}

TEST_CASE("zero parameter follows the pinned all-or-nothing convention") {
    Graph edgeless = make_graph(4, {});
    CHECK(compute_vstar(edgeless, 0).empty());
    Graph one_edge = make_graph(4, {{2, 3}});
    CHECK(compute_vstar(one_edge, 0).size() == 4);
}

TEST_CASE("elimination failure coincides with a nonempty denser core") {
    Rng rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        int n = rng.uniform_int(1, 9);
        Graph g = random_graph(n, 0.4, rng);
        for (int d = 0; d <= 3; ++d) {
            bool fails = !peel_order(g, d).degenerate;
            bool dense_core = !compute_vstar(g, d + 1).empty();
            CHECK(fails == dense_core);
            if (fails) {
                PeelResult r = peel_order(g, d);
                CHECK(r.stuck == compute_vstar(g, d + 1));
            }
        }
    }
}

TEST_CASE("certified ordering starts with the dense core and minimises p") {
    auto check_certificate = [](const Graph& g, int d) {
        DegeneracyCertificate cert = assemble_min_p_ordering(g, d);
        REQUIRE(is_elimination_ordering(g, cert.ordering, d));
        CHECK(cert.p == cert.vstar.size());
        CHECK(cert.vstar == compute_vstar(g, d));
        std::set<int> prefix(cert.ordering.begin(), cert.ordering.begin() + cert.p);
        std::set<int> core_set;
        for (int v : cert.vstar.members()) core_set.insert(v);
        CHECK(prefix == core_set);
        CHECK(ordering_p(g, cert.ordering, d) == cert.p);
    };

    check_certificate(make_graph(4, {{0, 1}, {1, 2}, {2, 3}}), 1);
    check_certificate(make_graph(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}}), 2);
    check_certificate(make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}), 2);
    check_certificate(make_graph(3, {}), 1);
}

TEST_CASE("certified p agrees with exhaustive search over orderings") {
    Rng rng(777);
    int interesting = 0;
    for (int trial = 0; trial < 60; ++trial) {
        int n = rng.uniform_int(1, 6);
        Graph g = random_graph(n, 0.5, rng);
        for (int d = 1; d <= 3; ++d) {
            BruteMinP brute = brute_min_p(g, d);
            if (!brute.feasible) {
                CHECK_THROWS_AS(assemble_min_p_ordering(g, d), InputError);
                continue;
            }
            DegeneracyCertificate cert = assemble_min_p_ordering(g, d);
            CHECK(cert.p == brute.p);
            // Every ordering realising the minimum has the same prefix set.
            std::set<int> core_set;
            for (int v : cert.vstar.members()) core_set.insert(v);
            REQUIRE(brute.minimising_prefixes.size() == 1);
            CHECK(*brute.minimising_prefixes.begin() == core_set);
            if (brute.p > 0) ++interesting;
        }
    }
    CHECK(interesting > 20); // the sweep must exercise nonempty cores
}

TEST_CASE("ordering assembly rejects graphs that are too dense") {
    Graph k5 = make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
    CHECK_THROWS_AS(assemble_min_p_ordering(k5, 1), InputError);
    CHECK_THROWS_AS(assemble_min_p_ordering(k5, 3), InputError);
    Graph one_edge = make_graph(2, {{0, 1}});
    CHECK_THROWS_AS(assemble_min_p_ordering(one_edge, 0), InputError);
    CHECK_THROWS_AS(assemble_min_p_ordering(one_edge, -1), InputError);
}

TEST_CASE("zero parameter ordering is the identity on edgeless graphs") {
    Graph edgeless = make_graph(4, {});
    DegeneracyCertificate cert = assemble_min_p_ordering(edgeless, 0);
    CHECK(cert.ordering == std::vector<int>{0, 1, 2, 3});
    CHECK(cert.p == 0);
    CHECK(cert.vstar.empty());
}
