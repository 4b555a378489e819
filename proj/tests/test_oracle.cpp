#include <doctest.h>

#include "eqcol/degeneracy.hpp"
#include "eqcol/oracle.hpp"
#include "helpers.hpp"

using namespace eqcol;
using test_helpers::make_graph;
using test_helpers::random_graph;

namespace {

Graph k33() {
    return make_graph(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
}

Graph k5() {
    return make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
}

// Reference feasibility: try every assignment outright.
bool naive_feasible(const Graph& g, int d, int k) {
    int n = g.vertex_count();
    std::vector<int> assignment(n, 0);
    while (true) {
        Colouring c = Colouring::from_assignment(k, assignment);
        if (classify(c) == SizeProfile::Equitable && verify_colouring(g, c, d).valid) return true;
        int pos = 0;
        while (pos < n && assignment[pos] == k - 1) assignment[pos++] = 0;
        if (pos == n) return false;
        ++assignment[pos];
    }
}

} // namespace

TEST_CASE("oracle decides the classic small instances") {
    CHECK(!oracle_find(k33(), 0, 3).feasible);
    CHECK(oracle_find(k33(), 0, 2).feasible);
    CHECK(!oracle_find(k5(), 1, 2).feasible);
    CHECK(oracle_find(k5(), 1, 3).feasible);
    Graph c5 = make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    CHECK(!oracle_find(c5, 1, 1).feasible);
    CHECK(oracle_find(c5, 1, 2).feasible);
    CHECK(oracle_find(make_graph(0, {}), 1, 2).feasible);
    CHECK_THROWS_AS(oracle_find(c5, 1, 0), InputError);
    CHECK_THROWS_AS(oracle_find(c5, -1, 2), InputError);
}

TEST_CASE("feasible verdicts carry a valid equitable witness") {
    Rng rng(2024);
    int feasible_seen = 0;
    for (int trial = 0; trial < 80; ++trial) {
        Graph g = random_graph(rng.uniform_int(1, 8), 0.4, rng);
        int d = rng.uniform_int(0, 2);
        int k = rng.uniform_int(1, 4);
        OracleVerdict verdict = oracle_find(g, d, k);
        CHECK(verdict.nodes_explored > 0);
        if (verdict.feasible) {
            ++feasible_seen;
            REQUIRE(verdict.witness.has_value());
            CHECK(verify_colouring(g, *verdict.witness, d).valid);
            CHECK(classify(*verdict.witness) == SizeProfile::Equitable);
        }
    }
    CHECK(feasible_seen > 30);
}

TEST_CASE("oracle verdicts match assignment enumeration") {
    Rng rng(31337);
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = random_graph(rng.uniform_int(1, 5), 0.5, rng);
        for (int d = 0; d <= 2; ++d)
            for (int k = 1; k <= 3; ++k)
                CHECK(oracle_find(g, d, k).feasible == naive_feasible(g, d, k));
    }
}

TEST_CASE("feasibility is monotone in the threshold") {
    Rng rng(555);
    for (int trial = 0; trial < 60; ++trial) {
        Graph g = random_graph(rng.uniform_int(1, 7), 0.45, rng);
        for (int d = 0; d <= 2; ++d)
            for (int k = 1; k <= 3; ++k)
                if (oracle_find(g, d, k).feasible) CHECK(oracle_find(g, d + 1, k).feasible);
    }
}

TEST_CASE("bounded degree generator honours cap, density, and seed") {
    CHECK(random_bounded_degree_graph(20, 0, 0.9, 7).edge_count() == 0);
    CHECK(random_bounded_degree_graph(0, 3, 0.5, 7).vertex_count() == 0);
    CHECK(random_bounded_degree_graph(5, 4, 0.0, 7).edge_count() == 0);

    Graph a = random_bounded_degree_graph(40, 3, 0.7, 99);
    Graph b = random_bounded_degree_graph(40, 3, 0.7, 99);
    CHECK(a.edge_list() == b.edge_list());
    CHECK(a.max_degree() <= 3);
    CHECK(a.edge_count() > 0);
    Graph c = random_bounded_degree_graph(40, 3, 0.7, 100);
    CHECK(a.edge_list() != c.edge_list());

    Graph dense = random_bounded_degree_graph(300, 3, 0.9, 5);
    CHECK(dense.max_degree() <= 3);
    CHECK(dense.edge_count() > 300); // cap binds well before the density budget

    Graph full = random_bounded_degree_graph(6, 5, 1.0, 11);
    CHECK(full.edge_count() == 15); // no cap pressure, every pair lands

    CHECK_THROWS_AS(random_bounded_degree_graph(-1, 3, 0.5, 1), InputError);
    CHECK_THROWS_AS(random_bounded_degree_graph(5, -1, 0.5, 1), InputError);
    CHECK_THROWS_AS(random_bounded_degree_graph(5, 3, 1.5, 1), InputError);
}

TEST_CASE("forest conjecture scan is clean on small exhaustive ranges") {
    ScanReport report = scan_conjecture(Conjecture::EVAC, 4, ScanMode::exhaustive_labelled());
    CHECK(report.graphs_checked == 1 + 2 + 8 + 64);
    CHECK(report.counterexamples.empty());
    CHECK(report.instances_checked > 0);
    CHECK(report.d == 1);

    ScanReport trivial = scan_conjecture(Conjecture::EVAC, 1, ScanMode::exhaustive_labelled());
    CHECK(trivial.graphs_checked == 1);
    CHECK(trivial.counterexamples.empty());
}

TEST_CASE("degenerate colouring scan is clean for small thresholds") {
    for (int d = 0; d <= 2; ++d) {
        ScanReport report = scan_conjecture(Conjecture::EDC, 5, ScanMode::exhaustive_labelled(), d);
        CHECK(report.counterexamples.empty());
        CHECK(report.graphs_checked == 1 + 2 + 8 + 64 + 1024);
        CHECK(report.d == d);
    }
}

TEST_CASE("sampled scans are deterministic and job-count independent") {
    ScanMode mode = ScanMode::random_sample(25, 4242);
    ScanReport one = scan_conjecture(Conjecture::EDC, 6, mode, 0, 1);
    ScanReport three = scan_conjecture(Conjecture::EDC, 6, mode, 0, 3);
    CHECK(one.counterexamples.empty());
    CHECK(one.graphs_checked == 25);
    CHECK(one.instances_checked == three.instances_checked);
    CHECK(one.counterexamples.size() == three.counterexamples.size());

    ScanReport again = scan_conjecture(Conjecture::EDC, 6, mode, 0, 1);
    CHECK(again.instances_checked == one.instances_checked);
}

TEST_CASE("scan rejects oversized exhaustive ranges") {
    CHECK_THROWS_AS(scan_conjecture(Conjecture::EVAC, 8, ScanMode::exhaustive_labelled()), InputError);
    CHECK_THROWS_AS(scan_conjecture(Conjecture::EVAC, 0, ScanMode::exhaustive_labelled()), InputError);
    CHECK_THROWS_AS(scan_conjecture(Conjecture::EDC, 5, ScanMode::exhaustive_labelled(), -1), InputError);
    CHECK_THROWS_AS(scan_conjecture(Conjecture::EVAC, 4, ScanMode::exhaustive_labelled(), 1, 0), InputError);
}
