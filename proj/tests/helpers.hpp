#pragma once

#include <vector>

#include "eqcol/colouring.hpp"
#include "eqcol/graph.hpp"
#include "eqcol/rng.hpp"

namespace test_helpers {

inline eqcol::Graph make_graph(int n, std::vector<std::pair<int, int>> edges) {
    return eqcol::Graph::build(n, edges);
}

inline eqcol::Graph random_graph(int n, double density, eqcol::Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.uniform_int(0, 999) < static_cast<int>(density * 1000)) edges.emplace_back(u, v);
    return eqcol::Graph::build(n, edges);
}

inline eqcol::Colouring random_colouring(int n, int k, eqcol::Rng& rng) {
    std::vector<int> assignment(n);
    for (int v = 0; v < n; ++v) assignment[v] = rng.uniform_int(0, k - 1);
    return eqcol::Colouring::from_assignment(k, assignment);
}

inline eqcol::Graph petersen() {
    return make_graph(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4},
                           {5, 7}, {7, 9}, {6, 9}, {6, 8}, {5, 8},
                           {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}});
}

} // namespace test_helpers
