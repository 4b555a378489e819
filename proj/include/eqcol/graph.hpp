#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "eqcol/errors.hpp"

namespace eqcol {

// Subset of a fixed vertex universe [0, universe). Constant-time membership,
// sorted enumeration on demand.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int universe) : universe_(universe), bitmap_(universe, 0) {}

    static VertexSet of(int universe, const std::vector<int>& members);

    int universe() const { return universe_; }
    int size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool contains(int v) const { return v >= 0 && v < universe_ && bitmap_[v] != 0; }

    void insert(int v);
    void erase(int v);

    // Ascending vertex ids.
    std::vector<int> members() const;

    bool operator==(const VertexSet& other) const {
        return universe_ == other.universe_ && bitmap_ == other.bitmap_;
    }

private:
    int universe_ = 0;
    int size_ = 0;
    std::vector<char> bitmap_;
};

// Simple undirected graph on vertices 0..n-1. Immutable once built; the
// solver models edge insertion by building a new graph over a longer edge
// prefix. Adjacency lists are sorted, parallel edges are collapsed.
class Graph {
public:
    Graph() = default;

    // Validates endpoints, rejects self-loops, dedupes. Throws InputError.
    static Graph build(int n, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::vector<int>& neighbours(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool adjacent(int u, int v) const;

    // Number of neighbours of v inside s.
    int degree_in(int v, const VertexSet& s) const;

    int max_degree() const;

    // Canonical edge list: u < v within each pair, pairs ascending.
    const std::vector<std::pair<int, int>>& edge_list() const { return edges_; }

private:
    int n_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<std::pair<int, int>> edges_;
};

// Induced subgraph with the vertex relabelling needed to map results back.
// to_local has one slot per parent vertex, -1 where absent.
struct InducedSubgraph {
    Graph graph;
    std::vector<int> to_original;
    std::vector<int> to_local;
};

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& vertices);

// Edges with one endpoint in a and the other in b. The sets must be disjoint.
long long edge_count_between(const Graph& g, const VertexSet& a, const VertexSet& b);

// DIMACS format: optional comment lines "c ...", one "p edge <n> <m>" line,
// then "e <u> <v>" lines with 1-indexed endpoints. The edge count in the
// header is not trusted; the e-lines are authoritative.
Graph parse_dimacs(std::istream& in);
Graph parse_dimacs_file(const std::string& path);

// Canonical form: header, then edges ascending as "e u v" with u < v,
// 1-indexed. Parsing its own output reproduces the graph byte for byte.
std::string serialize_dimacs(const Graph& g);

} // namespace eqcol
