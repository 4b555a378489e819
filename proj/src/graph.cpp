#include "eqcol/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace eqcol {

VertexSet VertexSet::of(int universe, const std::vector<int>& members) {
    VertexSet s(universe);
    for (int v : members) s.insert(v);
    return s;
}

void VertexSet::insert(int v) {
    if (v < 0 || v >= universe_) throw InputError("vertex id out of range: " + std::to_string(v));
    if (!bitmap_[v]) {
        bitmap_[v] = 1;
        ++size_;
    }
}

void VertexSet::erase(int v) {
    if (v < 0 || v >= universe_) throw InputError("vertex id out of range: " + std::to_string(v));
    if (bitmap_[v]) {
        bitmap_[v] = 0;
        --size_;
    }
}

std::vector<int> VertexSet::members() const {
    std::vector<int> out;
    out.reserve(size_);
    for (int v = 0; v < universe_; ++v)
        if (bitmap_[v]) out.push_back(v);
    return out;
}

Graph Graph::build(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) throw InputError("vertex count must be non-negative");
    Graph g;
    g.n_ = n;
    g.adj_.assign(n, {});
    std::vector<std::pair<int, int>> canon;
    canon.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw InputError("edge endpoint out of range: (" + std::to_string(u) + "," +
                             std::to_string(v) + ") with n=" + std::to_string(n));
        if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        canon.emplace_back(u, v);
    }
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
    g.edges_ = std::move(canon);
    for (auto [u, v] : g.edges_) {
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
    }
    for (auto& list : g.adj_) std::sort(list.begin(), list.end());
    return g;
}

bool Graph::adjacent(int u, int v) const {
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    int target = (&a == &adj_[u]) ? v : u;
    return std::binary_search(a.begin(), a.end(), target);
}

int Graph::degree_in(int v, const VertexSet& s) const {
    int count = 0;
    for (int u : adj_[v])
        if (s.contains(u)) ++count;
    return count;
}

int Graph::max_degree() const {
    int best = 0;
    for (int v = 0; v < n_; ++v) best = std::max(best, degree(v));
    return best;
}

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
    std::vector<int> vs = vertices;
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    for (int v : vs)
        if (v < 0 || v >= g.vertex_count())
            throw InputError("subgraph vertex out of range: " + std::to_string(v));

    InducedSubgraph sub;
    sub.to_original = vs;
    sub.to_local.assign(g.vertex_count(), -1);
    for (int i = 0; i < static_cast<int>(vs.size()); ++i) sub.to_local[vs[i]] = i;

    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edge_list())
        if (sub.to_local[u] >= 0 && sub.to_local[v] >= 0)
            edges.emplace_back(sub.to_local[u], sub.to_local[v]);
    sub.graph = Graph::build(static_cast<int>(vs.size()), edges);
    return sub;
}

long long edge_count_between(const Graph& g, const VertexSet& a, const VertexSet& b) {
    long long count = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (!a.contains(v)) continue;
        if (b.contains(v)) throw InputError("edge_count_between requires disjoint sets");
        for (int u : g.neighbours(v))
            if (b.contains(u)) ++count;
    }
    return count;
}

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

int parse_int(const std::string& tok, int line_no, const char* what) {
    try {
        size_t used = 0;
        int value = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return value;
    } catch (const std::exception&) {
        throw InputError("line " + std::to_string(line_no) + ": bad " + what + " '" + tok + "'");
    }
}

} // namespace

Graph parse_dimacs(std::istream& in) {
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokens_of(line);
        if (toks.empty()) continue;
        if (toks[0] == "c") continue;
        if (toks[0] == "p") {
            if (n >= 0) throw InputError("line " + std::to_string(line_no) + ": duplicate p line");
            if (toks.size() != 4 || toks[1] != "edge")
                throw InputError("line " + std::to_string(line_no) + ": expected 'p edge <n> <m>'");
            n = parse_int(toks[2], line_no, "vertex count");
            parse_int(toks[3], line_no, "edge count"); // advisory only
            if (n < 0) throw InputError("line " + std::to_string(line_no) + ": negative vertex count");
            continue;
        }
        if (toks[0] == "e") {
            if (n < 0) throw InputError("line " + std::to_string(line_no) + ": e line before p line");
            if (toks.size() != 3)
                throw InputError("line " + std::to_string(line_no) + ": expected 'e <u> <v>'");
            int u = parse_int(toks[1], line_no, "endpoint");
            int v = parse_int(toks[2], line_no, "endpoint");
            if (u < 1 || u > n || v < 1 || v > n)
                throw InputError("line " + std::to_string(line_no) + ": endpoint out of range (ids are 1-indexed)");
            if (u == v) throw InputError("line " + std::to_string(line_no) + ": self-loop");
            edges.emplace_back(u - 1, v - 1);
            continue;
        }
        throw InputError("line " + std::to_string(line_no) + ": unknown directive '" + toks[0] + "'");
    }
    if (n < 0) throw InputError("missing 'p edge' line");
    return Graph::build(n, edges);
}

Graph parse_dimacs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    return parse_dimacs(in);
}

std::string serialize_dimacs(const Graph& g) {
    std::ostringstream out;
    out << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edge_list()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
    return out.str();
}

} // namespace eqcol
