#pragma once

#include <vector>

#include "eqcol/graph.hpp"

namespace eqcol {

// Partition of vertices 0..n-1 into k colour classes. Value type: moves
// produce new colourings, so callers can keep snapshots and roll back.
class Colouring {
public:
    Colouring() = default;

    // Vertex v gets colour v mod k, so class sizes differ by at most one.
    static Colouring balanced(int n, int k);

    // Validates k >= 1 and every entry in [0, k).
    static Colouring from_assignment(int k, const std::vector<int>& assignment);

    int n() const { return static_cast<int>(assignment_.size()); }
    int k() const { return k_; }
    int colour_of(int v) const { return assignment_[v]; }
    const std::vector<int>& members(int cls) const { return members_[cls]; }
    int size_of(int cls) const { return static_cast<int>(members_[cls].size()); }
    const std::vector<int>& assignment() const { return assignment_; }

    std::vector<int> sizes() const;

    // Class ids ordered by (size, id) ascending.
    std::vector<int> classes_by_size() const;

    bool operator==(const Colouring& other) const {
        return k_ == other.k_ && assignment_ == other.assignment_;
    }

private:
    int k_ = 0;
    std::vector<int> assignment_;
    std::vector<std::vector<int>> members_; // each sorted ascending
};

// Recolours v into class `to`. Moving a vertex to its current class is
// rejected: every caller works with genuine moves and the no-op would mask
// bookkeeping bugs.
Colouring apply_move(const Colouring& c, int v, int to);

// Size profile relative to the ideal floor(n/k) / ceil(n/k) band.
// NearEquitable: at most one class one below the floor, at most one class
// one above the ceiling, every other class inside the band, and the extreme
// sizes differ by 2 or 3.
enum class SizeProfile { Equitable, NearEquitable, Unbalanced };

SizeProfile classify(const Colouring& c);

struct ValidityReport {
    bool valid = false;
    std::vector<int> failing_classes; // ascending class ids
};

// A colouring is valid when every class induces a graph that eliminates
// completely at threshold d.
ValidityReport verify_colouring(const Graph& g, const Colouring& c, int d);

} // namespace eqcol
