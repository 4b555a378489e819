#include "eqcol/colouring.hpp"

#include <algorithm>
#include <string>

#include "eqcol/degeneracy.hpp"

namespace eqcol {

Colouring Colouring::balanced(int n, int k) {
    if (k < 1) throw InputError("colour count must be at least 1");
    if (n < 0) throw InputError("vertex count must be non-negative");
    std::vector<int> assignment(n);
    for (int v = 0; v < n; ++v) assignment[v] = v % k;
    return from_assignment(k, assignment);
}

Colouring Colouring::from_assignment(int k, const std::vector<int>& assignment) {
    if (k < 1) throw InputError("colour count must be at least 1");
    Colouring c;
    c.k_ = k;
    c.assignment_ = assignment;
    c.members_.assign(k, {});
    for (int v = 0; v < static_cast<int>(assignment.size()); ++v) {
        int cls = assignment[v];
        if (cls < 0 || cls >= k)
            throw InputError("vertex " + std::to_string(v) + " has colour " + std::to_string(cls) +
                             " outside [0," + std::to_string(k) + ")");
        c.members_[cls].push_back(v);
    }
    return c; // members sorted by construction (v ascending)
}

std::vector<int> Colouring::sizes() const {
    std::vector<int> out(k_);
    for (int cls = 0; cls < k_; ++cls) out[cls] = size_of(cls);
    return out;
}

std::vector<int> Colouring::classes_by_size() const {
    std::vector<int> ids(k_);
    for (int cls = 0; cls < k_; ++cls) ids[cls] = cls;
    std::sort(ids.begin(), ids.end(), [this](int lhs, int rhs) {
        if (size_of(lhs) != size_of(rhs)) return size_of(lhs) < size_of(rhs);
        return lhs < rhs;
    });
    return ids;
}

Colouring apply_move(const Colouring& c, int v, int to) {
    if (v < 0 || v >= c.n()) throw InputError("move vertex out of range: " + std::to_string(v));
    if (to < 0 || to >= c.k()) throw InputError("move target class out of range: " + std::to_string(to));
    int from = c.colour_of(v);
    if (from == to)
        throw InputError("vertex " + std::to_string(v) + " already has colour " + std::to_string(to));
    std::vector<int> assignment = c.assignment();
    assignment[v] = to;
    return Colouring::from_assignment(c.k(), assignment);
}

SizeProfile classify(const Colouring& c) {
    int n = c.n();
    int k = c.k();
    int lo = n / k;
    int hi = (n + k - 1) / k;
    std::vector<int> sizes = c.sizes();
    std::sort(sizes.begin(), sizes.end());

    if (sizes.front() >= lo && sizes.back() <= hi) return SizeProfile::Equitable;

    // At most one class below the floor, by exactly one.
    if (sizes.front() < lo - 1) return SizeProfile::Unbalanced;
    if (k >= 2 && sizes[1] < lo) return SizeProfile::Unbalanced;
    // At most one class above the ceiling, by exactly one.
    if (sizes.back() > hi + 1) return SizeProfile::Unbalanced;
    if (k >= 2 && sizes[k - 2] > hi) return SizeProfile::Unbalanced;
    int gap = sizes.back() - sizes.front();
    if (gap < 2 || gap > 3) return SizeProfile::Unbalanced;
    return SizeProfile::NearEquitable;
}

ValidityReport verify_colouring(const Graph& g, const Colouring& c, int d) {
    ValidityReport report;
    report.valid = true;
    for (int cls = 0; cls < c.k(); ++cls) {
        InducedSubgraph sub = induced_subgraph(g, c.members(cls));
        if (!peel_order(sub.graph, d).degenerate) {
            report.valid = false;
            report.failing_classes.push_back(cls);
        }
    }
    return report;
}

} // namespace eqcol
