#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace eqcol {

// Seeded RNG with hand-rolled draw helpers. std::mt19937_64 output is pinned
// by the standard, but the distribution adaptors are not, so modulo reduction
// keeps every sampled sequence identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Inclusive bounds.
    int uniform_int(int lo, int hi) {
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next_u64() % span);
    }

    template <typename T>
    void shuffle(std::vector<T>& xs) {
        for (int i = static_cast<int>(xs.size()) - 1; i > 0; --i) {
            int j = uniform_int(0, i);
            std::swap(xs[i], xs[static_cast<size_t>(j)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace eqcol
