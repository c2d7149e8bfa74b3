#pragma once

// Independent combinatorial oracles shared by the unit and acceptance tests.

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "dtl/diagram.hpp"

namespace dtl::testing {

// Position of a vertex when the 2n points are read around the boundary.
inline int boundary_position(int n, Vertex v) { return v.side == Side::Left ? v.index : 2 * n + 1 - v.index; }

// Brute force: every partial matching on 2n points, kept when no two chords
// interleave. Returns the set of sorted edge lists.
inline std::set<std::vector<std::pair<int, int>>> brute_force_matchings(int n) {
    std::set<std::vector<std::pair<int, int>>> out;
    std::vector<int> partner(static_cast<std::size_t>(2 * n + 1), 0);
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos > 2 * n) {
            std::vector<std::pair<int, int>> chords;
            for (int a = 1; a <= 2 * n; ++a)
                if (partner[static_cast<std::size_t>(a)] > a) chords.emplace_back(a, partner[static_cast<std::size_t>(a)]);
            for (auto [a, b] : chords)
                for (auto [c, d] : chords)
                    if (a < c && c < b && b < d) return;
            out.insert(chords);
            return;
        }
        if (partner[static_cast<std::size_t>(pos)] != 0) return self(self, pos + 1);
        partner[static_cast<std::size_t>(pos)] = -1;
        self(self, pos + 1);
        for (int q = pos + 1; q <= 2 * n; ++q) {
            if (partner[static_cast<std::size_t>(q)] != 0) continue;
            partner[static_cast<std::size_t>(pos)] = q;
            partner[static_cast<std::size_t>(q)] = pos;
            self(self, pos + 1);
            partner[static_cast<std::size_t>(q)] = 0;
        }
        partner[static_cast<std::size_t>(pos)] = 0;
    };
    rec(rec, 1);
    return out;
}

inline std::vector<long> motzkin_numbers(int count) {
    std::vector<long> m{1, 1};
    for (int k = 2; static_cast<int>(m.size()) < count; ++k) {
        long next = m[static_cast<std::size_t>(k - 1)];
        for (int i = 0; i <= k - 2; ++i) next += m[static_cast<std::size_t>(i)] * m[static_cast<std::size_t>(k - 2 - i)];
        m.push_back(next);
    }
    return m;
}

// Chords of a diagram as sorted pairs of boundary positions.
inline std::vector<std::pair<int, int>> chords_of(const Diagram& d) {
    const int n = d.n();
    std::vector<std::pair<int, int>> chords;
    for (auto [x, y] : d.edges()) {
        int a = boundary_position(n, x), b = boundary_position(n, y);
        chords.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(chords.begin(), chords.end());
    return chords;
}

}  // namespace dtl::testing
