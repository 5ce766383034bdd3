#include "gconn/connectivity.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

namespace gconn {

int edge_connectivity(const MultiGraph& g) {
    const int n = g.order();
    if (n <= 1) return kInfiniteEdgeConnectivity;
    if (!g.connected()) return 0;

    auto w = g.multiplicity_matrix();
    std::vector<bool> merged(static_cast<size_t>(n), false);
    int best = std::numeric_limits<int>::max();

    for (int phase = n; phase > 1; --phase) {
        // Maximum adjacency order; the last vertex added closes the cut of
        // the phase, then gets merged into its predecessor.
        std::vector<int> wsum(static_cast<size_t>(n), 0);
        std::vector<bool> added(static_cast<size_t>(n), false);
        int prev = -1, last = -1, last_w = 0;
        for (int t = 0; t < phase; ++t) {
            int pick = -1;
            for (int v = 0; v < n; ++v) {
                if (merged[static_cast<size_t>(v)] || added[static_cast<size_t>(v)]) continue;
                if (pick < 0 || wsum[static_cast<size_t>(v)] > wsum[static_cast<size_t>(pick)]) pick = v;
            }
            added[static_cast<size_t>(pick)] = true;
            prev = last;
            last = pick;
            last_w = wsum[static_cast<size_t>(pick)];
            for (int v = 0; v < n; ++v)
                if (!merged[static_cast<size_t>(v)] && !added[static_cast<size_t>(v)])
                    wsum[static_cast<size_t>(v)] += w[static_cast<size_t>(pick)][static_cast<size_t>(v)];
        }
        best = std::min(best, last_w);
        merged[static_cast<size_t>(last)] = true;
        for (int v = 0; v < n; ++v) {
            w[static_cast<size_t>(prev)][static_cast<size_t>(v)] += w[static_cast<size_t>(last)][static_cast<size_t>(v)];
            w[static_cast<size_t>(v)][static_cast<size_t>(prev)] = w[static_cast<size_t>(prev)][static_cast<size_t>(v)];
        }
    }
    return best;
}

namespace {

int mis_recurse(const std::vector<uint64_t>& closed_nbr, uint64_t pool) {
    if (pool == 0) return 0;
    int v = std::countr_zero(pool);
    // Branch on v: either in the set (drop its closed neighborhood) or out.
    int with_v = 1 + mis_recurse(closed_nbr, pool & ~closed_nbr[static_cast<size_t>(v)]);
    int without_v = mis_recurse(closed_nbr, pool & ~(uint64_t{1} << v));
    return std::max(with_v, without_v);
}

} // namespace

int independence_number(const MultiGraph& g) {
    const int n = g.order();
    if (n == 0) return 0;
    std::vector<uint64_t> closed(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) closed[static_cast<size_t>(v)] = uint64_t{1} << v;
    for (const auto& [u, v] : g.edges()) {
        closed[static_cast<size_t>(u)] |= uint64_t{1} << v;
        closed[static_cast<size_t>(v)] |= uint64_t{1} << u;
    }
    return mis_recurse(closed, n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1);
}

bool alpha_le_2(const MultiGraph& g) {
    // A triangle in the complement is exactly an independent triple.
    const int n = g.order();
    auto mat = g.multiplicity_matrix();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (mat[u][v] > 0) continue;
            for (int w = v + 1; w < n; ++w)
                if (mat[u][w] == 0 && mat[v][w] == 0) return false;
        }
    return true;
}

} // namespace gconn
