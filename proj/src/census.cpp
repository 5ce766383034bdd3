#include "gconn/census.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gconn/connectivity.hpp"
#include "gconn/error.hpp"
#include "gconn/io.hpp"

namespace gconn {

namespace {

// One growth level: every class on `sz` vertices arises from a class on
// sz-1 vertices by attaching a new vertex to some subset of the old ones
// (deleting any vertex of the bigger graph shows the base exists), so
// extending every base by every admissible subset and deduplicating by
// canonical form is exhaustive.
//
// In triangle-free mode the subset must be independent in the base, which
// is exactly what keeps the grown graph triangle-free. max_deg prunes by the
// final complement-degree cap; degrees only grow, so the prune is monotone.
std::vector<MultiGraph> grow_level(const std::vector<MultiGraph>& bases, int sz, bool triangle_free,
                                   int max_deg, int threads, bool parallel) {
    std::vector<std::pair<CanonicalForm, MultiGraph>> found;
#ifdef _OPENMP
    int nt = parallel ? (threads > 0 ? threads : omp_get_max_threads()) : 1;
#else
    int nt = 1;
    (void)threads;
    (void)parallel;
#endif
#pragma omp parallel num_threads(nt)
    {
        std::vector<std::pair<CanonicalForm, MultiGraph>> local;
#pragma omp for schedule(dynamic)
        for (int bi = 0; bi < static_cast<int>(bases.size()); ++bi) {
            const MultiGraph& base = bases[static_cast<size_t>(bi)];
            const int nb = base.order();
            std::vector<uint32_t> adj(static_cast<size_t>(nb), 0);
            std::vector<int> deg(static_cast<size_t>(nb), 0);
            for (const auto& [u, v] : base.edges()) {
                adj[static_cast<size_t>(u)] |= uint32_t{1} << v;
                adj[static_cast<size_t>(v)] |= uint32_t{1} << u;
                ++deg[static_cast<size_t>(u)];
                ++deg[static_cast<size_t>(v)];
            }
            for (uint32_t s = 0; s < (uint32_t{1} << nb); ++s) {
                bool ok = true;
                if (max_deg >= 0 && std::popcount(s) > max_deg) ok = false;
                for (int v = 0; ok && v < nb; ++v) {
                    if (!(s & (uint32_t{1} << v))) continue;
                    if (triangle_free && (adj[static_cast<size_t>(v)] & s)) ok = false;
                    if (max_deg >= 0 && deg[static_cast<size_t>(v)] + 1 > max_deg) ok = false;
                }
                if (!ok) continue;
                auto edges = base.edges();
                for (int v = 0; v < nb; ++v)
                    if (s & (uint32_t{1} << v)) edges.emplace_back(v, nb);
                // Keep the canonical representative so results never depend
                // on which labeled copy a worker saw first.
                local.push_back(canonicalize(MultiGraph(sz, std::move(edges))));
            }
        }
#pragma omp critical
        found.insert(found.end(), std::make_move_iterator(local.begin()), std::make_move_iterator(local.end()));
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<MultiGraph> out;
    for (size_t i = 0; i < found.size(); ++i)
        if (i == 0 || found[i].first != found[i - 1].first) out.push_back(std::move(found[i].second));
    return out;
}

std::vector<MultiGraph> run_census(int n, const CensusOptions& opts, bool parallel) {
    if (n < 1 || n > kMaxCensusOrder)
        throw BudgetError("enumerate_census: order must be within 1.." + std::to_string(kMaxCensusOrder));

    // alpha(G) <= 2 iff complement(G) is triangle-free, so the level sets
    // live on the complement side in that mode.
    const bool comp_side = opts.alpha_le_2;
    int max_deg = -1; // negative = unconstrained
    if (comp_side && opts.min_edge_connectivity > 0) max_deg = (n - 1) - opts.min_edge_connectivity;

    std::vector<MultiGraph> level = {MultiGraph(1, {})};
    for (int sz = 2; sz <= n; ++sz)
        level = grow_level(level, sz, comp_side, max_deg, opts.threads, parallel);

    std::vector<std::pair<CanonicalForm, MultiGraph>> keep;
    for (const MultiGraph& h : level) {
        MultiGraph g = comp_side ? h.complement() : h;
        if (!comp_side && opts.alpha_le_2 && !alpha_le_2(g)) continue;
        if (opts.min_edge_connectivity > 0 || opts.require_connected) {
            if (!g.connected()) continue;
        }
        if (opts.min_edge_connectivity > 0) {
            int ec = edge_connectivity(g);
            if (ec != kInfiniteEdgeConnectivity && ec < opts.min_edge_connectivity) continue;
        }
        keep.push_back(canonicalize(g));
    }
    std::sort(keep.begin(), keep.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<MultiGraph> out;
    out.reserve(keep.size());
    for (auto& [form, g] : keep) out.push_back(std::move(g));
    return out;
}

} // namespace

std::vector<MultiGraph> enumerate_census(int n, const CensusOptions& opts) {
    return run_census(n, opts, true);
}

std::vector<MultiGraph> enumerate_census_serial(int n, const CensusOptions& opts) {
    return run_census(n, opts, false);
}

std::string census_line(const MultiGraph& g) {
    std::ostringstream os;
    os << encode_graph6(g) << '\t' << g.order() << '\t' << g.size() << '\t';
    int ec = edge_connectivity(g);
    if (ec == kInfiniteEdgeConnectivity)
        os << "inf";
    else
        os << ec;
    os << '\t' << independence_number(g);
    return os.str();
}

} // namespace gconn
