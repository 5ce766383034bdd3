#include "gconn/canonical.hpp"

#include <algorithm>
#include <numeric>

#include "gconn/error.hpp"

namespace gconn {

namespace {

// Positions are filled left to right; the certificate grows by one column
// (the multiplicities toward all earlier positions) per filled position, so
// a partial assignment determines a prefix of the certificate and a branch
// can be cut as soon as its column exceeds the incumbent's segment.
struct Canonicalizer {
    int n;
    std::vector<std::vector<uint8_t>> mat;
    std::vector<int> twin; // vertex -> twin class id

    std::vector<int> perm; // position -> vertex
    std::vector<bool> used;
    std::vector<uint8_t> cur;
    std::vector<uint8_t> best;
    std::vector<int> best_perm;
    bool have_best = false;

    explicit Canonicalizer(const MultiGraph& g) : n(g.order()) {
        if (n > 64) throw BudgetError("canonical_form: order above 64 not supported");
        auto m = g.multiplicity_matrix();
        mat.assign(static_cast<size_t>(n), std::vector<uint8_t>(static_cast<size_t>(n), 0));
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                if (m[u][v] > 255) throw BudgetError("canonical_form: multiplicity above 255");
                mat[u][v] = static_cast<uint8_t>(m[u][v]);
            }
        // Twins: u ~ v when swapping them is an automorphism, i.e. their rows
        // agree everywhere off {u,v}. One representative per class suffices
        // at any search node where both are still unused.
        twin.assign(static_cast<size_t>(n), -1);
        int next = 0;
        for (int u = 0; u < n; ++u) {
            if (twin[static_cast<size_t>(u)] >= 0) continue;
            twin[static_cast<size_t>(u)] = next;
            for (int v = u + 1; v < n; ++v) {
                if (twin[static_cast<size_t>(v)] >= 0) continue;
                bool same = true;
                for (int w = 0; w < n && same; ++w)
                    if (w != u && w != v) same = mat[u][w] == mat[v][w];
                if (same) twin[static_cast<size_t>(v)] = next;
            }
            ++next;
        }
        perm.reserve(static_cast<size_t>(n));
        used.assign(static_cast<size_t>(n), false);
        cur.reserve(static_cast<size_t>(n * (n - 1) / 2));
    }

    void dfs(int p) {
        if (p == n) {
            if (!have_best || cur < best) {
                best = cur;
                best_perm = perm;
                have_best = true;
            }
            return;
        }
        const size_t off = cur.size();
        // Column pruning is exact only while the prefix matches the
        // incumbent; recomputed per node so incumbent swaps deeper in the
        // tree never leave a stale verdict.
        bool prefix_eq = have_best && std::equal(cur.begin(), cur.end(), best.begin());

        struct Cand {
            std::vector<uint8_t> col;
            int v;
        };
        std::vector<Cand> cands;
        std::vector<bool> class_seen(static_cast<size_t>(n), false);
        for (int v = 0; v < n; ++v) {
            if (used[static_cast<size_t>(v)]) continue;
            size_t tc = static_cast<size_t>(twin[static_cast<size_t>(v)]);
            if (class_seen[tc]) continue;
            class_seen[tc] = true;
            Cand c;
            c.v = v;
            c.col.resize(static_cast<size_t>(p));
            for (int i = 0; i < p; ++i) c.col[static_cast<size_t>(i)] = mat[perm[static_cast<size_t>(i)]][v];
            cands.push_back(std::move(c));
        }
        std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            if (a.col != b.col) return a.col < b.col;
            return a.v < b.v;
        });
        for (const Cand& c : cands) {
            if (prefix_eq) {
                int cmp = 0;
                for (int i = 0; i < p && cmp == 0; ++i) {
                    uint8_t b = best[off + static_cast<size_t>(i)];
                    if (c.col[static_cast<size_t>(i)] != b) cmp = c.col[static_cast<size_t>(i)] < b ? -1 : 1;
                }
                if (cmp > 0) break; // sorted: later candidates are no better
            }
            perm.push_back(c.v);
            used[static_cast<size_t>(c.v)] = true;
            cur.insert(cur.end(), c.col.begin(), c.col.end());
            dfs(p + 1);
            cur.resize(off);
            used[static_cast<size_t>(c.v)] = false;
            perm.pop_back();
        }
    }
};

} // namespace

CanonicalForm canonical_form(const MultiGraph& g) {
    Canonicalizer c(g);
    c.dfs(0);
    CanonicalForm f;
    f.bytes.reserve(1 + c.best.size());
    f.bytes.push_back(static_cast<uint8_t>(g.order()));
    f.bytes.insert(f.bytes.end(), c.best.begin(), c.best.end());
    return f;
}

std::vector<int> canonical_order(const MultiGraph& g) {
    Canonicalizer c(g);
    c.dfs(0);
    return c.best_perm;
}

std::pair<CanonicalForm, MultiGraph> canonicalize(const MultiGraph& g) {
    Canonicalizer c(g);
    c.dfs(0);
    CanonicalForm f;
    f.bytes.reserve(1 + c.best.size());
    f.bytes.push_back(static_cast<uint8_t>(g.order()));
    f.bytes.insert(f.bytes.end(), c.best.begin(), c.best.end());
    std::vector<int> pos(static_cast<size_t>(g.order()));
    for (int p = 0; p < g.order(); ++p) pos[static_cast<size_t>(c.best_perm[static_cast<size_t>(p)])] = p;
    std::vector<std::pair<int, int>> es;
    es.reserve(static_cast<size_t>(g.size()));
    for (const auto& [u, v] : g.edges()) {
        int a = pos[static_cast<size_t>(u)], b = pos[static_cast<size_t>(v)];
        es.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(es.begin(), es.end());
    return {std::move(f), MultiGraph(g.order(), std::move(es))};
}

bool are_isomorphic(const MultiGraph& a, const MultiGraph& b) {
    if (a.order() != b.order() || a.size() != b.size()) return false;
    auto degs = [](const MultiGraph& g) {
        std::vector<int> d(static_cast<size_t>(g.order()));
        for (int v = 0; v < g.order(); ++v) d[static_cast<size_t>(v)] = g.degree(v);
        std::sort(d.begin(), d.end());
        return d;
    };
    if (degs(a) != degs(b)) return false;
    return canonical_form(a) == canonical_form(b);
}

} // namespace gconn
