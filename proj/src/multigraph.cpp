#include "gconn/multigraph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "gconn/error.hpp"

namespace gconn {

MultiGraph::MultiGraph(int n, std::vector<std::pair<int, int>> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 0) throw InputError("vertex count must be nonnegative");
    for (size_t i = 0; i < edges_.size(); ++i) {
        auto& [u, v] = edges_[i];
        if (u < 0 || u >= n_ || v < 0 || v >= n_)
            throw InputError("edge " + std::to_string(i) + " endpoint out of range");
        if (u == v) throw InputError("edge " + std::to_string(i) + " is a loop");
        if (u > v) std::swap(u, v);
    }
}

int MultiGraph::degree(int v) const {
    int d = 0;
    for (const auto& [a, b] : edges_) d += (a == v) + (b == v);
    return d;
}

int MultiGraph::multiplicity(int u, int v) const {
    if (u > v) std::swap(u, v);
    int c = 0;
    for (const auto& [a, b] : edges_) c += (a == u && b == v);
    return c;
}

int MultiGraph::max_multiplicity() const {
    auto mat = multiplicity_matrix();
    int best = 0;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v) best = std::max(best, mat[u][v]);
    return best;
}

std::vector<std::vector<int>> MultiGraph::multiplicity_matrix() const {
    std::vector<std::vector<int>> mat(static_cast<size_t>(n_), std::vector<int>(static_cast<size_t>(n_), 0));
    for (const auto& [u, v] : edges_) {
        ++mat[u][v];
        ++mat[v][u];
    }
    return mat;
}

MultiGraph MultiGraph::underlying_simple() const {
    std::vector<std::pair<int, int>> es;
    auto mat = multiplicity_matrix();
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (mat[u][v] > 0) es.emplace_back(u, v);
    return MultiGraph(n_, std::move(es));
}

MultiGraph MultiGraph::complement() const {
    auto mat = multiplicity_matrix();
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (mat[u][v] == 0) es.emplace_back(u, v);
    return MultiGraph(n_, std::move(es));
}

MultiGraph MultiGraph::induced(const std::vector<int>& verts) const {
    std::vector<int> pos(static_cast<size_t>(n_), -1);
    for (size_t i = 0; i < verts.size(); ++i) pos[static_cast<size_t>(verts[i])] = static_cast<int>(i);
    std::vector<std::pair<int, int>> es;
    for (const auto& [u, v] : edges_)
        if (pos[u] >= 0 && pos[v] >= 0) es.emplace_back(pos[u], pos[v]);
    return MultiGraph(static_cast<int>(verts.size()), std::move(es));
}

std::vector<int> MultiGraph::component_labels() const {
    std::vector<int> comp(static_cast<size_t>(n_), -1);
    std::vector<std::vector<int>> adj(static_cast<size_t>(n_));
    for (const auto& [u, v] : edges_) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    int next = 0;
    std::vector<int> stack;
    for (int s = 0; s < n_; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : adj[static_cast<size_t>(x)])
                if (comp[y] < 0) {
                    comp[y] = next;
                    stack.push_back(y);
                }
        }
        ++next;
    }
    return comp;
}

bool MultiGraph::connected() const {
    if (n_ <= 1) return true;
    auto comp = component_labels();
    return *std::max_element(comp.begin(), comp.end()) == 0;
}

bool MultiGraph::operator==(const MultiGraph& other) const {
    if (n_ != other.n_ || edges_.size() != other.edges_.size()) return false;
    auto a = edges_, b = other.edges_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

MultiGraph build_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    return MultiGraph(n, edges);
}

EdgeSubgraph subgraph_from_edges(const MultiGraph& g, const std::vector<int>& edge_idx) {
    std::vector<int> verts;
    for (int i : edge_idx) {
        auto [u, v] = g.edge(i);
        verts.push_back(u);
        verts.push_back(v);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::vector<int> pos(static_cast<size_t>(g.order()), -1);
    for (size_t i = 0; i < verts.size(); ++i) pos[static_cast<size_t>(verts[i])] = static_cast<int>(i);
    std::vector<std::pair<int, int>> es;
    for (int i : edge_idx) {
        auto [u, v] = g.edge(i);
        es.emplace_back(pos[u], pos[v]);
    }
    return {MultiGraph(static_cast<int>(verts.size()), std::move(es)), std::move(verts)};
}

ContractionResult contract_edges(const MultiGraph& g, const std::vector<int>& edge_idx) {
    const int n = g.order();
    std::vector<int> parent(static_cast<size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    for (int i : edge_idx) {
        if (i < 0 || i >= g.size()) throw InputError("contract_edges: edge index " + std::to_string(i) + " out of range");
        auto [u, v] = g.edge(i);
        int ru = find(u), rv = find(v);
        if (ru != rv) parent[static_cast<size_t>(std::max(ru, rv))] = std::min(ru, rv);
    }
    // New labels ordered by the smallest original vertex of each class.
    std::vector<int> vmap(static_cast<size_t>(n), -1);
    int next = 0;
    for (int v = 0; v < n; ++v) {
        int r = find(v);
        if (vmap[static_cast<size_t>(r)] < 0) vmap[static_cast<size_t>(r)] = next++;
        vmap[static_cast<size_t>(v)] = vmap[static_cast<size_t>(r)];
    }
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < g.size(); ++i) {
        auto [u, v] = g.edge(i);
        int a = vmap[static_cast<size_t>(u)], b = vmap[static_cast<size_t>(v)];
        if (a != b) es.emplace_back(a, b);
    }
    return {MultiGraph(next, std::move(es)), std::move(vmap)};
}

MultiGraph complete_graph(int n) {
    if (n < 1) throw InputError("complete_graph: n must be >= 1");
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) es.emplace_back(u, v);
    return MultiGraph(n, std::move(es));
}

MultiGraph complete_minus_edge(int n) {
    if (n < 2) throw InputError("complete_minus_edge: n must be >= 2");
    auto g = complete_graph(n);
    auto es = g.edges();
    es.erase(es.begin()); // drop edge (0,1)
    return MultiGraph(n, std::move(es));
}

MultiGraph cycle_graph(int n) {
    if (n < 2) throw InputError("cycle_graph: n must be >= 2 (C_1 would be a loop)");
    std::vector<std::pair<int, int>> es;
    for (int v = 0; v < n; ++v) es.emplace_back(v, (v + 1) % n);
    return MultiGraph(n, std::move(es));
}

MultiGraph wheel_graph(int k) {
    if (k < 1) throw InputError("wheel_graph: k must be >= 1");
    if (k == 1) return complete_graph(3); // W_1 is defined as a triangle
    std::vector<std::pair<int, int>> es;
    for (int v = 0; v < k; ++v) es.emplace_back(v, (v + 1) % k);
    for (int v = 0; v < k; ++v) es.emplace_back(v, k); // hub is vertex k
    return MultiGraph(k + 1, std::move(es));
}

MultiGraph complete_bipartite(int a, int b) {
    if (a < 1 || b < 1) throw InputError("complete_bipartite: parts must be >= 1");
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < b; ++v) es.emplace_back(u, a + v);
    return MultiGraph(a + b, std::move(es));
}

MultiGraph two_sum(const MultiGraph& g1, int e1, const MultiGraph& g2, int e2) {
    if (e1 < 0 || e1 >= g1.size() || e2 < 0 || e2 >= g2.size())
        throw InputError("two_sum: designated edge index out of range");
    auto [a1, b1] = g1.edge(e1);
    auto [a2, b2] = g2.edge(e2);
    const int n1 = g1.order();
    // Map g2 vertices: glued endpoints onto g1's, the rest appended densely.
    std::vector<int> map2(static_cast<size_t>(g2.order()), -1);
    map2[static_cast<size_t>(a2)] = a1;
    map2[static_cast<size_t>(b2)] = b1;
    int next = n1;
    for (int v = 0; v < g2.order(); ++v)
        if (map2[static_cast<size_t>(v)] < 0) map2[static_cast<size_t>(v)] = next++;
    std::vector<std::pair<int, int>> es = g1.edges();
    for (int i = 0; i < g2.size(); ++i) {
        if (i == e2) continue; // identified with e1, kept once
        auto [u, v] = g2.edge(i);
        es.emplace_back(map2[static_cast<size_t>(u)], map2[static_cast<size_t>(v)]);
    }
    return MultiGraph(next, std::move(es));
}

MultiGraph gen_family(const FamilySpec& spec) {
    using K = FamilySpec::Kind;
    switch (spec.kind) {
        case K::Complete: return complete_graph(spec.a);
        case K::CompleteMinusEdge: return complete_minus_edge(spec.a);
        case K::Cycle: return cycle_graph(spec.a);
        case K::Wheel: return wheel_graph(spec.a);
        case K::CompleteBipartite: return complete_bipartite(spec.a, spec.b);
        case K::TwoSum: {
            if (!spec.left || !spec.right) throw InputError("gen_family: TwoSum needs two operands");
            return two_sum(gen_family(*spec.left), 0, gen_family(*spec.right), 0);
        }
    }
    throw InputError("gen_family: unknown family tag");
}

} // namespace gconn
