#pragma once

#include <memory>
#include <utility>
#include <vector>

namespace gconn {

/// Loopless undirected multigraph. Vertices are dense integers 0..n-1,
/// edges carry stable indices 0..m-1 in construction order. Endpoints are
/// stored normalized as (min,max); parallel edges are distinct entries.
/// Immutable after construction, safe to share across threads.
class MultiGraph {
public:
    MultiGraph() = default;
    MultiGraph(int n, std::vector<std::pair<int, int>> edges);

    int order() const { return n_; }
    int size() const { return static_cast<int>(edges_.size()); }
    std::pair<int, int> edge(int i) const { return edges_[static_cast<size_t>(i)]; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    /// Degree counting multiplicities.
    int degree(int v) const;
    int multiplicity(int u, int v) const;
    bool adjacent(int u, int v) const { return multiplicity(u, v) > 0; }
    int max_multiplicity() const;
    bool is_simple() const { return max_multiplicity() <= 1; }

    /// n x n matrix of edge multiplicities.
    std::vector<std::vector<int>> multiplicity_matrix() const;

    /// Same adjacency with parallel edges collapsed to single edges.
    MultiGraph underlying_simple() const;
    /// Complement of the underlying simple graph.
    MultiGraph complement() const;
    /// Induced subgraph; vertices relabeled by position in `verts`.
    MultiGraph induced(const std::vector<int>& verts) const;

    bool connected() const;
    /// Component id per vertex, ids dense from 0 in first-seen order.
    std::vector<int> component_labels() const;

    /// Equality as labeled multigraphs: same order and the same multiset of
    /// endpoint pairs (edge index order is identity bookkeeping, not value).
    bool operator==(const MultiGraph& other) const;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
};

/// Validating constructor wrapper; rejects loops and out-of-range endpoints
/// naming the offending edge index.
MultiGraph build_graph(int n, const std::vector<std::pair<int, int>>& edges);

/// Subgraph spanned by an edge-index set: vertices are the endpoints of the
/// chosen edges, relabeled densely in increasing original order. Returns the
/// graph and the new->old vertex map.
struct EdgeSubgraph {
    MultiGraph graph;
    std::vector<int> vertex_of; // new label -> original label
};
EdgeSubgraph subgraph_from_edges(const MultiGraph& g, const std::vector<int>& edge_idx);

/// Result of contracting an edge set: each connected component of the chosen
/// edges merges to one vertex, loops are deleted, parallel edges retained.
/// New labels follow the smallest original vertex in each merged class.
struct ContractionResult {
    MultiGraph graph;
    std::vector<int> vertex_map; // original label -> new label
};
ContractionResult contract_edges(const MultiGraph& g, const std::vector<int>& edge_idx);

// --- standard families -----------------------------------------------------

/// Family tag + parameters. TwoSum glues the designated edges (index 0 of
/// each operand) identifying min endpoint with min endpoint.
struct FamilySpec {
    enum class Kind { Complete, CompleteMinusEdge, Cycle, Wheel, CompleteBipartite, TwoSum };
    Kind kind = Kind::Complete;
    int a = 0;
    int b = 0;
    std::shared_ptr<FamilySpec> left;
    std::shared_ptr<FamilySpec> right;
};

MultiGraph gen_family(const FamilySpec& spec);

MultiGraph complete_graph(int n);
MultiGraph complete_minus_edge(int n);
/// Cycle C_n, n >= 2; C_2 is the doubled edge.
MultiGraph cycle_graph(int n);
/// Wheel W_k, k >= 1: k-cycle rim plus a hub joined to every rim vertex.
/// W_1 is a triangle, W_2 has a doubled rim edge.
MultiGraph wheel_graph(int k);
MultiGraph complete_bipartite(int a, int b);
/// Identify edge e1 of g1 with edge e2 of g2 (smaller endpoints identified).
MultiGraph two_sum(const MultiGraph& g1, int e1, const MultiGraph& g2, int e2);

} // namespace gconn
