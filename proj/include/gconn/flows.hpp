#pragma once

#include <cstdint>
#include <vector>

#include "gconn/multigraph.hpp"

namespace gconn {

/// Edge directions relative to stored endpoints: bit i set means edge i runs
/// from its smaller endpoint to the larger one.
struct Orientation {
    std::vector<uint8_t> bits;
    static Orientation reference(int m) { return {std::vector<uint8_t>(static_cast<size_t>(m), 1)}; }
};

/// Z_k element per edge, read under a fixed orientation.
struct FlowAssignment {
    std::vector<int> values;
};

/// b : V -> Z_k; only zero-sum demands are meaningful.
struct BoundaryDemand {
    int modulus = 3;
    std::vector<int> values;
    bool zero_sum() const;
};

/// The set of boundaries realizable by nowhere-zero Z_k assignments, stored
/// as a bitset over base-k encodings of b restricted to vertices 0..n-2
/// (vertex n-1 is forced by the zero sum).
class AchievableSet {
public:
    AchievableSet() = default;
    AchievableSet(int k, int n);

    int modulus() const { return k_; }
    int order() const { return n_; }
    uint64_t universe() const { return universe_; }
    uint64_t count() const { return count_; }
    bool full() const { return count_ == universe_; }

    uint64_t encode(const BoundaryDemand& b) const;
    BoundaryDemand decode(uint64_t idx) const;
    bool contains(const BoundaryDemand& b) const;
    bool contains_zero() const { return test(0); }

    bool test(uint64_t idx) const { return (words_[idx >> 6] >> (idx & 63)) & 1; }
    /// Returns true when the bit was newly set.
    bool set(uint64_t idx);
    /// Union; returns the number of newly set bits.
    uint64_t merge(const AchievableSet& other);

    friend bool operator==(const AchievableSet& a, const AchievableSet& b) {
        return a.k_ == b.k_ && a.n_ == b.n_ && a.words_ == b.words_;
    }

private:
    int k_ = 0;
    int n_ = 0;
    uint64_t universe_ = 0;
    uint64_t count_ = 0;
    std::vector<uint64_t> words_;
};

struct OracleLimits {
    /// Value enumeration runs (k-1)^m steps; refused unless that fits in
    /// 2^max_flow_edges (so for k = 3 this is just m <= max_flow_edges).
    int max_flow_edges = 28;
    /// Orientation enumeration runs 2^m steps.
    int max_orientation_edges = 30;
    int threads = 0; // 0 = runtime default
};

/// Boundary of f under the given orientation, reduced into Z_k.
BoundaryDemand boundary(const MultiGraph& g, const Orientation& d, const FlowAssignment& f, int k);

/// Exact achievable-boundary set by Gray-code enumeration of all
/// (k-1)^m nowhere-zero assignments under the reference orientation;
/// each step touches two vertex accumulators. OpenMP partitions the
/// enumeration by the values of the first few edges.
AchievableSet achievable_boundaries(const MultiGraph& g, int k, const OracleLimits& limits = {});
/// Serial reference for the same set; kept for tests and the benchmark.
AchievableSet achievable_boundaries_serial(const MultiGraph& g, int k, const OracleLimits& limits = {});
/// Same set computed under an arbitrary base orientation (flipping an edge
/// negates its contribution; the set must not change).
AchievableSet achievable_boundaries_under(const MultiGraph& g, int k, const Orientation& base,
                                          const OracleLimits& limits = {});

/// |achievable set| == k^(n-1). False for disconnected graphs of order >= 2.
bool is_group_connected(const MultiGraph& g, int k, const OracleLimits& limits = {});
/// Zero demand is achievable.
bool has_nowhere_zero_flow(const MultiGraph& g, int k, const OracleLimits& limits = {});

/// Boundaries of the form (outdegree - indegree) mod 3 over all 2^m
/// orientations; by the inversion argument this must equal the k = 3
/// achievable set, and the two are computed by independent routes.
AchievableSet orientation_achievable_set(const MultiGraph& g, const OracleLimits& limits = {});
AchievableSet orientation_achievable_set_serial(const MultiGraph& g, const OracleLimits& limits = {});
/// Some orientation realizes outdeg-indeg == b (mod 3) at every vertex.
bool orientation_achieves(const MultiGraph& g, const BoundaryDemand& b, const OracleLimits& limits = {});

/// Demand with index idx for a k,n boundary space (helper for sweeps).
BoundaryDemand demand_from_index(int k, int n, uint64_t idx);
uint64_t demand_space_size(int k, int n);

} // namespace gconn
