#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gconn/canonical.hpp"
#include "gconn/flows.hpp"
#include "gconn/multigraph.hpp"

namespace gconn {

/// One reduction event. Contract steps reference edge indices of the graph
/// as it is at that point of the trace; the referenced subgraph carries a
/// certification tag (pattern name, or "oracle-verified" when the flow
/// oracle certified it directly).
struct ReductionStep {
    enum class Kind { Contract, Lift };
    Kind kind = Kind::Contract;
    std::string pattern;    // 2-cycle | even-wheel | K5 | K5- | oracle-verified
    std::vector<int> edges; // Contract only
    int u = -1, v = -1, w = -1; // Lift only
};

struct ReductionTrace {
    MultiGraph initial;
    std::vector<ReductionStep> steps;
    MultiGraph terminal;
};

/// Replay the steps from the initial graph; throws if anything is
/// inconsistent. Returns the computed terminal.
MultiGraph replay_trace(const ReductionTrace& trace);
/// Replay plus per-step certification checks (patterns re-verified
/// structurally, oracle steps re-run when within budget).
bool verify_trace(const ReductionTrace& trace, const OracleLimits& limits, std::string* why = nullptr);

std::string trace_to_text(const ReductionTrace& trace);
ReductionTrace trace_from_text(const std::string& text);

/// Delete edges uv and uw, add vw. Requires d(u) >= 4 and both edges
/// present; u, v, w distinct.
MultiGraph lift(const MultiGraph& g, int u, int v, int w);

struct PatternMatch {
    std::string pattern;
    std::vector<int> edges; // sorted edge indices
};

/// Smallest-edge-count certified pattern in G: a 2-cycle, an even wheel,
/// K5 or K5 minus an edge; ties broken by lexicographically smallest edge
/// set. Wheels and complete patterns are read off vertex subsets (one edge
/// instance per adjacent pair).
std::optional<PatternMatch> find_contractible_subgraph(const MultiGraph& g);
/// Every pattern match (used by the contraction-equivalence property tests).
std::vector<PatternMatch> find_all_contractible_subgraphs(const MultiGraph& g);

/// Repeatedly contract pattern matches until none is left.
ReductionTrace reduce_greedy(const MultiGraph& g);

/// Grow a certified subgraph: absorb any outside vertex tied to the current
/// core by at least two edges. The seed must be certified (greedy to K1, or
/// the oracle within budget); throws otherwise. Returns the enlarged edge set.
std::vector<int> attach_vertex_closure(const MultiGraph& g, const std::vector<int>& seed_edges,
                                       const OracleLimits& limits = {});

/// Memoized certification of small graphs: greedy pattern reduction to K1
/// first, flow oracle as fallback.
class CertificationCache {
public:
    bool z3_certified(const MultiGraph& g, const OracleLimits& limits);

private:
    std::unordered_map<CanonicalForm, bool, CanonicalFormHash> memo_;
};

enum class ContractionTarget { K1, K4 };

inline constexpr int kMaxContractionOrder = 9;

/// Exhaustive decision of Z3-contractibility to K1 or K4, with a witness
/// trace. Complete: a contraction sequence exists to K1 iff the graph itself
/// is Z3-connected, and to K4 iff some partition into four connected,
/// Z3-connected classes has simple-K4 quotient (every step of any sequence
/// merges within one final class, and a certified class can always be
/// contracted in one step). Order capped at 9.
std::optional<ReductionTrace> contracts_to(const MultiGraph& g, ContractionTarget target,
                                           const OracleLimits& limits = {}, CertificationCache* cache = nullptr);

/// Partition-quotient contractibility without any Z3 certification of the
/// classes (the flow-theoretic "can be contracted to exactly K4").
bool weakly_contracts_to_k4(const MultiGraph& g, const OracleLimits& limits = {});

/// Any two edges joined by a chain of cycles of length <= 3, consecutive
/// cycles sharing exactly one edge.
bool triangularly_connected(const MultiGraph& g);

bool is_odd_wheel(const MultiGraph& g);

/// Representation of G as iterated 2-sums of odd wheels (triangles counted
/// as wheels), or nothing. Requires triangular connectivity; order capped
/// at 9.
std::optional<std::vector<MultiGraph>> fan_decomposition(const MultiGraph& g);

} // namespace gconn
