#pragma once

#include <vector>

#include "gconn/canonical.hpp"
#include "gconn/multigraph.hpp"

namespace gconn {

/// Constraints for the small-graph census. Graphs are always simple; the
/// alpha constraint is enforced structurally by enumerating triangle-free
/// complements.
struct CensusOptions {
    bool alpha_le_2 = true;
    int min_edge_connectivity = 3;
    bool require_connected = false; // implied by min_edge_connectivity >= 1
    int threads = 0;                // 0 = runtime default
};

inline constexpr int kMaxCensusOrder = 10;

/// Exactly one representative per isomorphism class of order n satisfying
/// the constraints, sorted by canonical form. Classes grow one vertex at a
/// time from the (n-1)-level with isomorph rejection by canonical form; with
/// the alpha constraint on, the level sets are the triangle-free complement
/// classes. Refuses n outside 1..10.
std::vector<MultiGraph> enumerate_census(int n, const CensusOptions& opts = {});

/// Serial reference used by tests and the benchmark; same contract.
std::vector<MultiGraph> enumerate_census_serial(int n, const CensusOptions& opts = {});

/// One census row: `graph6 <TAB> n <TAB> m <TAB> edge_conn <TAB> alpha`,
/// edge connectivity printed as "inf" for K1.
std::string census_line(const MultiGraph& g);

} // namespace gconn
