#pragma once

#include <limits>

#include "gconn/multigraph.hpp"

namespace gconn {

/// Sentinel for the edge connectivity of K1 (and the empty graph): the
/// reduction calculus ends at K1 and a infinite cut keeps it from being
/// special-cased by callers.
inline constexpr int kInfiniteEdgeConnectivity = std::numeric_limits<int>::max();

/// Global minimum edge cut, multiplicities counted (Stoer-Wagner on the
/// multiplicity matrix). Disconnected graphs report 0; order <= 1 reports
/// the infinite sentinel.
int edge_connectivity(const MultiGraph& g);

/// Exact independence number of the underlying simple graph.
int independence_number(const MultiGraph& g);

/// alpha(G) <= 2, decided as "the complement has no triangle".
bool alpha_le_2(const MultiGraph& g);

} // namespace gconn
