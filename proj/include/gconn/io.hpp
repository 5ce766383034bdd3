#pragma once

#include <string>

#include "gconn/multigraph.hpp"

namespace gconn {

/// Decode a graph6 string (printable upper-triangle encoding of a simple
/// graph). Strict: rejects bad header bytes, wrong length and nonzero
/// padding bits.
MultiGraph decode_graph6(const std::string& text);

/// Encode a simple graph as graph6, zero-padded to a 6-bit boundary.
/// Rejects graphs with parallel edges.
std::string encode_graph6(const MultiGraph& g);

/// DOT text for viewing; parallel edges emit repeated `--` statements and
/// isolated vertices emit bare node statements.
std::string to_dot(const MultiGraph& g, const std::string& name = "g");

/// Parse the DOT subset produced by to_dot (integer vertex ids only).
MultiGraph from_dot(const std::string& text);

} // namespace gconn
