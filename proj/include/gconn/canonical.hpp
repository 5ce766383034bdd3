#pragma once

#include <cstdint>
#include <vector>

#include "gconn/multigraph.hpp"

namespace gconn {

/// Isomorphism-class certificate: order byte followed by the upper triangle
/// of the multiplicity matrix, column by column, minimized lexicographically
/// over all vertex permutations. Equal bytes iff isomorphic (respecting edge
/// multiplicities).
struct CanonicalForm {
    std::vector<uint8_t> bytes;
    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
    friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

struct CanonicalFormHash {
    size_t operator()(const CanonicalForm& f) const {
        // FNV-1a
        size_t h = 1469598103934665603ull;
        for (uint8_t b : f.bytes) h = (h ^ b) * 1099511628211ull;
        return h;
    }
};

/// Brute-force permutation search with column-wise pruning against the best
/// string found so far, plus twin skipping (interchangeable vertices explored
/// once per node). Adequate through order 10.
CanonicalForm canonical_form(const MultiGraph& g);

bool are_isomorphic(const MultiGraph& a, const MultiGraph& b);

/// The vertex order realizing the canonical form (position -> vertex).
std::vector<int> canonical_order(const MultiGraph& g);

/// Form plus the canonically relabeled representative (identical for every
/// member of the isomorphism class) from one search.
std::pair<CanonicalForm, MultiGraph> canonicalize(const MultiGraph& g);

} // namespace gconn
