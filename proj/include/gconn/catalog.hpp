#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gconn/canonical.hpp"
#include "gconn/flows.hpp"
#include "gconn/multigraph.hpp"

namespace gconn {

/// One exceptional graph. Verdict fields are recomputed by verification;
/// the file copy is never trusted on its own.
struct CatalogEntry {
    std::string name; // G1..G18
    std::string g6;
    int order = 0;
    std::vector<int> degrees;     // sorted degree multiset
    bool k4_contractible = false; // partition-quotient contraction to exactly K4
    bool nz3_flow = false;        // nowhere-zero 3-flow exists
    bool alignment_full = true;   // name forced uniquely by the constraints
    std::vector<std::string> checks;

    MultiGraph graph() const;
};

class Catalog {
public:
    Catalog() = default;
    explicit Catalog(std::vector<CatalogEntry> entries);

    static Catalog load(const std::string& path);
    void save(const std::string& path) const;

    const std::vector<CatalogEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    const CatalogEntry* find(const std::string& name) const;
    /// Name of the unique entry isomorphic to g, if any.
    std::optional<std::string> match(const MultiGraph& g) const;

private:
    std::vector<CatalogEntry> entries_;
    std::unordered_map<CanonicalForm, size_t, CanonicalFormHash> by_form_;
};

/// Census classes (simple, 3-edge-connected, alpha <= 2) of orders
/// n_lo..n_hi that are Z3-contractible to neither K1 nor K4, sorted by
/// canonical form.
std::vector<MultiGraph> derive_exception_set(int n_lo, int n_hi, const OracleLimits& limits = {});

/// Every non-adjacent pair has degree sum >= n.
bool ore_condition(const MultiGraph& g);

/// Census classes additionally satisfying the Ore condition that the oracle
/// rejects as Z3-connected.
std::vector<MultiGraph> derive_ore_subcatalog(int n_lo, int n_hi, const OracleLimits& limits = {});

/// Full pipeline: derive the exception set, compute per-class facts, then
/// assign names by constraint search (orders, the Ore subset, flow
/// exceptionality, degree profiles, subgraph relations, triangular
/// connectivity). Names not forced by the constraints carry
/// alignment=partial and a deterministic tie-break.
Catalog derive_catalog(const OracleLimits& limits = {});

struct CatalogCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};
struct CatalogReport {
    std::vector<CatalogCheck> checks;
    bool all_pass() const;
    std::string to_tsv() const;
};

/// Per-entry invariants plus the documented profile facts: every entry is
/// simple, 3-edge-connected, alpha <= 2, min degree 3, not Z3-connected;
/// the 18 forms are distinct; G1 is K4; G9 carries 3-, 4- and 5-vertices;
/// G13 has degree multiset {3,3,3,3,4,4,4}; G15 has order 8; G17 contains
/// G6; G8 spans G9; G7, G11, G12 span G10; and the flow record of every
/// entry matches "no nowhere-zero 3-flow iff K4-contractible or one of
/// G3, G5, G18".
CatalogReport verify_catalog(const Catalog& catalog, const OracleLimits& limits = {});

/// Injective embedding of pattern into host preserving adjacency.
bool contains_subgraph(const MultiGraph& host, const MultiGraph& pattern);
/// Same order and an embedding.
bool spanning_subgraph_of(const MultiGraph& sub, const MultiGraph& host);

// --- multigraph families ----------------------------------------------------

/// Parametric multigraph family: a fixed base graph plus m parallel edges
/// joining the distinguished pair. Construction data comes from a derivation
/// pass; entries without data refuse generation explicitly.
struct FamilyEntry {
    std::string name; // G3' G4' G10' G11'
    int floor = 2;
    bool populated = false;
    std::string base_g6; // base without any u-v edges
    int u = -1, v = -1;
};

std::vector<FamilyEntry> default_family_entries();
MultiGraph gen_family_instance(const FamilyEntry& entry, int m);
std::vector<FamilyEntry> load_families(const std::string& path);
void save_families(const std::vector<FamilyEntry>& entries, const std::string& path);

/// Search construction data for each family: a vertex pair whose
/// multi-edge instances stay 3-edge-connected with alpha <= 2 and resist
/// Z3-contraction to both K1 and K4. Populates an entry only when the
/// qualifying construction is unique up to isomorphism; the report string
/// records what was found either way.
std::vector<FamilyEntry> derive_family_data(const Catalog& catalog, std::string* report,
                                            const OracleLimits& limits = {});

/// Name of the family entry one of whose instances is isomorphic to g.
std::optional<std::string> match_family(const MultiGraph& g, const std::vector<FamilyEntry>& entries);

} // namespace gconn
