#pragma once

#include <optional>
#include <string>

#include "gconn/catalog.hpp"
#include "gconn/multigraph.hpp"
#include "gconn/reduction.hpp"

namespace gconn {

enum class Outcome { Z3Connected, ContractsToK4, Exceptional };

std::string outcome_name(Outcome o);

struct Verdict {
    Outcome outcome = Outcome::Z3Connected;
    std::optional<ReductionTrace> trace; // for the contraction outcomes
    std::string exception_name;          // for Exceptional
    /// K4 is both the exceptional G1 and a trivially terminal K4; it reports
    /// Exceptional("G1") with this flag raised.
    bool k4_special = false;
};

/// Trichotomy for simple, 3-edge-connected graphs with alpha <= 2 (checked;
/// violations are rejected). Pipeline: catalog match, then greedy pattern
/// reduction, then the exhaustive contraction searches; a graph resisting
/// everything without a catalog match trips a soundness alarm.
Verdict classify(const MultiGraph& g, const Catalog& catalog, const OracleLimits& limits = {});

/// Nowhere-zero 3-flow prediction for bridgeless graphs with alpha <= 2:
/// no flow exactly when the graph contracts to exactly K4 (partition
/// quotient), is one of G3, G5, G18, or matches a populated multigraph
/// family. Evaluated without the flow oracle.
bool predict_nz3(const MultiGraph& g, const Catalog& catalog, const std::vector<FamilyEntry>& families = {},
                 const OracleLimits& limits = {});

/// `graph6 <TAB> outcome <TAB> certificate-ref`.
std::string verdict_tsv(const MultiGraph& g, const Verdict& v);
/// JSON line with the embedded trace.
std::string verdict_jsonl(const MultiGraph& g, const Verdict& v);

} // namespace gconn
