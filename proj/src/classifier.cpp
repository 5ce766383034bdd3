#include "gconn/classifier.hpp"

#include <sstream>

#include "gconn/connectivity.hpp"
#include "gconn/error.hpp"
#include "gconn/io.hpp"

#include "json.hpp"

namespace gconn {

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Z3Connected: return "z3-connected";
        case Outcome::ContractsToK4: return "contracts-to-k4";
        case Outcome::Exceptional: return "exceptional";
    }
    return "?";
}

namespace {

void check_hypothesis(const MultiGraph& g) {
    if (!g.is_simple()) throw InputError("classify: graph must be simple");
    if (g.order() >= 2) {
        int ec = edge_connectivity(g);
        if (ec < 3) throw InputError("classify: graph must be 3-edge-connected (found cut of size " +
                                     std::to_string(ec) + ")");
    }
    if (!alpha_le_2(g)) throw InputError("classify: independence number exceeds 2");
}

} // namespace

Verdict classify(const MultiGraph& g, const Catalog& catalog, const OracleLimits& limits) {
    check_hypothesis(g);
    Verdict v;

    // Exceptional graphs never burn search budget.
    if (auto name = catalog.match(g)) {
        v.outcome = Outcome::Exceptional;
        v.exception_name = *name;
        v.k4_special = are_isomorphic(g, complete_graph(4));
        return v;
    }

    ReductionTrace greedy = reduce_greedy(g);
    if (greedy.terminal.order() == 1) {
        v.outcome = Outcome::Z3Connected;
        v.trace = std::move(greedy);
        return v;
    }
    if (are_isomorphic(greedy.terminal, complete_graph(4))) {
        v.outcome = Outcome::ContractsToK4;
        v.trace = std::move(greedy);
        return v;
    }

    CertificationCache cache;
    if (auto t = contracts_to(g, ContractionTarget::K1, limits, &cache)) {
        v.outcome = Outcome::Z3Connected;
        v.trace = std::move(t);
        return v;
    }
    if (auto t = contracts_to(g, ContractionTarget::K4, limits, &cache)) {
        v.outcome = Outcome::ContractsToK4;
        v.trace = std::move(t);
        return v;
    }
    // The trichotomy guarantees a catalog member at this point; reaching
    // here means the catalog or a search is wrong.
    throw Error("classify: soundness alarm: " + encode_graph6(g) +
                " resists K1 and K4 contraction but is not in the verified catalog");
}

bool predict_nz3(const MultiGraph& g, const Catalog& catalog, const std::vector<FamilyEntry>& families,
                 const OracleLimits& limits) {
    if (g.order() >= 2 && edge_connectivity(g) < 2) throw InputError("predict_nz3: graph has a bridge or is disconnected");
    if (!alpha_le_2(g)) throw InputError("predict_nz3: independence number exceeds 2");
    if (weakly_contracts_to_k4(g, limits)) return false;
    if (auto name = catalog.match(g))
        if (*name == "G3" || *name == "G5" || *name == "G18") return false;
    if (!families.empty() && g.size() > 0 && !g.is_simple())
        if (match_family(g, families)) return false;
    return true;
}

std::string verdict_tsv(const MultiGraph& g, const Verdict& v) {
    std::ostringstream os;
    os << encode_graph6(g) << '\t' << outcome_name(v.outcome) << '\t';
    if (v.outcome == Outcome::Exceptional) {
        os << "catalog=" << v.exception_name;
        if (v.k4_special) os << ";k4-special";
    } else {
        os << "steps=" << (v.trace ? v.trace->steps.size() : 0);
    }
    return os.str();
}

std::string verdict_jsonl(const MultiGraph& g, const Verdict& v) {
    nlohmann::json j;
    j["graph6"] = encode_graph6(g);
    j["outcome"] = outcome_name(v.outcome);
    if (v.outcome == Outcome::Exceptional) {
        j["exception"] = v.exception_name;
        j["k4_special"] = v.k4_special;
    }
    if (v.trace) {
        nlohmann::json steps = nlohmann::json::array();
        for (const auto& s : v.trace->steps) {
            nlohmann::json js;
            if (s.kind == ReductionStep::Kind::Contract) {
                js["kind"] = "contract";
                js["pattern"] = s.pattern;
                js["edges"] = s.edges;
            } else {
                js["kind"] = "lift";
                js["u"] = s.u;
                js["v"] = s.v;
                js["w"] = s.w;
            }
            steps.push_back(std::move(js));
        }
        j["trace"] = std::move(steps);
    }
    return j.dump();
}

} // namespace gconn
