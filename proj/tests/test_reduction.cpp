#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "gconn/census.hpp"
#include "gconn/error.hpp"
#include "gconn/flows.hpp"
#include "gconn/io.hpp"
#include "gconn/multigraph.hpp"
#include "gconn/reduction.hpp"
#include "oracles.hpp"

using namespace gconn;

namespace {

MultiGraph prism() {
    // two triangles plus a perfect matching
    return build_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}});
}

std::vector<MultiGraph> census_upto(int max_n, int min_conn = 3, bool alpha = true) {
    std::vector<MultiGraph> out;
    CensusOptions opts;
    opts.alpha_le_2 = alpha;
    opts.min_edge_connectivity = min_conn;
    for (int n = 1; n <= max_n; ++n)
        for (auto& g : enumerate_census(n, opts)) out.push_back(g);
    return out;
}

} // namespace

TEST_CASE("lift") {
    MultiGraph w4 = wheel_graph(4); // hub = 4, degree 4
    MultiGraph lifted = lift(w4, 4, 0, 1);
    CHECK(lifted.size() == w4.size() - 1);
    CHECK(lifted.order() == w4.order());
    CHECK(lifted.multiplicity(0, 1) == 2); // rim edge 0-1 now doubled
    CHECK(lifted.multiplicity(4, 0) == 0);

    CHECK_THROWS_AS(lift(complete_graph(4), 0, 1, 2), InputError); // d(u) = 3
    CHECK_THROWS_AS(lift(w4, 4, 0, 0), InputError);                // vertices must differ
    CHECK_THROWS_AS(lift(w4, 0, 1, 3), InputError);                // rim vertex has degree 3
    MultiGraph chord = lift(w4, 4, 0, 2);                          // opposite spokes lift to a rim chord
    CHECK(chord.multiplicity(0, 2) == 1);
    CHECK(chord.size() == w4.size() - 1);
}

TEST_CASE("find_contractible_subgraph") {
    // doubled edge wins as the smallest pattern
    MultiGraph doubled = build_graph(3, {{0, 1}, {0, 1}, {1, 2}, {0, 2}});
    auto m = find_contractible_subgraph(doubled);
    REQUIRE(m);
    CHECK(m->pattern == "2-cycle");
    CHECK(m->edges == std::vector<int>{0, 1});

    // K6 contains a K5, but the smallest-edge-count rule prefers the
    // 4-wheel sitting inside it (8 edges against 10)
    auto k6 = find_contractible_subgraph(complete_graph(6));
    REQUIRE(k6);
    CHECK(k6->pattern == "even-wheel");
    bool k5_found = false;
    for (const auto& match : find_all_contractible_subgraphs(complete_graph(6)))
        k5_found = k5_found || (match.pattern == "K5" && match.edges.size() == 10);
    CHECK(k5_found);

    // K4 has nothing
    CHECK_FALSE(find_contractible_subgraph(complete_graph(4)));

    // W4 is its own even-wheel match
    auto w4 = find_contractible_subgraph(wheel_graph(4));
    REQUIRE(w4);
    CHECK(w4->pattern == "even-wheel");
    CHECK(w4->edges.size() == 8);

    // a K5- with its W4s removed by edge deletions would be needed to see the
    // bare pattern; here the wheel again wins on edge count
    bool k5m_found = false;
    for (const auto& match : find_all_contractible_subgraphs(complete_minus_edge(5)))
        k5m_found = k5m_found || (match.pattern == "K5-" && match.edges.size() == 9);
    CHECK(k5m_found);
}

TEST_CASE("reduce_greedy") {
    // W4 reduces to K1
    ReductionTrace t = reduce_greedy(wheel_graph(4));
    CHECK(t.terminal.order() == 1);
    CHECK(replay_trace(t) == t.terminal);

    // K4 is terminal with an empty trace
    ReductionTrace k4 = reduce_greedy(complete_graph(4));
    CHECK(k4.steps.empty());
    CHECK(k4.terminal == complete_graph(4));

    // triangle with one doubled edge: 2-cycle, then 2-cycle, then K1
    MultiGraph tri2 = build_graph(3, {{0, 1}, {0, 1}, {1, 2}, {0, 2}});
    ReductionTrace t2 = reduce_greedy(tri2);
    CHECK(t2.terminal.order() == 1);
    REQUIRE(t2.steps.size() == 2);
    CHECK(t2.steps[0].pattern == "2-cycle");
    CHECK(t2.steps[1].pattern == "2-cycle");

    // greedy terminal K1 implies the oracle agrees, and certified steps
    // preserve the oracle verdict through the whole trace
    for (const auto& g : census_upto(7)) {
        if (g.size() > 16) continue;
        ReductionTrace tr = reduce_greedy(g);
        CHECK(replay_trace(tr) == tr.terminal);
        if (tr.terminal.order() == 1) CHECK(is_group_connected(g, 3));
        if (g.size() <= 12) {
            MultiGraph cur = g;
            bool verdict = is_group_connected(cur, 3);
            for (const auto& s : tr.steps) {
                cur = contract_edges(cur, s.edges).graph;
                CHECK(is_group_connected(cur, 3) == verdict);
            }
        }
    }
}

TEST_CASE("attach_vertex_closure") {
    // K5 inside K6 absorbs the sixth vertex
    MultiGraph k6 = complete_graph(6);
    std::vector<int> seed;
    for (int i = 0; i < k6.size(); ++i) {
        auto [u, v] = k6.edge(i);
        if (u < 5 && v < 5) seed.push_back(i);
    }
    auto closure = attach_vertex_closure(k6, seed);
    CHECK(closure.size() == static_cast<size_t>(k6.size())); // everything absorbed

    // a pendant vertex with one edge is not absorbed
    MultiGraph pend = build_graph(3, {{0, 1}, {0, 1}, {1, 2}});
    auto cl = attach_vertex_closure(pend, {0, 1});
    CHECK(cl == std::vector<int>{0, 1});

    // isolated vertex untouched
    MultiGraph iso = build_graph(3, {{0, 1}, {0, 1}});
    CHECK(attach_vertex_closure(iso, {0, 1}) == std::vector<int>{0, 1});

    // uncertified seed is rejected (single edge is not Z3-connected)
    CHECK_THROWS_AS(attach_vertex_closure(pend, {2}), InputError);

    // closures are always certified
    std::mt19937 rng(23);
    for (const auto& g : census_upto(6)) {
        if (g.size() > 12) continue;
        auto match = find_contractible_subgraph(g);
        if (!match) continue;
        auto grown = attach_vertex_closure(g, match->edges);
        auto sub = subgraph_from_edges(g, grown);
        CHECK(is_group_connected(sub.graph, 3));
    }
}

TEST_CASE("triangular connectivity") {
    CHECK(triangularly_connected(complete_graph(4)));
    CHECK_FALSE(triangularly_connected(cycle_graph(4)));
    CHECK(triangularly_connected(wheel_graph(5)));
    CHECK(triangularly_connected(cycle_graph(2)));
    CHECK(triangularly_connected(MultiGraph(2, {{0, 1}}))); // single edge, vacuous
    CHECK_THROWS_AS(triangularly_connected(MultiGraph(1, {})), InputError);

    // two triangles sharing two parallel instances is NOT a legal chain step:
    // edges c and d can only be linked through cycles sharing exactly one edge
    MultiGraph tricky = build_graph(3, {{0, 1}, {0, 1}, {1, 2}, {0, 2}});
    // cycles: {0,1} (parallel pair), {0,2,3}, {1,2,3}; every pair of edges is
    // linked here (the parallel pair shares exactly one edge with each
    // triangle), so this one is triangularly connected
    CHECK(triangularly_connected(tricky));
}

TEST_CASE("odd wheels") {
    CHECK(is_odd_wheel(complete_graph(3)));
    CHECK(is_odd_wheel(complete_graph(4)));
    CHECK(is_odd_wheel(wheel_graph(5)));
    CHECK(is_odd_wheel(wheel_graph(7)));
    CHECK_FALSE(is_odd_wheel(wheel_graph(4)));
    CHECK_FALSE(is_odd_wheel(cycle_graph(5)));
    CHECK_FALSE(is_odd_wheel(wheel_graph(2)));
}

TEST_CASE("fan decomposition") {
    auto k4 = fan_decomposition(complete_graph(4));
    REQUIRE(k4);
    CHECK(k4->size() == 1);

    auto k4minus = fan_decomposition(complete_minus_edge(4));
    REQUIRE(k4minus);
    CHECK(k4minus->size() == 2);
    CHECK(are_isomorphic((*k4minus)[0], complete_graph(3)));
    CHECK(are_isomorphic((*k4minus)[1], complete_graph(3)));

    CHECK_FALSE(fan_decomposition(wheel_graph(4)));
    CHECK_THROWS_AS(fan_decomposition(cycle_graph(4)), InputError); // not triangularly connected

    // agreement with the oracle on triangularly connected census graphs
    for (const auto& g : census_upto(7)) {
        if (g.size() < 1 || !triangularly_connected(g)) continue;
        bool decomposed = fan_decomposition(g).has_value();
        CHECK(decomposed == !is_group_connected(g, 3));
    }
}

TEST_CASE("contracts_to") {
    // K4 to K4: empty witness
    auto t = contracts_to(complete_graph(4), ContractionTarget::K4);
    REQUIRE(t);
    CHECK(t->steps.empty());

    // W4 to K1
    auto w4 = contracts_to(wheel_graph(4), ContractionTarget::K1);
    REQUIRE(w4);
    CHECK(w4->terminal.order() == 1);
    CHECK(replay_trace(*w4) == w4->terminal);

    // prism: triangles are not Z3-connected classes, so neither target works
    CHECK_FALSE(contracts_to(prism(), ContractionTarget::K1));
    CHECK_FALSE(contracts_to(prism(), ContractionTarget::K4));
    // but the flow-sense partition contraction reaches K4
    CHECK(weakly_contracts_to_k4(prism()));
    CHECK_FALSE(weakly_contracts_to_k4(wheel_graph(5)));
    CHECK(weakly_contracts_to_k4(complete_graph(4)));
    CHECK_FALSE(weakly_contracts_to_k4(complete_graph(5)));

    // K1 reachability coincides with the oracle on the census
    CertificationCache cache;
    for (const auto& g : census_upto(6)) {
        auto trace = contracts_to(g, ContractionTarget::K1, {}, &cache);
        CHECK(trace.has_value() == is_group_connected(g, 3));
        if (trace) CHECK(replay_trace(*trace).order() == 1);
    }

    CHECK_THROWS_AS(contracts_to(complete_graph(10), ContractionTarget::K1), BudgetError);
}

TEST_CASE("lifting implication against the oracle") {
    // If the lifted graph is Z3-connected then so is the original; sampled
    // over every valid lift position on small census graphs.
    std::mt19937 rng(77);
    int done = 0;
    for (const auto& g : census_upto(6, 1, false)) {
        if (g.size() > 12 || g.order() < 3) continue;
        for (int u = 0; u < g.order() && done < 60; ++u) {
            if (g.degree(u) < 4) continue;
            std::vector<int> nbrs;
            for (int v = 0; v < g.order(); ++v)
                if (v != u && g.adjacent(u, v)) nbrs.push_back(v);
            if (nbrs.size() < 2) continue;
            int v = nbrs[rng() % nbrs.size()], w = v;
            while (w == v) w = nbrs[rng() % nbrs.size()];
            MultiGraph lifted = lift(g, u, v, w);
            if (is_group_connected(lifted, 3)) CHECK(is_group_connected(g, 3));
            ++done;
        }
    }
    CHECK(done > 20);
}

TEST_CASE("trace text round trip and verification") {
    MultiGraph tri2 = build_graph(3, {{0, 1}, {0, 1}, {1, 2}, {0, 2}});
    ReductionTrace t = reduce_greedy(tri2);
    std::string text = trace_to_text(t);
    ReductionTrace back = trace_from_text(text);
    CHECK(back.initial == t.initial);
    CHECK(back.terminal == t.terminal);
    CHECK(back.steps.size() == t.steps.size());
    std::string why;
    CHECK(verify_trace(back, {}, &why));

    // corrupt the pattern tag: verification must fail
    ReductionTrace badt = t;
    badt.steps[0].pattern = "K5";
    CHECK_FALSE(verify_trace(badt, {}, &why));
    CHECK(!why.empty());

    // corrupt the terminal
    ReductionTrace badterm = t;
    badterm.terminal = complete_graph(2);
    CHECK_FALSE(verify_trace(badterm, {}, &why));

    // an oracle-verified whole-graph step verifies too
    auto w4k1 = contracts_to(wheel_graph(4), ContractionTarget::K1);
    REQUIRE(w4k1);
    CHECK(verify_trace(*w4k1, {}, &why));
}

TEST_CASE("certified pattern contractions preserve the oracle verdict") {
    for (const auto& g : census_upto(5)) {
        if (g.size() > 12) continue;
        bool verdict = is_group_connected(g, 3);
        for (const auto& match : find_all_contractible_subgraphs(g)) {
            MultiGraph contracted = contract_edges(g, match.edges).graph;
            CHECK(is_group_connected(contracted, 3) == verdict);
        }
    }
}
