#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "gconn/census.hpp"
#include "gconn/error.hpp"
#include "gconn/flows.hpp"
#include "gconn/multigraph.hpp"
#include "oracles.hpp"

using namespace gconn;
namespace oracle = test_oracles;

namespace {

std::set<std::vector<int>> as_demand_vectors(const AchievableSet& s) {
    std::set<std::vector<int>> out;
    for (uint64_t idx = 0; idx < s.universe(); ++idx)
        if (s.test(idx)) out.insert(s.decode(idx).values);
    return out;
}

std::vector<MultiGraph> small_connected_census(int max_n) {
    std::vector<MultiGraph> out;
    CensusOptions opts;
    opts.alpha_le_2 = false;
    opts.min_edge_connectivity = 1;
    for (int n = 1; n <= max_n; ++n)
        for (auto& g : enumerate_census(n, opts)) out.push_back(g);
    return out;
}

MultiGraph random_multigraph(std::mt19937& rng, int max_n, int max_m) {
    int n = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_n - 1));
    std::vector<std::pair<int, int>> es;
    int m = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_m));
    for (int i = 0; i < m; ++i) {
        int u = static_cast<int>(rng() % static_cast<unsigned>(n));
        int v = static_cast<int>(rng() % static_cast<unsigned>(n));
        if (u != v) es.emplace_back(u, v);
    }
    return MultiGraph(n, es);
}

} // namespace

TEST_CASE("boundary evaluation") {
    MultiGraph c2 = cycle_graph(2);
    Orientation both = Orientation::reference(2); // both edges 0 -> 1
    BoundaryDemand b = boundary(c2, both, FlowAssignment{{1, 1}}, 3);
    CHECK(b.values == std::vector<int>{2, 1});
    CHECK(b.zero_sum());

    // all-zero assignment has zero boundary
    MultiGraph w4 = wheel_graph(4);
    BoundaryDemand z = boundary(w4, Orientation::reference(w4.size()), FlowAssignment{std::vector<int>(8, 0)}, 3);
    CHECK(z.values == std::vector<int>(5, 0));

    // a triangle oriented as a directed cycle carries the constant circulation
    MultiGraph tri = complete_graph(3); // edges (0,1),(0,2),(1,2)
    Orientation cyc{{1, 0, 1}};         // 0->1, 2->0, 1->2
    BoundaryDemand circ = boundary(tri, cyc, FlowAssignment{{1, 1, 1}}, 3);
    CHECK(circ.values == std::vector<int>(3, 0));

    CHECK_THROWS_AS(boundary(c2, Orientation{{1}}, FlowAssignment{{1, 1}}, 3), InputError);
}

TEST_CASE("achievable sets on the smallest graphs") {
    AchievableSet k1 = achievable_boundaries(MultiGraph(1, {}), 3);
    CHECK(k1.universe() == 1);
    CHECK(k1.count() == 1);
    CHECK(k1.full()); // K1 is group connected vacuously

    AchievableSet c2 = achievable_boundaries(cycle_graph(2), 3);
    CHECK(c2.universe() == 3);
    CHECK(c2.count() == 3); // every zero-sum demand on 2 vertices

    AchievableSet c3 = achievable_boundaries(complete_graph(3), 3);
    CHECK(c3.universe() == 9);
    CHECK(c3.count() < 9); // strict subset: C_3 is not Z_3-connected
    CHECK(as_demand_vectors(c3) == oracle::naive_achievable(complete_graph(3), 3));
}

TEST_CASE("group connectivity pattern facts") {
    OracleLimits lim;
    CHECK(is_group_connected(complete_graph(5), 3, lim));
    CHECK(is_group_connected(complete_minus_edge(5), 3, lim));
    CHECK(is_group_connected(wheel_graph(4), 3, lim));
    CHECK_FALSE(is_group_connected(complete_graph(4), 3, lim)); // K4 = W_3
    CHECK_FALSE(is_group_connected(complete_bipartite(2, 2), 3, lim));
    CHECK_FALSE(is_group_connected(complete_bipartite(3, 3), 3, lim));
    CHECK(is_group_connected(complete_bipartite(4, 4), 3, lim));
    // disconnected graphs of order >= 2 are never group connected
    CHECK_FALSE(is_group_connected(MultiGraph(3, {{0, 1}}), 3, lim));
}

TEST_CASE("nowhere-zero flows") {
    CHECK(has_nowhere_zero_flow(cycle_graph(5), 3));
    CHECK_FALSE(has_nowhere_zero_flow(complete_graph(4), 3));
    CHECK(has_nowhere_zero_flow(complete_bipartite(3, 3), 3));
    CHECK(oracle::naive_has_nz_flow(complete_graph(4), 3) == false);
    CHECK(oracle::naive_has_nz_flow(complete_bipartite(3, 3), 3) == true);
    // edgeless graphs carry the empty flow
    CHECK(has_nowhere_zero_flow(MultiGraph(1, {}), 3));
}

TEST_CASE("cycle law: C_n is Z_k-connected iff k >= n+1") {
    for (int n = 2; n <= 5; ++n)
        for (int k = 3; k <= 6; ++k) CHECK(is_group_connected(cycle_graph(n), k) == (k >= n + 1));
}

TEST_CASE("group connectivity implies a nowhere-zero flow") {
    for (const auto& g : small_connected_census(5))
        for (int k = 3; k <= 4; ++k)
            if (is_group_connected(g, k)) CHECK(has_nowhere_zero_flow(g, k));
}

TEST_CASE("kernels agree with the naive oracle and with each other") {
    std::mt19937 rng(42);
    OracleLimits serial_forced;
    OracleLimits split_forced;
    split_forced.threads = 3; // forces the prefix-split path even on one core

    auto check_graph = [&](const MultiGraph& g, int k) {
        AchievableSet par = achievable_boundaries(g, k, split_forced);
        AchievableSet ser = achievable_boundaries_serial(g, k, serial_forced);
        CHECK(par == ser);
        CHECK(as_demand_vectors(ser) == oracle::naive_achievable(g, k));
    };

    for (const auto& g : small_connected_census(5))
        if (g.size() <= 12) check_graph(g, 3);
    for (int t = 0; t < 40; ++t) check_graph(random_multigraph(rng, 5, 10), 3);
    for (int t = 0; t < 10; ++t) check_graph(random_multigraph(rng, 4, 7), 5);
}

TEST_CASE("orientation kernel examples and equivalence") {
    // K4 cannot orient to all-zero demand
    BoundaryDemand zero4{3, {0, 0, 0, 0}};
    CHECK_FALSE(orientation_achieves(complete_graph(4), zero4));
    // C2: orient both edges the same way
    CHECK(orientation_achieves(cycle_graph(2), BoundaryDemand{3, {1, 2}}));
    // W4 achieves every zero-sum demand
    MultiGraph w4 = wheel_graph(4);
    AchievableSet w4set = orientation_achievable_set(w4);
    CHECK(w4set.full());

    // orientation route equals the naive orientation sweep
    std::mt19937 rng(9);
    for (int t = 0; t < 40; ++t) {
        MultiGraph g = random_multigraph(rng, 5, 10);
        AchievableSet s = orientation_achievable_set(g);
        CHECK(as_demand_vectors(s) == oracle::naive_orientation_boundaries(g));
        OracleLimits split;
        split.threads = 3;
        CHECK(orientation_achievable_set(g, split) == orientation_achievable_set_serial(g));
    }

    // the two independent routes produce the same set (orientation inversion
    // argument), all connected graphs with n <= 4 and a multigraph sample
    for (const auto& g : small_connected_census(4))
        CHECK(orientation_achievable_set(g) == achievable_boundaries(g, 3));
    for (int t = 0; t < 60; ++t) {
        MultiGraph g = random_multigraph(rng, 5, 9);
        CHECK(orientation_achievable_set(g) == achievable_boundaries(g, 3));
    }
}

TEST_CASE("achievable set is independent of the base orientation") {
    std::mt19937 rng(21);
    for (int t = 0; t < 30; ++t) {
        MultiGraph g = random_multigraph(rng, 5, 10);
        Orientation base = Orientation::reference(g.size());
        for (auto& bit : base.bits) bit = rng() % 2;
        CHECK(achievable_boundaries_under(g, 3, base) == achievable_boundaries(g, 3));
    }
}

TEST_CASE("verdicts are isomorphism invariant") {
    std::mt19937 rng(31);
    for (const MultiGraph& g : {complete_graph(4), wheel_graph(4), complete_bipartite(3, 3), cycle_graph(4)}) {
        bool gc = is_group_connected(g, 3);
        bool nz = has_nowhere_zero_flow(g, 3);
        for (int t = 0; t < 50; ++t) {
            std::vector<int> perm(static_cast<size_t>(g.order()));
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            std::vector<std::pair<int, int>> es;
            for (const auto& [u, v] : g.edges())
                es.emplace_back(perm[static_cast<size_t>(u)], perm[static_cast<size_t>(v)]);
            MultiGraph h(g.order(), es);
            CHECK(is_group_connected(h, 3) == gc);
            CHECK(has_nowhere_zero_flow(h, 3) == nz);
        }
    }
}

TEST_CASE("monotone under edge addition") {
    // a Z3-connected spanning subgraph certifies the supergraph
    std::mt19937 rng(17);
    for (const auto& g : small_connected_census(6)) {
        if (g.size() > 14 || g.order() < 2) continue;
        if (!is_group_connected(g, 3)) continue;
        int u = static_cast<int>(rng() % static_cast<unsigned>(g.order()));
        int v = static_cast<int>(rng() % static_cast<unsigned>(g.order()));
        if (u == v) v = (v + 1) % g.order();
        auto es = g.edges();
        es.emplace_back(u, v);
        CHECK(is_group_connected(MultiGraph(g.order(), es), 3));
    }
}

TEST_CASE("budgets are refusals, not truncation") {
    // 29 edges of k=3 enumeration exceed the default budget
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < 29; ++i) es.emplace_back(i % 2, 2 + i % 5);
    MultiGraph big(7, es);
    CHECK_THROWS_AS(achievable_boundaries(big, 3), BudgetError);
    OracleLimits lifted;
    lifted.max_flow_edges = 30;
    CHECK_NOTHROW(achievable_boundaries(big, 3, lifted));

    // k=5 work bound: 4^15 = 2^30 > 2^28
    MultiGraph k55(5, [] {
        std::vector<std::pair<int, int>> e;
        for (int t = 0; t < 3; ++t)
            for (int u = 0; u < 5; ++u)
                for (int v = u + 1; v < 5; ++v)
                    if ((u + v + t) % 2) e.emplace_back(u, v);
        return e;
    }());
    if (k55.size() >= 15) CHECK_THROWS_AS(achievable_boundaries(k55, 5), BudgetError);

    CHECK_THROWS_AS(orientation_achieves(MultiGraph(7, [] {
                                             std::vector<std::pair<int, int>> e;
                                             for (int i = 0; i < 31; ++i) e.emplace_back(i % 3, 3 + i % 4);
                                             return e;
                                         }()),
                                         BoundaryDemand{3, {0, 0, 0, 0, 0, 0, 0}}),
                    BudgetError);
}

TEST_CASE("demand helpers") {
    BoundaryDemand ok{3, {1, 2, 0}};
    CHECK(ok.zero_sum());
    BoundaryDemand bad{3, {1, 1, 0}};
    CHECK_FALSE(bad.zero_sum());
    AchievableSet s = achievable_boundaries(complete_graph(3), 3);
    CHECK_THROWS_AS(s.contains(bad), InputError);
    CHECK(demand_space_size(3, 5) == 81);
    // decode/encode round trip over a 4-vertex demand space
    AchievableSet s4(3, 4);
    for (uint64_t idx = 0; idx < demand_space_size(3, 4); ++idx) {
        BoundaryDemand d = demand_from_index(3, 4, idx);
        CHECK(d.zero_sum());
        CHECK(s4.encode(d) == idx);
    }
}
