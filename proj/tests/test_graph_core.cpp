#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "gconn/canonical.hpp"
#include "gconn/census.hpp"
#include "gconn/connectivity.hpp"
#include "gconn/error.hpp"
#include "gconn/io.hpp"
#include "gconn/multigraph.hpp"
#include "oracles.hpp"

using namespace gconn;
namespace oracle = test_oracles;

namespace {

MultiGraph permuted(const MultiGraph& g, const std::vector<int>& perm) {
    std::vector<std::pair<int, int>> es;
    for (const auto& [u, v] : g.edges()) es.emplace_back(perm[static_cast<size_t>(u)], perm[static_cast<size_t>(v)]);
    return MultiGraph(g.order(), es);
}

MultiGraph random_permutation_of(const MultiGraph& g, std::mt19937& rng) {
    std::vector<int> perm(static_cast<size_t>(g.order()));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    return permuted(g, perm);
}

} // namespace

TEST_CASE("build_graph basics and rejection") {
    MultiGraph k4 = build_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(k4.order() == 4);
    CHECK(k4.size() == 6);
    CHECK(k4 == complete_graph(4));

    MultiGraph c2 = build_graph(2, {{0, 1}, {0, 1}});
    CHECK(c2.size() == 2);
    CHECK(c2.multiplicity(0, 1) == 2);
    CHECK(c2 == cycle_graph(2));

    CHECK_THROWS_AS(build_graph(3, {{0, 0}}), InputError);
    CHECK_THROWS_AS(build_graph(3, {{0, 3}}), InputError);
    // offending edge index is reported
    try {
        build_graph(3, {{0, 1}, {2, 2}});
        FAIL("expected throw");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("1") != std::string::npos);
    }
}

TEST_CASE("graph6 decode/encode known strings") {
    CHECK(are_isomorphic(decode_graph6("C~"), complete_graph(4)));
    CHECK(decode_graph6("C~") == complete_graph(4)); // labels too: all pairs present
    CHECK(are_isomorphic(decode_graph6("Dhc"), cycle_graph(5)));
    CHECK(encode_graph6(complete_graph(4)) == "C~");

    CHECK_THROWS_AS(decode_graph6(""), InputError);
    CHECK_THROWS_AS(decode_graph6("C"), InputError);       // truncated body
    CHECK_THROWS_AS(decode_graph6("C~~"), InputError);     // trailing bytes
    CHECK_THROWS_AS(decode_graph6("C\x01"), InputError);   // byte out of range
    CHECK_THROWS_AS(encode_graph6(cycle_graph(2)), InputError); // parallel edges
    // nonzero padding bits: C5 needs 10 bits, 2 pad bits must be zero
    std::string c5 = encode_graph6(cycle_graph(5));
    std::string bad = c5;
    bad.back() = static_cast<char>(bad.back() + 1); // value gains a low pad bit
    CHECK_THROWS_AS(decode_graph6(bad), InputError);
}

TEST_CASE("graph6 round trip on random simple graphs") {
    std::mt19937 rng(7);
    for (int t = 0; t < 200; ++t) {
        int n = 1 + static_cast<int>(rng() % 10);
        std::vector<std::pair<int, int>> es;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng() % 2) es.emplace_back(u, v);
        MultiGraph g(n, es);
        CHECK(decode_graph6(encode_graph6(g)) == g);
    }
    // the '~' long-order header form
    MultiGraph path70(70, [] {
        std::vector<std::pair<int, int>> es;
        for (int v = 0; v + 1 < 70; ++v) es.emplace_back(v, v + 1);
        return es;
    }());
    std::string enc = encode_graph6(path70);
    CHECK(enc[0] == '~');
    CHECK(decode_graph6(enc) == path70);
}

TEST_CASE("dot export and re-import") {
    MultiGraph g = build_graph(5, {{0, 1}, {0, 1}, {2, 3}});
    std::string dot = to_dot(g);
    CHECK(dot.find("0 -- 1") != std::string::npos);
    CHECK(dot.find("4;") != std::string::npos); // isolated vertex kept
    CHECK(from_dot(dot) == g);
}

TEST_CASE("contract_edges") {
    // one triangle edge -> doubled edge
    MultiGraph tri = complete_graph(3);
    auto r = contract_edges(tri, {0});
    CHECK(r.graph.order() == 2);
    CHECK(r.graph.size() == 2);
    CHECK(r.graph.multiplicity(0, 1) == 2);

    // both edges of C2 -> K1
    auto r2 = contract_edges(cycle_graph(2), {0, 1});
    CHECK(r2.graph.order() == 1);
    CHECK(r2.graph.size() == 0);

    // rim of W4 -> two vertices joined by 4 parallel edges
    MultiGraph w4 = wheel_graph(4);
    std::vector<int> rim;
    for (int i = 0; i < w4.size(); ++i) {
        auto [u, v] = w4.edge(i);
        if (u != 4 && v != 4) rim.push_back(i);
    }
    auto r3 = contract_edges(w4, rim);
    CHECK(r3.graph.order() == 2);
    CHECK(r3.graph.size() == 4);
    CHECK(r3.graph.multiplicity(0, 1) == 4);

    // empty set is the identity
    CHECK(contract_edges(w4, {}).graph == w4);

    // merge map is consistent: contracting X then Y equals contracting the
    // union pulled back through the first merge map (vertex partitions agree)
    std::mt19937 rng(11);
    for (int t = 0; t < 50; ++t) {
        MultiGraph g = complete_graph(6);
        std::vector<int> x, y;
        for (int i = 0; i < g.size(); ++i) {
            if (rng() % 3 == 0) x.push_back(i);
            else if (rng() % 3 == 0) y.push_back(i);
        }
        auto step1 = contract_edges(g, x);
        // map y through: edge i of g corresponds to an edge of step1 iff not collapsed
        std::vector<int> y_in_new;
        {
            int new_idx = 0;
            std::vector<int> g_to_new(static_cast<size_t>(g.size()), -1);
            for (int i = 0; i < g.size(); ++i) {
                auto [u, v] = g.edge(i);
                if (step1.vertex_map[static_cast<size_t>(u)] != step1.vertex_map[static_cast<size_t>(v)])
                    g_to_new[static_cast<size_t>(i)] = new_idx++;
            }
            for (int i : y)
                if (g_to_new[static_cast<size_t>(i)] >= 0) y_in_new.push_back(g_to_new[static_cast<size_t>(i)]);
        }
        auto two_step = contract_edges(step1.graph, y_in_new);
        std::vector<int> both = x;
        both.insert(both.end(), y.begin(), y.end());
        auto one_step = contract_edges(g, both);
        // same vertex partition: compare through composed maps
        bool same = one_step.graph.order() == two_step.graph.order();
        for (int u = 0; u < g.order() && same; ++u)
            for (int v = 0; v < g.order() && same; ++v) {
                bool merged1 = one_step.vertex_map[static_cast<size_t>(u)] == one_step.vertex_map[static_cast<size_t>(v)];
                bool merged2 = two_step.vertex_map[static_cast<size_t>(step1.vertex_map[static_cast<size_t>(u)])] ==
                               two_step.vertex_map[static_cast<size_t>(step1.vertex_map[static_cast<size_t>(v)])];
                same = merged1 == merged2;
            }
        CHECK(same);
    }
}

TEST_CASE("alpha") {
    CHECK(alpha_le_2(cycle_graph(5)));
    CHECK(independence_number(cycle_graph(5)) == 2);
    CHECK_FALSE(alpha_le_2(cycle_graph(6)));
    CHECK(independence_number(cycle_graph(6)) == 3);
    for (int n = 1; n <= 6; ++n) CHECK(alpha_le_2(complete_graph(n)));
    CHECK(independence_number(complete_graph(5)) == 1);

    // against the brute-force oracle on random graphs
    std::mt19937 rng(3);
    for (int t = 0; t < 100; ++t) {
        int n = 1 + static_cast<int>(rng() % 8);
        std::vector<std::pair<int, int>> es;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng() % 2) es.emplace_back(u, v);
        MultiGraph g(n, es);
        int a = oracle::brute_force_alpha(g);
        CHECK(independence_number(g) == a);
        CHECK(alpha_le_2(g) == (a <= 2));
    }
}

TEST_CASE("edge connectivity") {
    CHECK(edge_connectivity(complete_graph(4)) == 3);
    CHECK(edge_connectivity(cycle_graph(5)) == 2);
    CHECK(edge_connectivity(cycle_graph(2)) == 2);
    for (int n = 2; n <= 6; ++n) CHECK(edge_connectivity(complete_graph(n)) == n - 1);
    CHECK(edge_connectivity(MultiGraph(3, {{0, 1}})) == 0); // disconnected
    CHECK(edge_connectivity(MultiGraph(1, {})) == kInfiniteEdgeConnectivity);
    CHECK(edge_connectivity(wheel_graph(4)) == 3);
    // multiplicities counted
    CHECK(edge_connectivity(build_graph(2, {{0, 1}, {0, 1}, {0, 1}})) == 3);

    // cross-check: min cut below 4 agrees with exhaustive small-cut search
    std::mt19937 rng(5);
    for (int t = 0; t < 60; ++t) {
        int n = 2 + static_cast<int>(rng() % 5);
        std::vector<std::pair<int, int>> es;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng() % 3) es.emplace_back(u, v);
        MultiGraph g(n, es);
        int ec = edge_connectivity(g);
        for (int bound = 1; bound <= 4; ++bound)
            CHECK(oracle::has_cut_below(g, bound) == (ec < bound));
    }

    // and on every census class up to order 7
    for (int n = 4; n <= 7; ++n)
        for (const auto& g : enumerate_census(n, {})) {
            int ec = edge_connectivity(g);
            for (int bound = 1; bound <= 4; ++bound)
                CHECK(oracle::has_cut_below(g, bound) == (ec < bound));
        }
}

TEST_CASE("canonical forms and isomorphism") {
    CHECK(are_isomorphic(complete_graph(4), wheel_graph(3)));
    CHECK_FALSE(are_isomorphic(complete_bipartite(1, 3), build_graph(4, {{0, 1}, {1, 2}, {2, 3}})));
    std::mt19937 rng(13);
    MultiGraph c5 = cycle_graph(5);
    for (int t = 0; t < 100; ++t) CHECK(canonical_form(random_permutation_of(c5, rng)) == canonical_form(c5));

    // equality iff brute-force isomorphism, including multigraphs
    for (int t = 0; t < 150; ++t) {
        int n = 2 + static_cast<int>(rng() % 4);
        auto rand_graph = [&]() {
            std::vector<std::pair<int, int>> es;
            int m = static_cast<int>(rng() % 8);
            for (int i = 0; i < m; ++i) {
                int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
                if (u != v) es.emplace_back(u, v);
            }
            return MultiGraph(n, es);
        };
        MultiGraph a = rand_graph(), b = rand_graph();
        CHECK((canonical_form(a) == canonical_form(b)) == oracle::brute_force_isomorphic(a, b));
    }
}

TEST_CASE("family generators") {
    MultiGraph w4 = wheel_graph(4);
    CHECK(w4.order() == 5);
    CHECK(w4.size() == 8);
    CHECK(w4.degree(4) == 4); // hub

    CHECK(wheel_graph(1) == complete_graph(3));
    MultiGraph w2 = wheel_graph(2);
    CHECK(w2.order() == 3);
    CHECK(w2.size() == 4);
    CHECK(w2.multiplicity(0, 1) == 2);

    MultiGraph k33 = complete_bipartite(3, 3);
    CHECK(k33.order() == 6);
    CHECK(k33.size() == 9);
    CHECK_FALSE(alpha_le_2(k33));

    MultiGraph ts = two_sum(complete_graph(3), 0, complete_graph(3), 0);
    CHECK(ts.order() == 4);
    CHECK(ts.size() == 5);
    CHECK(are_isomorphic(ts, complete_minus_edge(4)));

    CHECK(complete_minus_edge(5).size() == 9);
    CHECK_THROWS_AS(cycle_graph(1), InputError);
    CHECK_THROWS_AS(wheel_graph(0), InputError);

    FamilySpec spec;
    spec.kind = FamilySpec::Kind::TwoSum;
    spec.left = std::make_shared<FamilySpec>(FamilySpec{FamilySpec::Kind::Cycle, 3, 0, nullptr, nullptr});
    spec.right = std::make_shared<FamilySpec>(FamilySpec{FamilySpec::Kind::Cycle, 3, 0, nullptr, nullptr});
    CHECK(are_isomorphic(gen_family(spec), complete_minus_edge(4)));
}

TEST_CASE("census small orders against labeled brute force") {
    // n=4: exactly K4
    auto c4 = enumerate_census(4, {});
    REQUIRE(c4.size() == 1);
    CHECK(are_isomorphic(c4[0], complete_graph(4)));

    // n=1: K1
    auto c1 = enumerate_census(1, {});
    REQUIRE(c1.size() == 1);
    CHECK(c1[0].order() == 1);

    // n=4,5: class count matches filtering all labeled graphs
    for (int n = 4; n <= 5; ++n) {
        auto fast = enumerate_census(n, {});
        auto slow = oracle::brute_force_census(n, true, 3);
        CHECK(fast.size() == slow.size());
    }

    // unconstrained connected classes, n <= 5: 1, 1, 2, 6, 21
    const size_t want[] = {1, 1, 2, 6, 21};
    for (int n = 1; n <= 5; ++n) {
        CensusOptions opts;
        opts.alpha_le_2 = false;
        opts.min_edge_connectivity = 1;
        CHECK(enumerate_census(n, opts).size() == want[n - 1]);
    }

    // serial reference agrees with the parallel kernel
    for (int n = 4; n <= 7; ++n) {
        CensusOptions opts;
        opts.threads = 3;
        auto a = enumerate_census(n, opts);
        auto b = enumerate_census_serial(n, opts);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    }

    CHECK_THROWS_AS(enumerate_census(11, {}), BudgetError);

    // stream line format
    auto line = census_line(complete_graph(4));
    CHECK(line == "C~\t4\t6\t3\t1");
    CHECK(census_line(MultiGraph(1, {})) == "@\t1\t0\tinf\t1");
}
