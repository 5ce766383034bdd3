#include "gconn/reduction.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "gconn/error.hpp"

namespace gconn {

namespace {

std::vector<std::vector<int>> simple_adjacency(const MultiGraph& g) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(g.order()));
    auto mat = g.multiplicity_matrix();
    for (int u = 0; u < g.order(); ++u)
        for (int v = 0; v < g.order(); ++v)
            if (mat[u][v] > 0 && u != v) adj[static_cast<size_t>(u)].push_back(v);
    return adj;
}

// Lowest edge index joining u and v.
int first_instance(const MultiGraph& g, int u, int v) {
    if (u > v) std::swap(u, v);
    for (int i = 0; i < g.size(); ++i)
        if (g.edge(i) == std::pair<int, int>{u, v}) return i;
    return -1;
}

std::vector<PatternMatch> two_cycle_matches(const MultiGraph& g) {
    std::vector<PatternMatch> out;
    for (int i = 0; i < g.size(); ++i)
        for (int j = i + 1; j < g.size(); ++j)
            if (g.edge(i) == g.edge(j)) out.push_back({"2-cycle", {i, j}});
    return out;
}

// Simple cycles of the given length among the hub's neighbors; rim vertices
// are distinct, so parallel edges never matter for the rim shape.
void rim_cycles(const std::vector<std::vector<int>>& adj, const std::vector<char>& allowed, int length,
                std::vector<std::vector<int>>& out) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> path;
    std::vector<char> used(static_cast<size_t>(n), 0);
    auto dfs = [&](auto&& self, int v) -> void {
        if (static_cast<int>(path.size()) == length) {
            int s = path[0];
            for (int w : adj[static_cast<size_t>(v)])
                if (w == s && path[1] < path.back()) out.push_back(path); // kill reflections
            return;
        }
        for (int w : adj[static_cast<size_t>(v)]) {
            if (!allowed[static_cast<size_t>(w)] || used[static_cast<size_t>(w)] || w < path[0]) continue;
            used[static_cast<size_t>(w)] = 1;
            path.push_back(w);
            self(self, w);
            path.pop_back();
            used[static_cast<size_t>(w)] = 0;
        }
    };
    for (int s = 0; s < n; ++s) {
        if (!allowed[static_cast<size_t>(s)]) continue;
        used[static_cast<size_t>(s)] = 1;
        path = {s};
        dfs(dfs, s);
        used[static_cast<size_t>(s)] = 0;
    }
}

std::vector<PatternMatch> wheel_matches(const MultiGraph& g, int rim_len) {
    std::vector<PatternMatch> out;
    if (g.order() < rim_len + 1) return out;
    auto adj = simple_adjacency(g);
    for (int hub = 0; hub < g.order(); ++hub) {
        std::vector<char> allowed(static_cast<size_t>(g.order()), 0);
        int cnt = 0;
        for (int w : adj[static_cast<size_t>(hub)])
            if (w != hub) allowed[static_cast<size_t>(w)] = 1, ++cnt;
        if (cnt < rim_len) continue;
        std::vector<std::vector<int>> rims;
        rim_cycles(adj, allowed, rim_len, rims);
        for (const auto& rim : rims) {
            std::vector<int> edges;
            for (size_t i = 0; i < rim.size(); ++i) {
                edges.push_back(first_instance(g, rim[i], rim[(i + 1) % rim.size()]));
                edges.push_back(first_instance(g, hub, rim[i]));
            }
            std::sort(edges.begin(), edges.end());
            out.push_back({"even-wheel", std::move(edges)});
        }
    }
    return out;
}

std::vector<PatternMatch> complete5_matches(const MultiGraph& g, bool minus_edge) {
    std::vector<PatternMatch> out;
    const int n = g.order();
    if (n < 5) return out;
    auto mat = g.multiplicity_matrix();
    std::vector<int> pick;
    auto rec = [&](auto&& self, int from) -> void {
        if (pick.size() == 5) {
            int missing = 0;
            for (size_t i = 0; i < 5 && missing <= 1; ++i)
                for (size_t j = i + 1; j < 5; ++j)
                    if (mat[pick[i]][pick[j]] == 0) ++missing;
            if (missing != (minus_edge ? 1 : 0)) return;
            std::vector<int> edges;
            for (size_t i = 0; i < 5; ++i)
                for (size_t j = i + 1; j < 5; ++j)
                    if (mat[pick[i]][pick[j]] > 0) edges.push_back(first_instance(g, pick[i], pick[j]));
            std::sort(edges.begin(), edges.end());
            out.push_back({minus_edge ? "K5-" : "K5", std::move(edges)});
            return;
        }
        for (int v = from; v < n; ++v) {
            pick.push_back(v);
            self(self, v + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::optional<PatternMatch> best_of(std::vector<PatternMatch> matches) {
    if (matches.empty()) return std::nullopt;
    return *std::min_element(matches.begin(), matches.end(),
                             [](const PatternMatch& a, const PatternMatch& b) { return a.edges < b.edges; });
}

} // namespace

std::optional<PatternMatch> find_contractible_subgraph(const MultiGraph& g) {
    // Smallest edge count first: C_2 (2), W_4 (8), K5- (9), K5 (10),
    // W_6 (12), W_8 (16). W_2 is subsumed by its doubled rim edge.
    if (auto m = best_of(two_cycle_matches(g))) return m;
    if (auto m = best_of(wheel_matches(g, 4))) return m;
    if (auto m = best_of(complete5_matches(g, true))) return m;
    if (auto m = best_of(complete5_matches(g, false))) return m;
    if (auto m = best_of(wheel_matches(g, 6))) return m;
    if (auto m = best_of(wheel_matches(g, 8))) return m;
    return std::nullopt;
}

std::vector<PatternMatch> find_all_contractible_subgraphs(const MultiGraph& g) {
    std::vector<PatternMatch> all;
    auto take = [&](std::vector<PatternMatch> v) {
        all.insert(all.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
    };
    take(two_cycle_matches(g));
    take(wheel_matches(g, 4));
    take(complete5_matches(g, true));
    take(complete5_matches(g, false));
    take(wheel_matches(g, 6));
    take(wheel_matches(g, 8));
    return all;
}

ReductionTrace reduce_greedy(const MultiGraph& g) {
    ReductionTrace t;
    t.initial = g;
    MultiGraph cur = g;
    while (auto m = find_contractible_subgraph(cur)) {
        t.steps.push_back({ReductionStep::Kind::Contract, m->pattern, m->edges, -1, -1, -1});
        cur = contract_edges(cur, m->edges).graph;
    }
    t.terminal = cur;
    return t;
}

MultiGraph lift(const MultiGraph& g, int u, int v, int w) {
    if (u == v || u == w || v == w) throw InputError("lift: vertices must be distinct");
    if (g.degree(u) < 4) throw InputError("lift: d(u) must be at least 4");
    int euv = first_instance(g, u, v);
    int euw = first_instance(g, u, w);
    if (euv < 0 || euw < 0) throw InputError("lift: uv and uw must both be edges");
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < g.size(); ++i)
        if (i != euv && i != euw) es.push_back(g.edge(i));
    es.emplace_back(std::min(v, w), std::max(v, w));
    return MultiGraph(g.order(), std::move(es));
}

bool CertificationCache::z3_certified(const MultiGraph& g, const OracleLimits& limits) {
    if (g.order() == 1) return true;
    if (!g.connected()) return false;
    CanonicalForm form = canonical_form(g);
    if (auto it = memo_.find(form); it != memo_.end()) return it->second;
    ReductionTrace t = reduce_greedy(g);
    bool ans = t.terminal.order() == 1;
    if (!ans && t.terminal.order() > 1)
        ans = is_group_connected(t.terminal, 3, limits); // sound either way: contraction preserves the verdict
    memo_[form] = ans;
    return ans;
}

std::vector<int> attach_vertex_closure(const MultiGraph& g, const std::vector<int>& seed_edges,
                                       const OracleLimits& limits) {
    for (int i : seed_edges)
        if (i < 0 || i >= g.size()) throw InputError("attach_vertex_closure: edge index out of range");
    auto sub = subgraph_from_edges(g, seed_edges);
    CertificationCache cache;
    if (!cache.z3_certified(sub.graph, limits))
        throw InputError("attach_vertex_closure: seed subgraph is not Z3-connected");

    std::set<int> edges(seed_edges.begin(), seed_edges.end());
    std::vector<char> core(static_cast<size_t>(g.order()), 0);
    for (int v : sub.vertex_of) core[static_cast<size_t>(v)] = 1;

    bool grew = true;
    while (grew) {
        grew = false;
        for (int v = 0; v < g.order() && !grew; ++v) {
            if (core[static_cast<size_t>(v)]) continue;
            std::vector<int> attach;
            for (int i = 0; i < g.size(); ++i) {
                auto [a, b] = g.edge(i);
                if ((a == v && core[static_cast<size_t>(b)]) || (b == v && core[static_cast<size_t>(a)]))
                    attach.push_back(i);
            }
            if (attach.size() >= 2) {
                core[static_cast<size_t>(v)] = 1;
                edges.insert(attach.begin(), attach.end());
                grew = true;
            }
        }
    }
    return {edges.begin(), edges.end()};
}

namespace {

// Partitions of the vertex set into exactly four classes, in canonical
// first-use order. accept() returning true stops the walk.
template <class F>
bool for_each_4_partition(int n, F&& accept) {
    std::vector<int> cls(static_cast<size_t>(n), -1);
    auto rec = [&](auto&& self, int v, int used) -> bool {
        if (n - v < 4 - used) return false; // cannot open the remaining classes
        if (v == n) return used == 4 && accept(cls);
        int lim = std::min(used + 1, 4);
        for (int c = 0; c < lim; ++c) {
            cls[static_cast<size_t>(v)] = c;
            if (self(self, v + 1, std::max(used, c + 1))) return true;
        }
        cls[static_cast<size_t>(v)] = -1;
        return false;
    };
    return rec(rec, 0, 0);
}

bool classes_connected(const MultiGraph& g, const std::vector<int>& cls) {
    // Union endpoints of intra-class edges; each class must collapse to one root.
    const int n = g.order();
    std::vector<int> parent(static_cast<size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
        return x;
    };
    for (const auto& [u, v] : g.edges())
        if (cls[static_cast<size_t>(u)] == cls[static_cast<size_t>(v)]) {
            int a = find(u), b = find(v);
            if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
        }
    std::vector<int> root(4, -1);
    for (int v = 0; v < n; ++v) {
        int c = cls[static_cast<size_t>(v)], r = find(v);
        if (root[static_cast<size_t>(c)] < 0) root[static_cast<size_t>(c)] = r;
        else if (root[static_cast<size_t>(c)] != r) return false;
    }
    return true;
}

bool quotient_is_k4(const MultiGraph& g, const std::vector<int>& cls) {
    int count[4][4] = {};
    for (const auto& [u, v] : g.edges()) {
        int a = cls[static_cast<size_t>(u)], b = cls[static_cast<size_t>(v)];
        if (a != b) ++count[std::min(a, b)][std::max(a, b)];
    }
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            if (count[a][b] != 1) return false;
    return true;
}

std::vector<int> class_members(const std::vector<int>& cls, int c) {
    std::vector<int> out;
    for (size_t v = 0; v < cls.size(); ++v)
        if (cls[v] == c) out.push_back(static_cast<int>(v));
    return out;
}

// Contract each class of the witness partition in turn, tracking vertex
// images so later steps use current edge indices.
ReductionTrace trace_from_partition(const MultiGraph& g, const std::vector<int>& cls) {
    ReductionTrace t;
    t.initial = g;
    MultiGraph cur = g;
    std::vector<int> image(static_cast<size_t>(g.order()));
    std::iota(image.begin(), image.end(), 0);
    for (int c = 0; c < 4; ++c) {
        auto members = class_members(cls, c);
        if (members.size() < 2) continue;
        std::vector<char> inside(static_cast<size_t>(cur.order()), 0);
        for (int v : members) inside[static_cast<size_t>(image[static_cast<size_t>(v)])] = 1;
        std::vector<int> edge_set;
        for (int i = 0; i < cur.size(); ++i) {
            auto [u, v] = cur.edge(i);
            if (inside[static_cast<size_t>(u)] && inside[static_cast<size_t>(v)]) edge_set.push_back(i);
        }
        t.steps.push_back({ReductionStep::Kind::Contract, "oracle-verified", edge_set, -1, -1, -1});
        auto res = contract_edges(cur, edge_set);
        cur = res.graph;
        for (auto& im : image) im = res.vertex_map[static_cast<size_t>(im)];
    }
    t.terminal = cur;
    return t;
}

} // namespace

std::optional<ReductionTrace> contracts_to(const MultiGraph& g, ContractionTarget target, const OracleLimits& limits,
                                           CertificationCache* cache) {
    if (g.order() > kMaxContractionOrder)
        throw BudgetError("contracts_to: order above " + std::to_string(kMaxContractionOrder));
    CertificationCache local;
    if (!cache) cache = &local;

    if (target == ContractionTarget::K1) {
        ReductionTrace t = reduce_greedy(g);
        if (t.terminal.order() == 1) return t;
        if (!t.terminal.connected()) return std::nullopt;
        if (!cache->z3_certified(t.terminal, limits)) return std::nullopt;
        std::vector<int> all(static_cast<size_t>(t.terminal.size()));
        std::iota(all.begin(), all.end(), 0);
        t.steps.push_back({ReductionStep::Kind::Contract, "oracle-verified", all, -1, -1, -1});
        t.terminal = contract_edges(t.terminal, all).graph;
        return t;
    }

    if (g.order() < 4) return std::nullopt;
    std::optional<ReductionTrace> found;
    for_each_4_partition(g.order(), [&](const std::vector<int>& cls) {
        if (!classes_connected(g, cls)) return false;
        if (!quotient_is_k4(g, cls)) return false;
        for (int c = 0; c < 4; ++c) {
            auto members = class_members(cls, c);
            if (members.size() < 2) continue;
            if (!cache->z3_certified(g.induced(members), limits)) return false;
        }
        found = trace_from_partition(g, cls);
        return true;
    });
    return found;
}

bool weakly_contracts_to_k4(const MultiGraph& g, const OracleLimits&) {
    if (g.order() > kMaxContractionOrder)
        throw BudgetError("weakly_contracts_to_k4: order above " + std::to_string(kMaxContractionOrder));
    if (g.order() < 4) return false;
    return for_each_4_partition(g.order(), [&](const std::vector<int>& cls) {
        return classes_connected(g, cls) && quotient_is_k4(g, cls);
    });
}

// --- triangular connectivity and fan decomposition --------------------------

bool triangularly_connected(const MultiGraph& g) {
    const int m = g.size();
    if (m < 1) throw InputError("triangularly_connected: needs at least one edge");
    if (m == 1) return true; // no distinct pair to join

    // All cycles of length <= 3 as edge-index sets: parallel pairs and
    // triangle instance combinations.
    std::vector<std::vector<int>> cycles;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (g.edge(i) == g.edge(j)) cycles.push_back({i, j});
    const int n = g.order();
    std::vector<std::vector<std::vector<int>>> inst(static_cast<size_t>(n),
                                                    std::vector<std::vector<int>>(static_cast<size_t>(n)));
    for (int i = 0; i < m; ++i) {
        auto [u, v] = g.edge(i);
        inst[static_cast<size_t>(u)][static_cast<size_t>(v)].push_back(i);
    }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int i : inst[static_cast<size_t>(a)][static_cast<size_t>(b)])
                    for (int j : inst[static_cast<size_t>(b)][static_cast<size_t>(c)])
                        for (int l : inst[static_cast<size_t>(a)][static_cast<size_t>(c)])
                            cycles.push_back({i, j, l});

    // Chain steps are pairs of distinct short cycles sharing exactly one
    // edge. With parallel edges two triangles can share two edges, which is
    // not a legal step, so the cycle-level graph is built explicitly.
    const size_t nc = cycles.size();
    std::vector<int> parent(nc);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
        return x;
    };
    for (size_t a = 0; a < nc; ++a)
        for (size_t b = a + 1; b < nc; ++b) {
            int shared = 0;
            for (int e : cycles[a]) shared += std::count(cycles[b].begin(), cycles[b].end(), e);
            if (shared == 1) {
                int ra = find(static_cast<int>(a)), rb = find(static_cast<int>(b));
                if (ra != rb) parent[static_cast<size_t>(std::max(ra, rb))] = std::min(ra, rb);
            }
        }
    std::vector<std::set<int>> comps_of_edge(static_cast<size_t>(m));
    for (size_t a = 0; a < nc; ++a)
        for (int e : cycles[a]) comps_of_edge[static_cast<size_t>(e)].insert(find(static_cast<int>(a)));

    for (int e = 0; e < m; ++e)
        if (comps_of_edge[static_cast<size_t>(e)].empty()) return false; // edge on no short cycle
    for (int e1 = 0; e1 < m; ++e1)
        for (int e2 = e1 + 1; e2 < m; ++e2) {
            bool linked = false;
            for (int c : comps_of_edge[static_cast<size_t>(e1)])
                if (comps_of_edge[static_cast<size_t>(e2)].count(c)) {
                    linked = true;
                    break;
                }
            if (!linked) return false;
        }
    return true;
}

bool is_odd_wheel(const MultiGraph& g) {
    const int n = g.order();
    if (!g.is_simple()) return false;
    if (n == 3) return g.size() == 3; // simple on 3 vertices with 3 edges is K3 = W_1
    if (n < 4 || n % 2 != 0) return false;
    if (g.size() != 2 * (n - 1)) return false;
    for (int hub = 0; hub < n; ++hub) {
        if (g.degree(hub) != n - 1) continue;
        std::vector<int> rest;
        for (int v = 0; v < n; ++v)
            if (v != hub) rest.push_back(v);
        MultiGraph rim = g.induced(rest);
        if (rim.size() != n - 1 || !rim.connected()) continue;
        bool two_regular = true;
        for (int v = 0; v < rim.order(); ++v) two_regular = two_regular && rim.degree(v) == 2;
        if (two_regular) return true;
    }
    return false;
}

namespace {

using FanMemo = std::unordered_map<CanonicalForm, std::optional<std::vector<MultiGraph>>, CanonicalFormHash>;

std::optional<std::vector<MultiGraph>> fan_recurse(const MultiGraph& g, FanMemo& memo) {
    if (is_odd_wheel(g)) return std::vector<MultiGraph>{g};
    if (!g.is_simple() || g.order() < 4) return std::nullopt;
    CanonicalForm form = canonical_form(g);
    if (auto it = memo.find(form); it != memo.end()) return it->second;
    memo[form] = std::nullopt; // provisional, also breaks accidental cycles

    const int n = g.order();
    for (int e = 0; e < g.size(); ++e) {
        auto [x, y] = g.edge(e);
        // Components of G - {x,y}; a 2-sum at xy splits them in two groups.
        std::vector<int> others;
        for (int v = 0; v < n; ++v)
            if (v != x && v != y) others.push_back(v);
        MultiGraph rest = g.induced(others);
        auto comp = rest.component_labels();
        int nc = others.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
        if (nc < 2) continue;
        for (uint32_t mask = 1; mask < (uint32_t{1} << (nc - 1)); ++mask) {
            // Component 0 always stays on side A; mask picks side B members
            // among components 1..nc-1.
            std::vector<int> side_a = {x, y}, side_b = {x, y};
            for (size_t i = 0; i < others.size(); ++i) {
                int c = comp[i];
                bool in_b = c > 0 && (mask >> (c - 1)) & 1;
                (in_b ? side_b : side_a).push_back(others[i]);
            }
            if (side_a.size() < 3 || side_b.size() < 3) continue;
            std::sort(side_a.begin(), side_a.end());
            std::sort(side_b.begin(), side_b.end());
            auto r1 = fan_recurse(g.induced(side_a), memo);
            if (!r1) continue;
            auto r2 = fan_recurse(g.induced(side_b), memo);
            if (!r2) continue;
            r1->insert(r1->end(), r2->begin(), r2->end());
            memo[form] = r1;
            return r1;
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<std::vector<MultiGraph>> fan_decomposition(const MultiGraph& g) {
    if (g.order() > kMaxContractionOrder)
        throw BudgetError("fan_decomposition: order above " + std::to_string(kMaxContractionOrder));
    if (!triangularly_connected(g)) throw InputError("fan_decomposition: graph is not triangularly connected");
    FanMemo memo;
    return fan_recurse(g, memo);
}

// --- trace replay and text form ---------------------------------------------

MultiGraph replay_trace(const ReductionTrace& trace) {
    MultiGraph cur = trace.initial;
    for (const ReductionStep& s : trace.steps) {
        if (s.kind == ReductionStep::Kind::Contract) {
            cur = contract_edges(cur, s.edges).graph;
        } else {
            cur = lift(cur, s.u, s.v, s.w);
        }
    }
    return cur;
}

namespace {

bool is_even_wheel_subgraph(const MultiGraph& g) {
    const int n = g.order();
    if (n < 3 || n % 2 != 1) return false;
    if (g.size() != 2 * (n - 1)) return false;
    for (int hub = 0; hub < n; ++hub) {
        if (g.degree(hub) != n - 1) continue;
        bool spokes_simple = true;
        for (int v = 0; v < n && spokes_simple; ++v)
            if (v != hub) spokes_simple = g.multiplicity(hub, v) == 1;
        if (!spokes_simple) continue;
        std::vector<int> rest;
        for (int v = 0; v < n; ++v)
            if (v != hub) rest.push_back(v);
        MultiGraph rim = g.induced(rest);
        if (rim.size() != n - 1 || !rim.connected()) continue;
        bool two_regular = true;
        for (int v = 0; v < rim.order(); ++v) two_regular = two_regular && rim.degree(v) == 2;
        if (two_regular) return true;
    }
    return false;
}

bool check_step_pattern(const MultiGraph& g, const ReductionStep& s, const OracleLimits& limits, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    for (int i : s.edges)
        if (i < 0 || i >= g.size()) return fail("step references edge index out of range");
    auto sub = subgraph_from_edges(g, s.edges).graph;
    if (s.pattern == "2-cycle")
        return (sub.order() == 2 && sub.size() == 2) || fail("2-cycle step is not a doubled edge");
    if (s.pattern == "even-wheel") return is_even_wheel_subgraph(sub) || fail("even-wheel step is not an even wheel");
    if (s.pattern == "K5")
        return (sub.order() == 5 && sub.size() == 10 && sub.is_simple()) || fail("K5 step is not a K5");
    if (s.pattern == "K5-")
        return (sub.order() == 5 && sub.size() == 9 && sub.is_simple() && sub.complement().size() == 1) ||
               fail("K5- step is not a K5 minus an edge");
    if (s.pattern == "oracle-verified") {
        CertificationCache cache;
        return cache.z3_certified(sub, limits) || fail("oracle-verified step failed certification");
    }
    return fail("unknown pattern tag: " + s.pattern);
}

} // namespace

bool verify_trace(const ReductionTrace& trace, const OracleLimits& limits, std::string* why) {
    MultiGraph cur = trace.initial;
    for (size_t i = 0; i < trace.steps.size(); ++i) {
        const ReductionStep& s = trace.steps[i];
        try {
            if (s.kind == ReductionStep::Kind::Contract) {
                if (!check_step_pattern(cur, s, limits, why)) {
                    if (why) *why = "step " + std::to_string(i) + ": " + *why;
                    return false;
                }
                cur = contract_edges(cur, s.edges).graph;
            } else {
                cur = lift(cur, s.u, s.v, s.w);
            }
        } catch (const Error& e) {
            if (why) *why = "step " + std::to_string(i) + ": " + e.what();
            return false;
        }
    }
    if (!(cur == trace.terminal)) {
        if (why) *why = "terminal mismatch after replay";
        return false;
    }
    return true;
}

namespace {

std::string edges_text(const MultiGraph& g) {
    if (g.size() == 0) return "-";
    std::ostringstream os;
    for (int i = 0; i < g.size(); ++i) {
        if (i) os << ',';
        os << g.edge(i).first << '-' << g.edge(i).second;
    }
    return os.str();
}

MultiGraph graph_from_fields(const std::string& n_str, const std::string& edges_str) {
    int n = std::stoi(n_str);
    std::vector<std::pair<int, int>> es;
    if (edges_str != "-") {
        std::istringstream is(edges_str);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            size_t dash = tok.find('-');
            if (dash == std::string::npos) throw InputError("trace: bad edge token " + tok);
            es.emplace_back(std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1)));
        }
    }
    return MultiGraph(n, std::move(es));
}

} // namespace

std::string trace_to_text(const ReductionTrace& trace) {
    std::ostringstream os;
    os << "graph\t" << trace.initial.order() << '\t' << edges_text(trace.initial) << '\n';
    for (const ReductionStep& s : trace.steps) {
        if (s.kind == ReductionStep::Kind::Contract) {
            os << "step\tcontract\t" << s.pattern << '\t';
            if (s.edges.empty()) os << '-';
            for (size_t i = 0; i < s.edges.size(); ++i) os << (i ? "," : "") << s.edges[i];
            os << '\n';
        } else {
            os << "step\tlift\t" << s.u << ',' << s.v << ',' << s.w << '\n';
        }
    }
    os << "terminal\t" << trace.terminal.order() << '\t' << edges_text(trace.terminal) << '\n';
    return os.str();
}

ReductionTrace trace_from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    ReductionTrace t;
    bool saw_graph = false, saw_terminal = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::istringstream ls(line);
        std::string tok;
        while (std::getline(ls, tok, '\t')) f.push_back(tok);
        if (f[0] == "graph" && f.size() == 3) {
            t.initial = graph_from_fields(f[1], f[2]);
            saw_graph = true;
        } else if (f[0] == "step" && f.size() >= 3 && f[1] == "contract") {
            if (f.size() != 4) throw InputError("trace: bad contract step");
            ReductionStep s;
            s.kind = ReductionStep::Kind::Contract;
            s.pattern = f[2];
            if (f[3] != "-") {
                std::istringstream es(f[3]);
                while (std::getline(es, tok, ',')) s.edges.push_back(std::stoi(tok));
            }
            t.steps.push_back(std::move(s));
        } else if (f[0] == "step" && f.size() == 3 && f[1] == "lift") {
            ReductionStep s;
            s.kind = ReductionStep::Kind::Lift;
            std::istringstream vs(f[2]);
            std::string a, b, c;
            if (!std::getline(vs, a, ',') || !std::getline(vs, b, ',') || !std::getline(vs, c, ','))
                throw InputError("trace: bad lift step");
            s.u = std::stoi(a);
            s.v = std::stoi(b);
            s.w = std::stoi(c);
            t.steps.push_back(std::move(s));
        } else if (f[0] == "terminal" && f.size() == 3) {
            t.terminal = graph_from_fields(f[1], f[2]);
            saw_terminal = true;
        } else {
            throw InputError("trace: unrecognized line: " + line);
        }
    }
    if (!saw_graph || !saw_terminal) throw InputError("trace: missing graph or terminal line");
    return t;
}

} // namespace gconn
