#include "gconn/flows.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gconn/error.hpp"

namespace gconn {

namespace {

constexpr uint64_t kMaxUniverseBits = uint64_t{1} << 27; // bitset memory guard

uint64_t pow_u64(uint64_t base, int exp) {
    uint64_t r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

} // namespace

bool BoundaryDemand::zero_sum() const {
    long long s = 0;
    for (int v : values) s += v;
    return modulus > 0 && ((s % modulus) + modulus) % modulus == 0;
}

AchievableSet::AchievableSet(int k, int n) : k_(k), n_(n) {
    universe_ = pow_u64(static_cast<uint64_t>(k), std::max(0, n - 1));
    if (universe_ > kMaxUniverseBits) throw BudgetError("AchievableSet: boundary space too large");
    words_.assign(static_cast<size_t>((universe_ + 63) / 64), 0);
}

uint64_t AchievableSet::encode(const BoundaryDemand& b) const {
    uint64_t idx = 0, p = 1;
    for (int v = 0; v + 1 < n_; ++v) {
        int x = ((b.values[static_cast<size_t>(v)] % k_) + k_) % k_;
        idx += static_cast<uint64_t>(x) * p;
        p *= static_cast<uint64_t>(k_);
    }
    return idx;
}

BoundaryDemand AchievableSet::decode(uint64_t idx) const { return demand_from_index(k_, n_, idx); }

bool AchievableSet::contains(const BoundaryDemand& b) const {
    if (b.modulus != k_ || static_cast<int>(b.values.size()) != n_)
        throw InputError("AchievableSet::contains: demand has wrong modulus or order");
    if (!b.zero_sum()) throw InputError("AchievableSet::contains: demand does not sum to zero");
    return test(encode(b));
}

bool AchievableSet::set(uint64_t idx) {
    uint64_t& w = words_[idx >> 6];
    uint64_t bit = uint64_t{1} << (idx & 63);
    if (w & bit) return false;
    w |= bit;
    ++count_;
    return true;
}

uint64_t AchievableSet::merge(const AchievableSet& other) {
    uint64_t added = 0;
    for (size_t i = 0; i < words_.size(); ++i) {
        uint64_t nw = other.words_[i] & ~words_[i];
        added += static_cast<uint64_t>(std::popcount(nw));
        words_[i] |= nw;
    }
    count_ += added;
    return added;
}

BoundaryDemand demand_from_index(int k, int n, uint64_t idx) {
    BoundaryDemand b;
    b.modulus = k;
    b.values.assign(static_cast<size_t>(n), 0);
    long long sum = 0;
    for (int v = 0; v + 1 < n; ++v) {
        b.values[static_cast<size_t>(v)] = static_cast<int>(idx % static_cast<uint64_t>(k));
        sum += b.values[static_cast<size_t>(v)];
        idx /= static_cast<uint64_t>(k);
    }
    if (n > 0) b.values[static_cast<size_t>(n - 1)] = static_cast<int>((k - (sum % k)) % k);
    return b;
}

uint64_t demand_space_size(int k, int n) { return pow_u64(static_cast<uint64_t>(k), std::max(0, n - 1)); }

BoundaryDemand boundary(const MultiGraph& g, const Orientation& d, const FlowAssignment& f, int k) {
    if (k < 2) throw InputError("boundary: modulus must be >= 2");
    if (static_cast<int>(d.bits.size()) != g.size() || static_cast<int>(f.values.size()) != g.size())
        throw InputError("boundary: orientation/assignment length mismatch");
    BoundaryDemand b;
    b.modulus = k;
    b.values.assign(static_cast<size_t>(g.order()), 0);
    for (int i = 0; i < g.size(); ++i) {
        auto [u, v] = g.edge(i); // u < v
        int val = ((f.values[static_cast<size_t>(i)] % k) + k) % k;
        int tail = d.bits[static_cast<size_t>(i)] ? u : v;
        int head = d.bits[static_cast<size_t>(i)] ? v : u;
        b.values[static_cast<size_t>(tail)] = (b.values[static_cast<size_t>(tail)] + val) % k;
        b.values[static_cast<size_t>(head)] = (b.values[static_cast<size_t>(head)] - val % k + k) % k;
    }
    return b;
}

// ------------------------------------------------------------------------
// Enumeration kernels.
//
// Fixed reference orientation + nowhere-zero values: flipping an edge is the
// same as negating its value, so enumerating values alone covers every
// orientation/value pair. Steps follow a (k-1)-ary reflected Gray code, so
// each step moves one edge value by +-1 and touches two vertex accumulators
// and the packed demand index.

namespace {

enum class Goal { FullSet, FullCoverage, HitIndex };

struct EdgeEnds {
    std::vector<int> u, v;   // u[i] < v[i]
    std::vector<int> sign;   // +1: contributes +value at u; -1: flipped base
};

struct KernelArgs {
    int k = 3;
    int n = 0;
    Goal goal = Goal::FullSet;
    uint64_t target = 0; // for HitIndex
};

// Walks all value vectors with edges [first, last) free and edges [0, first)
// frozen at their current value in `val`. Starts from val[first..last) == 1.
// Returns true if the goal fired.
bool enumerate_values(const EdgeEnds& e, const KernelArgs& a, std::vector<int>& val, int first, int last,
                      AchievableSet& out, const std::atomic<bool>* stop_flag) {
    const int k = a.k, n = a.n, r = k - 1;
    std::vector<int> b(static_cast<size_t>(n), 0);
    for (size_t i = 0; i < e.u.size(); ++i) {
        int add = e.sign[i] > 0 ? val[i] : k - val[i];
        b[static_cast<size_t>(e.u[i])] = (b[static_cast<size_t>(e.u[i])] + add) % k;
        b[static_cast<size_t>(e.v[i])] = (b[static_cast<size_t>(e.v[i])] + k - add) % k;
    }
    std::vector<uint64_t> powk(static_cast<size_t>(n), 0);
    {
        uint64_t p = 1;
        for (int vtx = 0; vtx + 1 < n; ++vtx, p *= static_cast<uint64_t>(k)) powk[static_cast<size_t>(vtx)] = p;
    }
    int64_t idx = 0;
    for (int vtx = 0; vtx + 1 < n; ++vtx) idx += static_cast<int64_t>(b[static_cast<size_t>(vtx)]) * static_cast<int64_t>(powk[static_cast<size_t>(vtx)]);

    auto visit = [&]() -> bool {
        if (out.set(static_cast<uint64_t>(idx))) {
            if (a.goal == Goal::FullCoverage && out.full()) return true;
            if (a.goal == Goal::HitIndex && static_cast<uint64_t>(idx) == a.target) return true;
        }
        return false;
    };
    // One edge value moves by delta; endpoints move oppositely.
    auto apply = [&](int edge, int delta) {
        int du = e.sign[static_cast<size_t>(edge)] > 0 ? delta : -delta;
        int uu = e.u[static_cast<size_t>(edge)], vv = e.v[static_cast<size_t>(edge)];
        int old_u = b[static_cast<size_t>(uu)];
        int new_u = old_u + du;
        new_u = new_u >= k ? new_u - k : (new_u < 0 ? new_u + k : new_u);
        b[static_cast<size_t>(uu)] = new_u;
        idx += (static_cast<int64_t>(new_u) - old_u) * static_cast<int64_t>(powk[static_cast<size_t>(uu)]);
        int old_v = b[static_cast<size_t>(vv)];
        int new_v = old_v - du;
        new_v = new_v >= k ? new_v - k : (new_v < 0 ? new_v + k : new_v);
        b[static_cast<size_t>(vv)] = new_v;
        idx += (static_cast<int64_t>(new_v) - old_v) * static_cast<int64_t>(powk[static_cast<size_t>(vv)]);
    };

    if (visit()) return true;
    const int free = last - first;
    if (free <= 0) return false;

    if (r == 2) {
        // Binary reflected Gray code over the free edges.
        const uint64_t total = uint64_t{1} << free;
        for (uint64_t t = 1; t < total; ++t) {
            int j = std::countr_zero(t);
            int edge = first + j;
            int delta = val[static_cast<size_t>(edge)] == 1 ? 1 : -1;
            val[static_cast<size_t>(edge)] = val[static_cast<size_t>(edge)] == 1 ? 2 : 1;
            apply(edge, delta);
            if (visit()) return true;
            if (stop_flag && (t & 0xFFFF) == 0 && stop_flag->load(std::memory_order_relaxed)) return false;
        }
        return false;
    }

    // Loopless mixed-radix reflected Gray code (radix r on every digit).
    std::vector<int> dig(static_cast<size_t>(free), 0);
    std::vector<int> dir(static_cast<size_t>(free), 1);
    std::vector<int> focus(static_cast<size_t>(free) + 1);
    for (int j = 0; j <= free; ++j) focus[static_cast<size_t>(j)] = j;
    uint64_t steps = 0;
    while (true) {
        int j = focus[0];
        focus[0] = 0;
        if (j == free) break;
        dig[static_cast<size_t>(j)] += dir[static_cast<size_t>(j)];
        int delta = dir[static_cast<size_t>(j)];
        if (dig[static_cast<size_t>(j)] == 0 || dig[static_cast<size_t>(j)] == r - 1) {
            dir[static_cast<size_t>(j)] = -dir[static_cast<size_t>(j)];
            focus[static_cast<size_t>(j)] = focus[static_cast<size_t>(j) + 1];
            focus[static_cast<size_t>(j) + 1] = j + 1;
        }
        int edge = first + j;
        val[static_cast<size_t>(edge)] = dig[static_cast<size_t>(j)] + 1;
        apply(edge, delta);
        if (visit()) return true;
        if (stop_flag && (++steps & 0xFFFF) == 0 && stop_flag->load(std::memory_order_relaxed)) return false;
    }
    return false;
}

EdgeEnds edge_ends(const MultiGraph& g, const Orientation* base) {
    EdgeEnds e;
    e.u.reserve(static_cast<size_t>(g.size()));
    for (int i = 0; i < g.size(); ++i) {
        auto [u, v] = g.edge(i);
        e.u.push_back(u);
        e.v.push_back(v);
        e.sign.push_back(!base || base->bits[static_cast<size_t>(i)] ? 1 : -1);
    }
    return e;
}

void check_value_budget(const MultiGraph& g, int k, const OracleLimits& limits) {
    if (k < 3) throw InputError("group modulus must be >= 3");
    const int m = g.size();
    long double work = m * std::log2l(static_cast<long double>(k - 1));
    if (work > static_cast<long double>(limits.max_flow_edges))
        throw BudgetError("flow oracle: (k-1)^m exceeds 2^" + std::to_string(limits.max_flow_edges) +
                          "; reduce the graph first or raise --max-edges");
}

AchievableSet run_value_kernel(const MultiGraph& g, int k, const Orientation* base, KernelArgs args,
                               const OracleLimits& limits, bool parallel, bool* goal_hit) {
    check_value_budget(g, k, limits);
    args.k = k;
    args.n = g.order();
    const int m = g.size();
    const int r = k - 1;
    EdgeEnds ends = edge_ends(g, base);

    AchievableSet result(k, g.order());
    bool hit = false;

#ifdef _OPENMP
    int nt = parallel ? (limits.threads > 0 ? limits.threads : omp_get_max_threads()) : 1;
#else
    int nt = 1;
    (void)parallel;
#endif
    // Split by the values of a short edge prefix; workers sweep suffixes.
    int jp = 0;
    uint64_t prefixes = 1;
    if (nt > 1) {
        while (jp < m && prefixes < static_cast<uint64_t>(8 * nt) && prefixes * static_cast<uint64_t>(r) <= 4096)
            prefixes *= static_cast<uint64_t>(r), ++jp;
    }

    if (jp == 0) {
        std::vector<int> val(static_cast<size_t>(m), 1);
        hit = enumerate_values(ends, args, val, 0, m, result, nullptr);
    } else {
        std::atomic<bool> stop{false};
#pragma omp parallel num_threads(nt)
        {
            AchievableSet local(k, g.order());
#pragma omp for schedule(dynamic)
            for (int64_t p = 0; p < static_cast<int64_t>(prefixes); ++p) {
                if (stop.load(std::memory_order_relaxed)) continue;
                std::vector<int> val(static_cast<size_t>(m), 1);
                uint64_t rem = static_cast<uint64_t>(p);
                for (int j = 0; j < jp; ++j) {
                    val[static_cast<size_t>(j)] = static_cast<int>(rem % static_cast<uint64_t>(r)) + 1;
                    rem /= static_cast<uint64_t>(r);
                }
                bool local_hit = enumerate_values(ends, args, val, jp, m, local, &stop);
                if (local_hit) stop.store(true, std::memory_order_relaxed);
                if (args.goal != Goal::FullSet) {
#pragma omp critical
                    {
                        result.merge(local);
                        if (args.goal == Goal::FullCoverage && result.full()) stop.store(true, std::memory_order_relaxed);
                        if (args.goal == Goal::HitIndex && result.test(args.target)) stop.store(true, std::memory_order_relaxed);
                    }
                }
            }
            if (args.goal == Goal::FullSet) {
#pragma omp critical
                result.merge(local);
            }
        }
        hit = (args.goal == Goal::FullCoverage && result.full()) ||
              (args.goal == Goal::HitIndex && result.test(args.target));
    }
    if (jp == 0 && args.goal != Goal::FullSet)
        hit = (args.goal == Goal::FullCoverage && result.full()) || (args.goal == Goal::HitIndex && result.test(args.target));
    if (goal_hit) *goal_hit = hit;
    return result;
}

// Orientation walk for k = 3: flip one edge per Gray step and keep
// (outdeg - indeg) mod 3 per vertex. Independent of the value kernel above;
// Lemma-style equality of the two sets is asserted by tests, not assumed.
bool enumerate_orientations(const EdgeEnds& e, const KernelArgs& a, std::vector<uint8_t>& flip, int first, int last,
                            AchievableSet& out, const std::atomic<bool>* stop_flag) {
    const int n = a.n;
    std::vector<int> t(static_cast<size_t>(n), 0);
    for (size_t i = 0; i < e.u.size(); ++i) {
        int tail = flip[i] ? e.v[i] : e.u[i];
        int head = flip[i] ? e.u[i] : e.v[i];
        t[static_cast<size_t>(tail)] = (t[static_cast<size_t>(tail)] + 1) % 3;
        t[static_cast<size_t>(head)] = (t[static_cast<size_t>(head)] + 2) % 3;
    }
    std::vector<uint64_t> pow3(static_cast<size_t>(n), 0);
    {
        uint64_t p = 1;
        for (int vtx = 0; vtx + 1 < n; ++vtx, p *= 3) pow3[static_cast<size_t>(vtx)] = p;
    }
    int64_t idx = 0;
    for (int vtx = 0; vtx + 1 < n; ++vtx) idx += static_cast<int64_t>(t[static_cast<size_t>(vtx)]) * static_cast<int64_t>(pow3[static_cast<size_t>(vtx)]);

    auto visit = [&]() -> bool {
        if (out.set(static_cast<uint64_t>(idx))) {
            if (a.goal == Goal::FullCoverage && out.full()) return true;
            if (a.goal == Goal::HitIndex && static_cast<uint64_t>(idx) == a.target) return true;
        }
        return false;
    };
    auto flip_edge = [&](int edge) {
        // Reversing u->v moves u by -2 == +1 and v by +2 (mod 3); reversing
        // back is symmetric, so a flip always applies the same deltas to the
        // current tail/head.
        int uu = e.u[static_cast<size_t>(edge)], vv = e.v[static_cast<size_t>(edge)];
        int du = flip[static_cast<size_t>(edge)] ? 2 : 1; // after toggle below
        flip[static_cast<size_t>(edge)] ^= 1;
        int old_u = t[static_cast<size_t>(uu)];
        int new_u = old_u + du;
        if (new_u >= 3) new_u -= 3;
        t[static_cast<size_t>(uu)] = new_u;
        idx += (static_cast<int64_t>(new_u) - old_u) * static_cast<int64_t>(pow3[static_cast<size_t>(uu)]);
        int old_v = t[static_cast<size_t>(vv)];
        int new_v = old_v + (3 - du);
        if (new_v >= 3) new_v -= 3;
        t[static_cast<size_t>(vv)] = new_v;
        idx += (static_cast<int64_t>(new_v) - old_v) * static_cast<int64_t>(pow3[static_cast<size_t>(vv)]);
    };

    if (visit()) return true;
    const int free = last - first;
    if (free <= 0) return false;
    const uint64_t total = uint64_t{1} << free;
    for (uint64_t s = 1; s < total; ++s) {
        flip_edge(first + std::countr_zero(s));
        if (visit()) return true;
        if (stop_flag && (s & 0xFFFF) == 0 && stop_flag->load(std::memory_order_relaxed)) return false;
    }
    return false;
}

AchievableSet run_orientation_kernel(const MultiGraph& g, KernelArgs args, const OracleLimits& limits, bool parallel,
                                     bool* goal_hit) {
    const int m = g.size();
    if (m > limits.max_orientation_edges)
        throw BudgetError("orientation oracle: 2^m exceeds 2^" + std::to_string(limits.max_orientation_edges));
    args.k = 3;
    args.n = g.order();
    EdgeEnds ends = edge_ends(g, nullptr);

    AchievableSet result(3, g.order());
    bool hit = false;

#ifdef _OPENMP
    int nt = parallel ? (limits.threads > 0 ? limits.threads : omp_get_max_threads()) : 1;
#else
    int nt = 1;
    (void)parallel;
#endif
    int jp = 0;
    uint64_t prefixes = 1;
    if (nt > 1) {
        while (jp < m && prefixes < static_cast<uint64_t>(8 * nt) && prefixes * 2 <= 4096) prefixes *= 2, ++jp;
    }

    if (jp == 0) {
        std::vector<uint8_t> flip(static_cast<size_t>(m), 0);
        hit = enumerate_orientations(ends, args, flip, 0, m, result, nullptr);
    } else {
        std::atomic<bool> stop{false};
#pragma omp parallel num_threads(nt)
        {
            AchievableSet local(3, g.order());
#pragma omp for schedule(dynamic)
            for (int64_t p = 0; p < static_cast<int64_t>(prefixes); ++p) {
                if (stop.load(std::memory_order_relaxed)) continue;
                std::vector<uint8_t> flip(static_cast<size_t>(m), 0);
                for (int j = 0; j < jp; ++j) flip[static_cast<size_t>(j)] = (p >> j) & 1;
                bool local_hit = enumerate_orientations(ends, args, flip, jp, m, local, &stop);
                if (local_hit) stop.store(true, std::memory_order_relaxed);
                if (args.goal != Goal::FullSet) {
#pragma omp critical
                    {
                        result.merge(local);
                        if (args.goal == Goal::FullCoverage && result.full()) stop.store(true, std::memory_order_relaxed);
                        if (args.goal == Goal::HitIndex && result.test(args.target)) stop.store(true, std::memory_order_relaxed);
                    }
                }
            }
            if (args.goal == Goal::FullSet) {
#pragma omp critical
                result.merge(local);
            }
        }
        hit = (args.goal == Goal::FullCoverage && result.full()) ||
              (args.goal == Goal::HitIndex && result.test(args.target));
    }
    if (jp == 0 && args.goal != Goal::FullSet)
        hit = (args.goal == Goal::FullCoverage && result.full()) || (args.goal == Goal::HitIndex && result.test(args.target));
    if (goal_hit) *goal_hit = hit;
    return result;
}

} // namespace

AchievableSet achievable_boundaries(const MultiGraph& g, int k, const OracleLimits& limits) {
    return run_value_kernel(g, k, nullptr, {.goal = Goal::FullSet}, limits, true, nullptr);
}

AchievableSet achievable_boundaries_serial(const MultiGraph& g, int k, const OracleLimits& limits) {
    return run_value_kernel(g, k, nullptr, {.goal = Goal::FullSet}, limits, false, nullptr);
}

AchievableSet achievable_boundaries_under(const MultiGraph& g, int k, const Orientation& base,
                                          const OracleLimits& limits) {
    if (static_cast<int>(base.bits.size()) != g.size())
        throw InputError("achievable_boundaries_under: orientation length mismatch");
    return run_value_kernel(g, k, &base, {.goal = Goal::FullSet}, limits, true, nullptr);
}

bool is_group_connected(const MultiGraph& g, int k, const OracleLimits& limits) {
    if (g.order() >= 2 && !g.connected()) return false; // no flow crosses components
    bool hit = false;
    run_value_kernel(g, k, nullptr, {.goal = Goal::FullCoverage}, limits, true, &hit);
    return hit;
}

bool has_nowhere_zero_flow(const MultiGraph& g, int k, const OracleLimits& limits) {
    bool hit = false;
    run_value_kernel(g, k, nullptr, {.goal = Goal::HitIndex, .target = 0}, limits, true, &hit);
    return hit;
}

AchievableSet orientation_achievable_set(const MultiGraph& g, const OracleLimits& limits) {
    return run_orientation_kernel(g, {.goal = Goal::FullSet}, limits, true, nullptr);
}

AchievableSet orientation_achievable_set_serial(const MultiGraph& g, const OracleLimits& limits) {
    return run_orientation_kernel(g, {.goal = Goal::FullSet}, limits, false, nullptr);
}

bool orientation_achieves(const MultiGraph& g, const BoundaryDemand& b, const OracleLimits& limits) {
    if (b.modulus != 3) throw InputError("orientation_achieves: demand must be over Z_3");
    if (static_cast<int>(b.values.size()) != g.order()) throw InputError("orientation_achieves: demand order mismatch");
    if (!b.zero_sum()) throw InputError("orientation_achieves: demand does not sum to zero");
    AchievableSet probe(3, g.order());
    uint64_t target = probe.encode(b);
    bool hit = false;
    run_orientation_kernel(g, {.goal = Goal::HitIndex, .target = target}, limits, true, &hit);
    return hit;
}

} // namespace gconn
