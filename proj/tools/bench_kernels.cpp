// Times the serial reference kernels against the OpenMP ones on a few
// dense inputs and checks that both routes produce identical sets.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gconn/census.hpp"
#include "gconn/flows.hpp"
#include "gconn/multigraph.hpp"

using namespace gconn;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void bench_value_kernel(const char* name, const MultiGraph& g, int k) {
    OracleLimits lim;
    auto t0 = std::chrono::steady_clock::now();
    AchievableSet serial = achievable_boundaries_serial(g, k, lim);
    double ts = seconds_since(t0);
    lim.threads = 0; // runtime default
    t0 = std::chrono::steady_clock::now();
    AchievableSet parallel = achievable_boundaries(g, k, lim);
    double tp = seconds_since(t0);
    bool equal = serial == parallel;
    std::printf("%-28s m=%2d  serial %8.3fs  parallel %8.3fs  speedup %5.2fx  sets %s\n", name, g.size(), ts, tp,
                tp > 0 ? ts / tp : 0.0, equal ? "equal" : "DIFFER");
}

void bench_orientation_kernel(const char* name, const MultiGraph& g) {
    OracleLimits lim;
    auto t0 = std::chrono::steady_clock::now();
    AchievableSet serial = orientation_achievable_set_serial(g, lim);
    double ts = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    AchievableSet parallel = orientation_achievable_set(g, lim);
    double tp = seconds_since(t0);
    bool equal = serial == parallel;
    std::printf("%-28s m=%2d  serial %8.3fs  parallel %8.3fs  speedup %5.2fx  sets %s\n", name, g.size(), ts, tp,
                tp > 0 ? ts / tp : 0.0, equal ? "equal" : "DIFFER");
}

void bench_census(int n) {
    CensusOptions opts;
    auto t0 = std::chrono::steady_clock::now();
    auto serial = enumerate_census_serial(n, opts);
    double ts = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    auto parallel = enumerate_census(n, opts);
    double tp = seconds_since(t0);
    std::printf("census n=%d                   classes=%zu  serial %6.3fs  parallel %6.3fs  speedup %5.2fx  %s\n", n,
                parallel.size(), ts, tp, tp > 0 ? ts / tp : 0.0,
                serial.size() == parallel.size() ? "equal" : "DIFFER");
}

} // namespace

int main(int argc, char** argv) {
    bool full = argc > 1 && std::string(argv[1]) == "--full";
#ifdef _OPENMP
    std::printf("threads available: %d\n", omp_get_max_threads());
#endif
    bench_value_kernel("values K7 (k=3)", complete_graph(7), 3);
    bench_value_kernel("values K4,4 (k=3)", complete_bipartite(4, 4), 3);
    bench_value_kernel("values W6 (k=5)", wheel_graph(6), 5);
    bench_orientation_kernel("orientations K6", complete_graph(6));
    bench_orientation_kernel("orientations K4,4", complete_bipartite(4, 4));
    bench_census(7);
    if (full) {
        bench_value_kernel("values K8 (k=3)", complete_graph(8), 3);
        bench_orientation_kernel("orientations K7", complete_graph(7));
        bench_census(8);
    }
    return 0;
}
