// Benchmark comparing the serial reference implementations against the
// OpenMP kernels: homomorphism counting on structured instances and the
// membership sweep over all six-vertex graphs.

#include <chrono>
#include <cstdio>
#include <vector>

#include <omp.h>

#include "deepwide/canonical.hpp"
#include "deepwide/game.hpp"
#include "deepwide/graph.hpp"
#include "deepwide/hom.hpp"

using namespace deepwide;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

template <class F>
double timed(F&& fn, int reps = 3) {
    double best = 1e100;
    for (int r = 0; r < reps; ++r) {
        auto start = Clock::now();
        fn();
        best = std::min(best, seconds_since(start));
    }
    return best;
}

}  // namespace

int main() {
    std::printf("threads: %d\n\n", omp_get_max_threads());

    struct HomCase {
        const char* name;
        LabelledGraph f, g;
    };
    std::vector<HomCase> cases = {
        {"grid(2,6) -> K_4", grid(2, 6), complete_graph(4)},
        {"grid(3,4) -> K_3", grid(3, 4), complete_graph(3)},
        {"P_16 -> C_8", path_graph(16), cycle_graph(8)},
        {"C_12 -> grid(3,3)", cycle_graph(12), grid(3, 3)},
    };
    std::printf("%-22s %12s %12s %12s %8s\n", "hom instance", "serial[s]", "parallel[s]",
                "dp[s]", "count");
    for (auto& c : cases) {
        long long count = 0;
        double ts = timed([&] { count = hom_count_serial(c.f, c.g); });
        double tp = timed([&] { count = hom_count(c.f, c.g); });
        double td = timed([&] { count = hom_count_dp(c.f, c.g); });
        std::printf("%-22s %12.4f %12.4f %12.4f %8lld\n", c.name, ts, tp, td, count);
    }

    std::printf("\nmembership sweep over all graphs on 6 vertices (k=3, q=4)\n");
    auto graphs = all_graphs(6);
    int inCount = 0;
    double tSerial = timed(
        [&] {
            inCount = 0;
            for (auto& g : graphs)
                if (solve(g, 3, 4, Variant::CR).cop_wins) ++inCount;
        },
        1);
    int inCountPar = 0;
    double tParallel = timed(
        [&] {
            int local = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : local)
            for (int i = 0; i < (int)graphs.size(); ++i)
                if (solve(graphs[i], 3, 4, Variant::CR).cop_wins) ++local;
            inCountPar = local;
        },
        1);
    std::printf("%-22s %12.4f %12.4f   members %d/%zu (parallel agrees: %s)\n", "sweep",
                tSerial, tParallel, inCount, graphs.size(),
                inCount == inCountPar ? "yes" : "NO");
    return 0;
}
