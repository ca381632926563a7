// Serial vs OpenMP throughput of the Monte Carlo trial kernel.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "risnoma/csvout.hpp"
#include "risnoma/presets.hpp"

using namespace risnoma;

namespace {

double time_run(int threads, const RunSpec& spec, const std::vector<SchemeRun>& runs,
                std::string& csv) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = threads == 1 ? monte_carlo_serial(spec.sim, spec.sweep, runs, false)
                                   : monte_carlo(spec.sim, spec.sweep, runs, threads, false);
    csv = csv_text(rows);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    int trials = argc > 1 ? std::atoi(argv[1]) : 40;

    RunSpec spec = make_preset("fig5");
    spec.sim.trials = trials;
    spec.sweep = {"U_r", {3}};
    std::vector<SchemeRun> runs;
    for (const auto& s : spec.schemes) runs.push_back({*scheme_from_name(s), s});

    std::string serial_csv, parallel_csv;
    const double t_serial = time_run(1, spec, runs, serial_csv);

    int max_threads = 1;
#ifdef _OPENMP
    max_threads = omp_get_max_threads();
#endif
    const double t_parallel = time_run(max_threads, spec, runs, parallel_csv);

    std::printf("trials            : %d\n", trials);
    std::printf("serial            : %.3f s\n", t_serial);
    std::printf("parallel (%d thr) : %.3f s\n", max_threads, t_parallel);
    std::printf("speedup           : %.2fx\n", t_serial / t_parallel);
    std::printf("outputs identical : %s\n", serial_csv == parallel_csv ? "yes" : "NO");
    return serial_csv == parallel_csv ? 0 : 1;
}
