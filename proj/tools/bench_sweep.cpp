// Times the OpenMP sweep driver against the serial reference on the same
// config and checks that they produce identical rows.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "wew/config_io.hpp"
#include "wew/experiment.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string rows_text(const std::vector<wew::experiment::ResultRow>& rows) {
    std::ostringstream ss;
    wew::experiment::write_csv(ss, rows);
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    std::optional<std::string> config_path;
    std::vector<std::string> overrides;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc)
            config_path = argv[++i];
        else if (arg == "--override" && i + 1 < argc)
            overrides.push_back(argv[++i]);
        else {
            std::cerr << "usage: wew_bench [--config FILE] [--override k=v ...]\n";
            return 1;
        }
    }

    auto cfg = wew::config_io::load(config_path, overrides);
    if (!config_path && overrides.empty()) {
        // default bench workload: small but representative
        cfg.scenario.n_realizations = 24;
        cfg.rd_sweep = {2.0, 4.0};
    }

#ifdef _OPENMP
    const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#else
    const int threads = 1;
#endif
    std::printf("workload: %d realizations x %zu sweep points, %d thread(s)\n",
                cfg.scenario.n_realizations, cfg.rd_sweep.size(), threads);

    auto t0 = std::chrono::steady_clock::now();
    const auto serial_rows = wew::experiment::run_sweep_serial(cfg);
    const double t_serial = seconds_since(t0);
    std::printf("serial reference: %8.3f s\n", t_serial);

    t0 = std::chrono::steady_clock::now();
    const auto parallel_rows = wew::experiment::run_sweep(cfg);
    const double t_parallel = seconds_since(t0);
    std::printf("parallel driver:  %8.3f s  (speedup %.2fx)\n", t_parallel,
                t_serial / t_parallel);

    if (rows_text(serial_rows) != rows_text(parallel_rows)) {
        std::printf("MISMATCH: parallel rows differ from the serial reference\n");
        return 1;
    }
    std::printf("parallel rows match the serial reference byte for byte\n");
    return 0;
}
