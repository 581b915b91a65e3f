#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wew/bs_power.hpp"
#include "wew/channel.hpp"
#include "wew/sbs_power.hpp"

namespace wew::experiment {

enum class Averaging { DbOfMean, MeanOfDb };

struct ExperimentConfig {
    channel::ScenarioConfig scenario;
    std::vector<double> rd_sweep = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::vector<bs_power::Scheme> schemes = {bs_power::Scheme::WEW, bs_power::Scheme::ZFOnly,
                                             bs_power::Scheme::CommonOnly,
                                             bs_power::Scheme::RandomSplit};
    double grid_step = 0.1;
    bool include_sbs_problem = true;
    Averaging averaging = Averaging::DbOfMean;
    int threads = 0;  // 0 = library default
    double solver_tol = 1e-7;

    void validate() const;
};

// 10 log10(power / sigma2). Throws NonPositivePower when power <= 0.
double to_db(double power_linear, double sigma2);

struct SchemeOutcome {
    bool ok = false;
    double total_power = 0.0;
    double solver_gap = 0.0;
    double solver_residual = 0.0;
};

// Everything computed for one (R_D, seed_id) pair. The same channel draw
// feeds every scheme and every sweep point.
struct RealizationOutcome {
    std::uint64_t seed_id = 0;
    std::array<std::optional<SchemeOutcome>, 4> scheme_result;  // indexed by Scheme value
    bool eta_ok = false;
    double eta_sum = 2.0;
    double extra_power = 0.0;
};

RealizationOutcome solve_realization(const ExperimentConfig& config, double rd,
                                     std::uint64_t seed_id);

struct ResultRow {
    double R_D = 0.0;
    bs_power::Scheme scheme = bs_power::Scheme::WEW;
    double mean_power_db = 0.0;
    double std_power_db = 0.0;
    long n_ok = 0;
    long n_failed = 0;
    double mean_eta_sum = 0.0;
    double mean_extra_power_db = 0.0;

    // linear-domain aggregates backing the dB columns
    double mean_power_linear = 0.0;
    double std_power_linear = 0.0;
    double mean_extra_linear = 0.0;
};

// Monte Carlo sweep. Realizations run in parallel (OpenMP); results are
// gathered by seed and reduced in seed order, so the output is identical for
// any thread count.
std::vector<ResultRow> run_sweep(const ExperimentConfig& config);

// Single-threaded reference driver over the same per-realization kernel.
std::vector<ResultRow> run_sweep_serial(const ExperimentConfig& config);

// CSV with header
// R_D,scheme,mean_power_db,std_power_db,n_ok,n_failed,mean_eta_sum,mean_extra_power_db
void write_csv(std::ostream& os, const std::vector<ResultRow>& rows);

// Companion gnuplot script for the BS-power and extra-SBS-power plots.
void write_gnuplot(std::ostream& os, const std::string& csv_name);

}  // namespace wew::experiment
