#include "wew/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "wew/errors.hpp"
#include "wew/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wew::experiment {

using bs_power::Scheme;

void ExperimentConfig::validate() const {
    scenario.validate();
    if (rd_sweep.empty()) throw ConfigError("rd_sweep must not be empty");
    for (double rd : rd_sweep) {
        if (rd < 0.0) throw ConfigError("rd_sweep entries must be >= 0");
        if (rd < scenario.R_U1 || rd < scenario.R_U2)
            throw ConfigError("rd_sweep entries must not fall below the uplink rates");
    }
    if (schemes.empty()) throw ConfigError("schemes must not be empty");
    if (!(grid_step > 0.0 && grid_step <= 0.5)) throw ConfigError("grid_step must be in (0, 0.5]");
    if (threads < 0) throw ConfigError("threads must be >= 0");
    if (!(solver_tol >= 1e-10 && solver_tol <= 1e-2))
        throw ConfigError("solver_tol must be in [1e-10, 1e-2]");
}

double to_db(double power_linear, double sigma2) {
    if (!(power_linear > 0.0)) throw NonPositivePower{};
    return 10.0 * std::log10(power_linear / sigma2);
}

RealizationOutcome solve_realization(const ExperimentConfig& config, double rd,
                                     std::uint64_t seed_id) {
    channel::ScenarioConfig sc = config.scenario;
    sc.R_D1 = rd;
    sc.R_D2 = rd;
    const rate_model::RateRequirements rates{sc.R_U1, sc.R_U2, rd, rd};
    const channel::ChannelRealization ch = channel::sample_rayleigh(seed_id, sc);

    RealizationOutcome out;
    out.seed_id = seed_id;

    auto run_scheme = [&](Scheme s) -> std::optional<SchemeOutcome> {
        SchemeOutcome r;
        try {
            bs_power::BsPowerSolution sol;
            switch (s) {
                case Scheme::WEW:
                    sol = bs_power::optimize_alpha(ch, rates, sc.sigma2, config.grid_step,
                                                   config.solver_tol);
                    break;
                case Scheme::ZFOnly:
                    sol = bs_power::solve_zf_only(ch, rates, sc.sigma2);
                    break;
                case Scheme::CommonOnly:
                    sol = bs_power::solve_common_only(ch, rates, sc.sigma2, config.solver_tol);
                    break;
                case Scheme::RandomSplit: {
                    Rng rng(substream_seed(sc.master_seed, seed_id, channel::kStreamAlpha));
                    sol = bs_power::solve_random_alpha(ch, rates, sc.sigma2, rng,
                                                       config.solver_tol);
                    break;
                }
            }
            r.ok = true;
            r.total_power = sol.total_power;
            r.solver_gap = sol.solver_gap;
            r.solver_residual = sol.solver_residual;
        } catch (const Error&) {
            r.ok = false;
        }
        return r;
    };

    for (Scheme s : config.schemes) out.scheme_result[static_cast<int>(s)] = run_scheme(s);

    if (config.include_sbs_problem) {
        try {
            const double ps = channel::wired_sbs_power(sc);
            const auto eta = sbs_power::solve_eta(ch, rates, ps, sc.sigma2);
            out.eta_ok = eta.status == sbs_power::EtaStatus::Optimal;
            out.eta_sum = eta.eta1 + eta.eta2;
            out.extra_power = eta.extra_power;
        } catch (const Error&) {
            out.eta_ok = false;
        }
    }
    return out;
}

namespace {

std::vector<ResultRow> reduce_rows(const ExperimentConfig& config, double rd,
                                   const std::vector<RealizationOutcome>& outcomes) {
    std::vector<ResultRow> rows;
    for (Scheme s : config.schemes) {
        ResultRow row;
        row.R_D = rd;
        row.scheme = s;

        double sum = 0.0, sum_sq = 0.0, sum_db = 0.0, sum_db_sq = 0.0;
        long n_db = 0;
        double eta_sum = 0.0, extra_sum = 0.0;
        long n_eta = 0;
        for (const auto& o : outcomes) {
            const auto& res = o.scheme_result[static_cast<int>(s)];
            if (res && res->ok) {
                ++row.n_ok;
                sum += res->total_power;
                sum_sq += res->total_power * res->total_power;
                if (res->total_power > 0.0) {
                    const double db = to_db(res->total_power, config.scenario.sigma2);
                    sum_db += db;
                    sum_db_sq += db * db;
                    ++n_db;
                }
            } else {
                ++row.n_failed;
            }
            if (o.eta_ok) {
                ++n_eta;
                eta_sum += o.eta_sum;
                extra_sum += o.extra_power;
            }
        }

        if (row.n_ok > 0) {
            row.mean_power_linear = sum / row.n_ok;
            const double var =
                std::max(0.0, sum_sq / row.n_ok - row.mean_power_linear * row.mean_power_linear);
            row.std_power_linear = std::sqrt(var);
            if (config.averaging == Averaging::DbOfMean) {
                row.mean_power_db = row.mean_power_linear > 0.0
                                        ? to_db(row.mean_power_linear, config.scenario.sigma2)
                                        : -std::numeric_limits<double>::infinity();
            } else {
                row.mean_power_db = n_db > 0 ? sum_db / n_db
                                             : -std::numeric_limits<double>::infinity();
            }
            if (n_db > 0) {
                const double mean_db = sum_db / n_db;
                row.std_power_db = std::sqrt(std::max(0.0, sum_db_sq / n_db - mean_db * mean_db));
            }
        }
        if (n_eta > 0) {
            row.mean_eta_sum = eta_sum / n_eta;
            row.mean_extra_linear = extra_sum / n_eta;
            row.mean_extra_power_db = row.mean_extra_linear > 0.0
                                          ? to_db(row.mean_extra_linear, config.scenario.sigma2)
                                          : -std::numeric_limits<double>::infinity();
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<ResultRow> sweep_impl(const ExperimentConfig& config, bool parallel) {
    config.validate();
    const long n = config.scenario.n_realizations;
    std::vector<ResultRow> all_rows;
    for (double rd : config.rd_sweep) {
        std::vector<RealizationOutcome> outcomes(n);
        if (parallel) {
#ifdef _OPENMP
            const int nt = config.threads > 0 ? config.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
            for (long i = 0; i < n; ++i)
                outcomes[i] = solve_realization(config, rd, static_cast<std::uint64_t>(i));
#else
            for (long i = 0; i < n; ++i)
                outcomes[i] = solve_realization(config, rd, static_cast<std::uint64_t>(i));
#endif
        } else {
            for (long i = 0; i < n; ++i)
                outcomes[i] = solve_realization(config, rd, static_cast<std::uint64_t>(i));
        }
        auto rows = reduce_rows(config, rd, outcomes);
        all_rows.insert(all_rows.end(), rows.begin(), rows.end());
    }
    return all_rows;
}

}  // namespace

std::vector<ResultRow> run_sweep(const ExperimentConfig& config) {
    return sweep_impl(config, true);
}

std::vector<ResultRow> run_sweep_serial(const ExperimentConfig& config) {
    return sweep_impl(config, false);
}

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
    os << "R_D,scheme,mean_power_db,std_power_db,n_ok,n_failed,mean_eta_sum,"
          "mean_extra_power_db\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.10g,%s,%.10g,%.10g,%ld,%ld,%.10g,%.10g\n", r.R_D,
                      bs_power::to_string(r.scheme), r.mean_power_db, r.std_power_db, r.n_ok,
                      r.n_failed, r.mean_eta_sum, r.mean_extra_power_db);
        os << buf;
    }
}

void write_gnuplot(std::ostream& os, const std::string& csv_name) {
    os << "# gnuplot script; expects awk on the PATH for per-scheme filtering\n";
    os << "set datafile separator ','\n";
    os << "set xlabel 'downlink rate R_D (bits/s)'\n";
    os << "set ylabel 'mean BS power over noise (dB)'\n";
    os << "set key top left\n";
    os << "set terminal pngcairo size 900,600\n";
    os << "set output 'bs_power.png'\n";
    os << "plot \\\n";
    const char* schemes[] = {"WEW", "ZFOnly", "CommonOnly", "RandomSplit"};
    for (int i = 0; i < 4; ++i)
        os << "  \"< awk -F, '$2==\\\"" << schemes[i] << "\\\"' " << csv_name
           << "\" using 1:3 with linespoints title '" << schemes[i] << "'"
           << (i < 3 ? ", \\\n" : "\n");
    os << "set ylabel 'mean extra SBS power over noise (dB)'\n";
    os << "set output 'sbs_extra_power.png'\n";
    os << "plot \"< awk -F, '$2==\\\"WEW\\\"' " << csv_name
       << "\" using 1:8 with linespoints title 'extra SBS power'\n";
}

}  // namespace wew::experiment
