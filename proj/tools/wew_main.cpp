#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "wew/bs_power.hpp"
#include "wew/channel.hpp"
#include "wew/config_io.hpp"
#include "wew/errors.hpp"
#include "wew/experiment.hpp"
#include "wew/netcode.hpp"
#include "wew/sbs_power.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSolver = 2;

struct CommonArgs {
    std::optional<std::string> config_path;
    std::vector<std::string> overrides;
    std::string output;
    int threads = -1;  // -1 = leave config value
};

void add_common(CLI::App* cmd, CommonArgs& args, const std::string& default_output) {
    cmd->add_option("--config", args.config_path, "JSON config file (defaults built in)");
    cmd->add_option("--override", args.overrides,
                    "config overrides as dotted key=value pairs");
    cmd->add_option("--output", args.output, "output path ('-' = stdout)")
        ->default_val(default_output);
    cmd->add_option("--threads", args.threads, "cap worker threads (0 = auto)");
}

// Split command-local keys (plain names) from config-tree overrides.
std::vector<std::string> take_local_overrides(std::vector<std::string>& overrides,
                                              const std::vector<std::string>& local_keys) {
    std::vector<std::string> taken;
    std::vector<std::string> rest;
    for (const auto& spec : overrides) {
        const auto eq = spec.find('=');
        const std::string key = spec.substr(0, eq == std::string::npos ? spec.size() : eq);
        bool is_local = false;
        for (const auto& k : local_keys) is_local = is_local || k == key;
        (is_local ? taken : rest).push_back(spec);
    }
    overrides = rest;
    return taken;
}

double value_of(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw wew::ConfigError("override must be key=value: " + spec);
    return std::stod(spec.substr(eq + 1));
}

std::string string_value_of(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw wew::ConfigError("override must be key=value: " + spec);
    return spec.substr(eq + 1);
}

class OutputStream {
  public:
    explicit OutputStream(const std::string& path) {
        if (path != "-") {
            file_.open(path);
            if (!file_) throw wew::ConfigError("cannot open output file: " + path);
        }
    }
    std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

wew::experiment::ExperimentConfig load_config(const CommonArgs& args) {
    auto cfg = wew::config_io::load(args.config_path, args.overrides);
    if (args.threads >= 0) cfg.threads = args.threads;
    return cfg;
}

int cmd_gen_channels(const CommonArgs& args, long count) {
    const auto cfg = load_config(args);
    const long n = count > 0 ? count : cfg.scenario.n_realizations;
    std::vector<wew::channel::ChannelRealization> rows;
    rows.reserve(n);
    for (long i = 0; i < n; ++i)
        rows.push_back(wew::channel::sample_rayleigh(static_cast<std::uint64_t>(i), cfg.scenario));
    OutputStream out(args.output);
    wew::channel::write_channel_csv(out.get(), rows);
    std::cerr << "wrote " << n << " channel realizations\n";
    return kExitOk;
}

int cmd_solve_bs(CommonArgs args) {
    const auto locals =
        take_local_overrides(args.overrides, {"alpha1", "alpha2", "seed_id", "scheme"});
    const auto cfg = load_config(args);

    std::uint64_t seed_id = 0;
    std::optional<double> alpha1, alpha2;
    std::string scheme = "wew";
    for (const auto& spec : locals) {
        if (spec.rfind("alpha1=", 0) == 0) alpha1 = value_of(spec);
        else if (spec.rfind("alpha2=", 0) == 0) alpha2 = value_of(spec);
        else if (spec.rfind("seed_id=", 0) == 0) seed_id = static_cast<std::uint64_t>(value_of(spec));
        else scheme = string_value_of(spec);
    }

    const auto& sc = cfg.scenario;
    const wew::rate_model::RateRequirements rates{sc.R_U1, sc.R_U2, sc.R_D1, sc.R_D2};
    const auto ch = wew::channel::sample_rayleigh(seed_id, sc);
    OutputStream out(args.output);

    auto emit = [&](const wew::bs_power::BsPowerSolution& sol) {
        out.get() << wew::bs_power::to_jsonl(sol, seed_id) << "\n";
    };

    if (alpha1 || alpha2) {
        wew::rate_model::SplitFactors alpha{alpha1.value_or(0.5), alpha2.value_or(0.5)};
        emit(wew::bs_power::solve_fixed_alpha(ch, rates, alpha, sc.sigma2, cfg.solver_tol));
    } else if (scheme == "wew") {
        emit(wew::bs_power::optimize_alpha(ch, rates, sc.sigma2, cfg.grid_step, cfg.solver_tol));
    } else if (scheme == "zf") {
        emit(wew::bs_power::solve_zf_only(ch, rates, sc.sigma2));
    } else if (scheme == "common") {
        emit(wew::bs_power::solve_common_only(ch, rates, sc.sigma2, cfg.solver_tol));
    } else if (scheme == "random") {
        wew::Rng rng(wew::substream_seed(sc.master_seed, seed_id, wew::channel::kStreamAlpha));
        emit(wew::bs_power::solve_random_alpha(ch, rates, sc.sigma2, rng, cfg.solver_tol));
    } else if (scheme == "all") {
        emit(wew::bs_power::optimize_alpha(ch, rates, sc.sigma2, cfg.grid_step, cfg.solver_tol));
        emit(wew::bs_power::solve_zf_only(ch, rates, sc.sigma2));
        emit(wew::bs_power::solve_common_only(ch, rates, sc.sigma2, cfg.solver_tol));
        wew::Rng rng(wew::substream_seed(sc.master_seed, seed_id, wew::channel::kStreamAlpha));
        emit(wew::bs_power::solve_random_alpha(ch, rates, sc.sigma2, rng, cfg.solver_tol));
    } else {
        throw wew::ConfigError("unknown scheme '" + scheme +
                               "'; valid: wew, zf, common, random, all");
    }
    return kExitOk;
}

int cmd_solve_sbs(CommonArgs args) {
    const auto locals = take_local_overrides(args.overrides, {"seed_id"});
    const auto cfg = load_config(args);
    std::uint64_t seed_id = 0;
    for (const auto& spec : locals)
        if (spec.rfind("seed_id=", 0) == 0) seed_id = static_cast<std::uint64_t>(value_of(spec));

    const auto& sc = cfg.scenario;
    const wew::rate_model::RateRequirements rates{sc.R_U1, sc.R_U2, sc.R_D1, sc.R_D2};
    const auto ch = wew::channel::sample_rayleigh(seed_id, sc);
    const double ps = wew::channel::wired_sbs_power(sc);
    const auto sol = wew::sbs_power::solve_eta(ch, rates, ps, sc.sigma2);
    if (sol.status != wew::sbs_power::EtaStatus::Optimal) {
        std::cerr << "eta search failed\n";
        return kExitSolver;
    }
    OutputStream out(args.output);
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "{\"seed_id\":%llu,\"eta1\":%.12g,\"eta2\":%.12g,\"eta_sum\":%.12g,"
                  "\"extra_power\":%.12g,\"P_S\":%.12g,\"active\":[%s,%s,%s]}\n",
                  static_cast<unsigned long long>(seed_id), sol.eta1, sol.eta2,
                  sol.eta1 + sol.eta2, sol.extra_power, ps,
                  sol.active_constraints[0] ? "true" : "false",
                  sol.active_constraints[1] ? "true" : "false",
                  sol.active_constraints[2] ? "true" : "false");
    out.get() << buf;
    return kExitOk;
}

int cmd_run_experiment(const CommonArgs& args) {
    const auto cfg = load_config(args);
    std::vector<wew::experiment::ResultRow> rows;
    std::size_t done = 0;
    for (double rd : cfg.rd_sweep) {
        auto slice = cfg;
        slice.rd_sweep = {rd};
        auto part = wew::experiment::run_sweep(slice);
        rows.insert(rows.end(), part.begin(), part.end());
        ++done;
        std::cerr << "R_D=" << rd << " done (" << done << "/" << cfg.rd_sweep.size() << ")\n";
    }
    OutputStream out(args.output);
    wew::experiment::write_csv(out.get(), rows);
    if (args.output != "-") {
        std::string plot_path = args.output;
        const std::string suffix = ".csv";
        if (plot_path.size() > suffix.size() &&
            plot_path.compare(plot_path.size() - suffix.size(), suffix.size(), suffix) == 0)
            plot_path.resize(plot_path.size() - suffix.size());
        plot_path += ".gnuplot";
        std::ofstream plot(plot_path);
        wew::experiment::write_gnuplot(plot, args.output);
        std::cerr << "wrote " << args.output << " and " << plot_path << "\n";
    }
    return kExitOk;
}

int cmd_verify_protocol() {
    using namespace wew::netcode;
    long checked = 0;
    for (std::size_t dl_len = 0; dl_len <= 10; ++dl_len) {
        const std::size_t dl_patterns = std::size_t{1} << dl_len;
        for (std::size_t dl_bits = 0; dl_bits < dl_patterns; ++dl_bits) {
            Message dl;
            dl.origin = Origin::BsToMs1;
            for (std::size_t i = 0; i < dl_len; ++i)
                dl.bits.push_back(static_cast<std::uint8_t>((dl_bits >> i) & 1u));
            for (std::size_t ul_len = 0; ul_len <= dl_len; ++ul_len) {
                const std::size_t ul_patterns = std::size_t{1} << ul_len;
                for (std::size_t ul_bits = 0; ul_bits < ul_patterns; ++ul_bits) {
                    Message ul;
                    ul.origin = Origin::Ms1ToBs;
                    for (std::size_t i = 0; i < ul_len; ++i)
                        ul.bits.push_back(static_cast<std::uint8_t>((ul_bits >> i) & 1u));
                    const Message enc = xor_encode(dl, ul);
                    const auto [ul_rec, dl_rec] = recover_at_endnodes(enc, dl, ul, ul_len);
                    ++checked;
                    if (ul_rec.bits != ul.bits || dl_rec.bits != dl.bits) {
                        std::cerr << "FAIL: XOR round trip dl_len=" << dl_len
                                  << " ul_len=" << ul_len << "\n";
                        return kExitSolver;
                    }
                }
            }
        }
        std::cerr << "downlink length " << dl_len << ": all round trips exact\n";
    }
    std::cout << "verified " << checked << " XOR round trips, zero recovery errors\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wireless-emulated-wire power optimization toolkit"};
    app.require_subcommand(1);

    CommonArgs gen_args, bs_args, sbs_args, exp_args;
    long gen_count = 0;

    auto* gen = app.add_subcommand("gen-channels", "dump seeded channel realizations as CSV");
    add_common(gen, gen_args, "-");
    gen->add_option("--count", gen_count, "number of realizations (default: config value)");

    auto* bs = app.add_subcommand("solve-bs", "solve the BS power problem for one realization");
    add_common(bs, bs_args, "-");

    auto* sbs = app.add_subcommand("solve-sbs", "solve the SBS scaling problem for one realization");
    add_common(sbs, sbs_args, "-");

    auto* exp = app.add_subcommand("run-experiment", "run the Monte Carlo sweep and write CSV");
    add_common(exp, exp_args, "results.csv");

    auto* verify = app.add_subcommand("verify-protocol", "exhaustive XOR round-trip checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen_channels(gen_args, gen_count);
        if (bs->parsed()) return cmd_solve_bs(bs_args);
        if (sbs->parsed()) return cmd_solve_sbs(sbs_args);
        if (exp->parsed()) return cmd_run_experiment(exp_args);
        if (verify->parsed()) return cmd_verify_protocol();
    } catch (const wew::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const wew::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitUsage;
}
