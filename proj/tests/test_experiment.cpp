#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "wew/errors.hpp"
#include "wew/experiment.hpp"

using namespace wew;
using namespace wew::experiment;
using bs_power::Scheme;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.scenario.n_realizations = 6;
    cfg.scenario.master_seed = 2024;
    cfg.rd_sweep = {2.0, 4.0};
    cfg.grid_step = 0.25;
    return cfg;
}

std::string csv_text(const std::vector<ResultRow>& rows) {
    std::ostringstream ss;
    write_csv(ss, rows);
    return ss.str();
}

}  // namespace

TEST_CASE("dB conversion") {
    CHECK(to_db(1.0, 1.0) == doctest::Approx(0.0));
    CHECK(to_db(10.0, 1.0) == doctest::Approx(10.0));
    CHECK(to_db(4.0, 1.0) == doctest::Approx(6.0205999133).epsilon(1e-9));
    CHECK(to_db(4.0, 4.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(to_db(0.0, 1.0), NonPositivePower);
    CHECK_THROWS_AS(to_db(-1.0, 1.0), NonPositivePower);
}

TEST_CASE("single-realization rows equal the direct solver outputs") {
    ExperimentConfig cfg = small_config();
    cfg.scenario.n_realizations = 1;
    cfg.rd_sweep = {4.0};
    const auto rows = run_sweep_serial(cfg);
    REQUIRE(rows.size() == 4);

    const auto outcome = solve_realization(cfg, 4.0, 0);
    for (const auto& row : rows) {
        const auto& res = outcome.scheme_result[static_cast<int>(row.scheme)];
        REQUIRE(res.has_value());
        REQUIRE(res->ok);
        CHECK(row.n_ok == 1);
        CHECK(row.n_failed == 0);
        CHECK(row.mean_power_linear == res->total_power);
        CHECK(row.mean_power_db ==
              doctest::Approx(to_db(res->total_power, cfg.scenario.sigma2)));
        CHECK(row.std_power_db == 0.0);
        CHECK(row.mean_eta_sum == outcome.eta_sum);
    }
}

TEST_CASE("mean dominance follows from per-realization dominance") {
    const ExperimentConfig cfg = small_config();
    const auto rows = run_sweep_serial(cfg);
    REQUIRE(rows.size() == 8);
    for (std::size_t base = 0; base < rows.size(); base += 4) {
        const auto& wew = rows[base + 0];
        REQUIRE(wew.scheme == Scheme::WEW);
        for (std::size_t k = 1; k < 4; ++k) {
            if (rows[base + k].n_ok == 0) continue;
            CHECK(wew.mean_power_linear <= rows[base + k].mean_power_linear + 1e-6);
        }
    }
}

TEST_CASE("per-realization dominance holds row-wise under paired seeding") {
    const ExperimentConfig cfg = small_config();
    for (long i = 0; i < cfg.scenario.n_realizations; ++i) {
        const auto o = solve_realization(cfg, 4.0, i);
        const auto& wew = o.scheme_result[static_cast<int>(Scheme::WEW)];
        REQUIRE(wew.has_value());
        REQUIRE(wew->ok);
        for (Scheme s : {Scheme::ZFOnly, Scheme::CommonOnly, Scheme::RandomSplit}) {
            const auto& other = o.scheme_result[static_cast<int>(s)];
            if (other && other->ok)
                CHECK(wew->total_power <= other->total_power + 1e-6);
        }
        CHECK(o.eta_ok);
        CHECK(o.extra_power >= 0.0);
        CHECK(o.eta_sum >= 2.0 - 1e-12);
    }
}

TEST_CASE("identical configs give byte-identical CSV") {
    const ExperimentConfig cfg = small_config();
    const auto a = run_sweep(cfg);
    const auto b = run_sweep(cfg);
    CHECK(csv_text(a) == csv_text(b));
    CHECK(csv_text(a).rfind("R_D,scheme,mean_power_db,std_power_db,n_ok,n_failed,"
                            "mean_eta_sum,mean_extra_power_db\n",
                            0) == 0);
}

TEST_CASE("parallel driver reproduces the serial reference") {
    ExperimentConfig cfg = small_config();
    const auto serial = run_sweep_serial(cfg);
    cfg.threads = 2;
    const auto parallel = run_sweep(cfg);
    CHECK(csv_text(serial) == csv_text(parallel));
    cfg.threads = 1;
    const auto single = run_sweep(cfg);
    CHECK(csv_text(serial) == csv_text(single));
}

TEST_CASE("averaging mode changes only the dB reduction") {
    ExperimentConfig cfg = small_config();
    cfg.rd_sweep = {4.0};
    const auto lin = run_sweep_serial(cfg);
    cfg.averaging = Averaging::MeanOfDb;
    const auto db = run_sweep_serial(cfg);
    REQUIRE(lin.size() == db.size());
    for (std::size_t i = 0; i < lin.size(); ++i) {
        CHECK(lin[i].mean_power_linear == db[i].mean_power_linear);
        // dB of mean >= mean of dB (Jensen)
        if (lin[i].n_ok > 0) CHECK(lin[i].mean_power_db >= db[i].mean_power_db - 1e-9);
    }
}

TEST_CASE("config validation rejects bad sweeps") {
    ExperimentConfig cfg = small_config();
    cfg.rd_sweep.clear();
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = small_config();
    cfg.rd_sweep = {0.5};  // below the uplink rate
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = small_config();
    cfg.grid_step = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("gnuplot companion references the CSV") {
    std::ostringstream ss;
    write_gnuplot(ss, "results.csv");
    CHECK(ss.str().find("results.csv") != std::string::npos);
    CHECK(ss.str().find("WEW") != std::string::npos);
}
