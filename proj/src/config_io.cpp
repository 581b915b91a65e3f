#include "wew/config_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wew/errors.hpp"

namespace wew::config_io {

using experiment::Averaging;
using experiment::ExperimentConfig;
using json = nlohmann::json;

namespace {

json schema_defaults() {
    const ExperimentConfig d;
    json j;
    j["scenario"] = {
        {"M", d.scenario.M},
        {"sigma2", d.scenario.sigma2},
        {"R_U1", d.scenario.R_U1},
        {"R_U2", d.scenario.R_U2},
        {"R_D1", d.scenario.R_D1},
        {"R_D2", d.scenario.R_D2},
        {"P_S", d.scenario.P_S},
        {"n_realizations", d.scenario.n_realizations},
        {"master_seed", d.scenario.master_seed},
        {"channel_gain", d.scenario.channel_gain},
        {"gamma_from_downlink", d.scenario.gamma_from_downlink},
    };
    j["rd_sweep"] = d.rd_sweep;
    j["schemes"] = {"WEW", "ZFOnly", "CommonOnly", "RandomSplit"};
    j["grid_step"] = d.grid_step;
    j["include_sbs_problem"] = d.include_sbs_problem;
    j["averaging"] = "db_of_mean";
    j["threads"] = d.threads;
    j["solver_tol"] = d.solver_tol;
    return j;
}

std::string key_list(const json& obj) {
    std::string keys;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!keys.empty()) keys += ", ";
        keys += it.key();
    }
    return keys;
}

void merge_checked(json& base, const json& overlay, const std::string& prefix) {
    if (!overlay.is_object())
        throw ConfigError("config element '" + (prefix.empty() ? "<root>" : prefix) +
                          "' must be an object");
    for (auto it = overlay.begin(); it != overlay.end(); ++it) {
        const std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (!base.contains(it.key()))
            throw ConfigError("unknown config key '" + path + "'; valid keys here: " +
                              key_list(base));
        if (base[it.key()].is_object())
            merge_checked(base[it.key()], it.value(), path);
        else
            base[it.key()] = it.value();
    }
}

void apply_override(json& base, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override '" + spec + "' must have the form key=value");
    const std::string key = spec.substr(0, eq);
    const std::string value = spec.substr(eq + 1);

    json* node = &base;
    std::string prefix;
    std::size_t pos = 0;
    while (true) {
        const auto dot = key.find('.', pos);
        const std::string part = key.substr(pos, dot == std::string::npos ? dot : dot - pos);
        const std::string path = prefix.empty() ? part : prefix + "." + part;
        if (!node->contains(part))
            throw ConfigError("unknown override key '" + path + "'; valid keys here: " +
                              key_list(*node));
        node = &(*node)[part];
        prefix = path;
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    json parsed = json::parse(value, nullptr, false);
    *node = parsed.is_discarded() ? json(value) : parsed;
}

bs_power::Scheme scheme_from_string(const std::string& s) {
    if (s == "WEW") return bs_power::Scheme::WEW;
    if (s == "ZFOnly") return bs_power::Scheme::ZFOnly;
    if (s == "CommonOnly") return bs_power::Scheme::CommonOnly;
    if (s == "RandomSplit") return bs_power::Scheme::RandomSplit;
    throw ConfigError("unknown scheme '" + s +
                      "'; valid: WEW, ZFOnly, CommonOnly, RandomSplit");
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    try {
        const json& s = j.at("scenario");
        c.scenario.M = s.at("M").get<int>();
        c.scenario.sigma2 = s.at("sigma2").get<double>();
        c.scenario.R_U1 = s.at("R_U1").get<double>();
        c.scenario.R_U2 = s.at("R_U2").get<double>();
        c.scenario.R_D1 = s.at("R_D1").get<double>();
        c.scenario.R_D2 = s.at("R_D2").get<double>();
        c.scenario.P_S = s.at("P_S").get<double>();
        c.scenario.n_realizations = s.at("n_realizations").get<int>();
        c.scenario.master_seed = s.at("master_seed").get<std::uint64_t>();
        c.scenario.channel_gain = s.at("channel_gain").get<double>();
        c.scenario.gamma_from_downlink = s.at("gamma_from_downlink").get<bool>();
        c.rd_sweep = j.at("rd_sweep").get<std::vector<double>>();
        c.schemes.clear();
        for (const auto& name : j.at("schemes"))
            c.schemes.push_back(scheme_from_string(name.get<std::string>()));
        c.grid_step = j.at("grid_step").get<double>();
        c.include_sbs_problem = j.at("include_sbs_problem").get<bool>();
        const std::string avg = j.at("averaging").get<std::string>();
        if (avg == "db_of_mean")
            c.averaging = Averaging::DbOfMean;
        else if (avg == "mean_of_db")
            c.averaging = Averaging::MeanOfDb;
        else
            throw ConfigError("averaging must be 'db_of_mean' or 'mean_of_db'");
        c.threads = j.at("threads").get<int>();
        c.solver_tol = j.at("solver_tol").get<double>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config value: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig build(const json& overlay, const std::vector<std::string>& overrides) {
    json j = schema_defaults();
    if (!overlay.is_null()) merge_checked(j, overlay, "");
    for (const auto& spec : overrides) apply_override(j, spec);
    return config_from_json(j);
}

}  // namespace

ExperimentConfig load(const std::optional<std::string>& path,
                      const std::vector<std::string>& overrides) {
    json overlay;
    if (path) {
        std::ifstream in(*path);
        if (!in) throw ConfigError("cannot open config file: " + *path);
        overlay = json::parse(in, nullptr, false);
        if (overlay.is_discarded()) throw ConfigError("config file is not valid JSON: " + *path);
    }
    return build(overlay, overrides);
}

ExperimentConfig parse_json_text(const std::string& text,
                                 const std::vector<std::string>& overrides) {
    json overlay = json::parse(text, nullptr, false);
    if (overlay.is_discarded()) throw ConfigError("config text is not valid JSON");
    return build(overlay, overrides);
}

std::string to_json_text(const ExperimentConfig& config) {
    json j = schema_defaults();
    json& s = j["scenario"];
    s["M"] = config.scenario.M;
    s["sigma2"] = config.scenario.sigma2;
    s["R_U1"] = config.scenario.R_U1;
    s["R_U2"] = config.scenario.R_U2;
    s["R_D1"] = config.scenario.R_D1;
    s["R_D2"] = config.scenario.R_D2;
    s["P_S"] = config.scenario.P_S;
    s["n_realizations"] = config.scenario.n_realizations;
    s["master_seed"] = config.scenario.master_seed;
    s["channel_gain"] = config.scenario.channel_gain;
    s["gamma_from_downlink"] = config.scenario.gamma_from_downlink;
    j["rd_sweep"] = config.rd_sweep;
    std::vector<std::string> schemes;
    for (auto sch : config.schemes) schemes.emplace_back(bs_power::to_string(sch));
    j["schemes"] = schemes;
    j["grid_step"] = config.grid_step;
    j["include_sbs_problem"] = config.include_sbs_problem;
    j["averaging"] =
        config.averaging == Averaging::DbOfMean ? "db_of_mean" : "mean_of_db";
    j["threads"] = config.threads;
    j["solver_tol"] = config.solver_tol;
    return j.dump(2) + "\n";
}

}  // namespace wew::config_io
