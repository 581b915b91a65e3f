#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wew/experiment.hpp"

namespace wew::config_io {

// Load an experiment configuration: built-in defaults, overlaid with the JSON
// document at `path` (when given), then with `key=value` overrides using
// dotted paths (e.g. scenario.master_seed=7). Unknown keys are rejected with
// a diagnostic listing the valid keys at that level.
experiment::ExperimentConfig load(const std::optional<std::string>& path,
                                  const std::vector<std::string>& overrides);

experiment::ExperimentConfig parse_json_text(const std::string& text,
                                             const std::vector<std::string>& overrides = {});

std::string to_json_text(const experiment::ExperimentConfig& config);

}  // namespace wew::config_io
