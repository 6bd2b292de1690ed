#pragma once
#include <optional>
#include <string>
#include <vector>

#include "dtc/io/config.hpp"

// Built-in named configurations covering the standard scenarios: order-parameter
// maps of the exchange-free and pulse-decoupled chains, single-point trajectories,
// the axis-switching rotation protocol, coherence and purity maps, and the
// size / charge-noise variations. `presets` on the CLI lists them.
namespace dtc::io {

struct Preset {
    std::string id;
    std::string description;
    RunConfig config;
};

const std::vector<Preset>& preset_catalog();

// Alias pairs (bare id -> canonical preset) resolved by find_preset.
const std::vector<std::pair<std::string, std::string>>& preset_aliases();

std::optional<RunConfig> find_preset(const std::string& id);

}  // namespace dtc::io
