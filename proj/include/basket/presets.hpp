#pragma once

#include <string>
#include <vector>

#include "basket/contract.hpp"

namespace basket {

/// Built-in parameter sets: A..F plus the HL grid
/// (T in {0.5,1,2} x K in {35,40,45} x sigma1 in {0.3,0.9}, ids like
/// "HL-T1-K40-V0.3").
std::vector<std::string> preset_ids();
bool is_preset(const std::string& id);
BasketSpec make_preset(const std::string& id, ExerciseStyle style);

struct HlKey {
    double maturity;
    double strike;
    double sigma1;
};
std::string hl_id(const HlKey& key);
std::vector<HlKey> hl_grid();  // fixed order: T, then K, then sigma1

/// Flat key/value config file (keys d, strike, maturity, rate, style,
/// weights, sigmas, spot, corr.row.i). Throws ConfigError with line/key
/// diagnostics.
BasketSpec parse_config_file(const std::string& path);
BasketSpec parse_config_text(const std::string& text);

}  // namespace basket
