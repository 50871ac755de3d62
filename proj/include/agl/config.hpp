#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "agl/model.hpp"

namespace agl {

enum class CoinMode {
    ExplicitFlip,  // nominal rates, coins flipped per infected packet
    PreThinned,    // thinned rates, every infected packet accepted
};

std::string_view to_string(CoinMode mode);
std::optional<CoinMode> parse_coin_mode(std::string_view text);

struct SimParams {
    double horizon = 1.0e5;
    std::optional<double> warmup;  // defaults to 10% of the horizon
    std::uint64_t seed = 1;
    int reps = 10;
    CoinMode coin_mode = CoinMode::ExplicitFlip;
    int threads = 0;  // 0 = hardware concurrency

    double effective_warmup() const { return warmup.value_or(0.1 * horizon); }

    friend bool operator==(const SimParams&, const SimParams&) = default;
};

struct RunConfig {
    NetworkSpec spec;
    SimParams sim;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct ValidationResult {
    std::optional<RunConfig> config;  // normalized, defaults filled
    std::vector<std::string> violations;

    bool ok() const { return config.has_value(); }
};

// Checks every field and reports all violations at once.
ValidationResult validate_config(const NetworkSpec& spec, const SimParams& params);

}  // namespace agl
