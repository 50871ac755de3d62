#include "agl/config.hpp"

#include <cmath>

namespace agl {

std::string_view to_string(CoinMode mode)
{
    return mode == CoinMode::ExplicitFlip ? "explicit" : "thinned";
}

std::optional<CoinMode> parse_coin_mode(std::string_view text)
{
    if (text == "explicit" || text == "explicit-flip") return CoinMode::ExplicitFlip;
    if (text == "thinned" || text == "pre-thinned") return CoinMode::PreThinned;
    return std::nullopt;
}

ValidationResult validate_config(const NetworkSpec& spec, const SimParams& params)
{
    ValidationResult result;
    result.violations = spec_violations(spec);

    if (!(params.horizon > 0.0) || !std::isfinite(params.horizon))
        result.violations.emplace_back("horizon must be a positive finite time");
    if (params.warmup) {
        const double w = *params.warmup;
        if (!(w >= 0.0) || !(w < params.horizon))
            result.violations.emplace_back("warmup must satisfy 0 <= warmup < horizon");
    }
    if (params.reps < 1) result.violations.emplace_back("reps must be >= 1");
    if (params.threads < 0) result.violations.emplace_back("threads must be >= 0");

    if (result.violations.empty()) {
        RunConfig cfg{spec, params};
        cfg.sim.warmup = params.effective_warmup();
        result.config = cfg;
    }
    return result;
}

}  // namespace agl
