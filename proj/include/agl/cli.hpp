#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "agl/config.hpp"
#include "agl/experiments.hpp"

namespace agl::cli {

// Invalid user configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

// Reads {kind, honest, n, lambda, p, q} plus the optional simulation keys
// {horizon, warmup, seed, reps, coin_mode, threads} on top of `base`.
// Throws ConfigError listing every problem found.
RunConfig parse_config_json(std::string_view text, RunConfig base = {});
std::string dump_config_json(const RunConfig& config);

// "10,20,50" or geometric "min:max:factor".
std::vector<int> parse_n_values(std::string_view text);

// Every analytic quantity of one network as CSV-ready rows.
SweepResult analytic_rows(const NetworkSpec& spec);

// Exit codes: 0 success, 1 internal failure, 2 usage or configuration error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace agl::cli
