#pragma once

// Parameter sweeps over network size, log-log scaling fits, simulation versus
// analytic comparisons and the figure presets.

#include <optional>
#include <string>
#include <vector>

#include "agl/analytic.hpp"
#include "agl/config.hpp"
#include "agl/model.hpp"
#include "agl/simulator.hpp"

namespace agl {

// Which node's age a sweep row reports.
struct NodeSelector {
    enum class Kind {
        FixedIndex,  // node `index`
        Infected,    // node n
        Adversary,   // MITM node A
        PowerLaw,    // m = floor(n^alpha), alpha in (0, 1)
        Transition,  // m = floor(sqrt(alpha * n * ln n))
    };
    Kind kind = Kind::FixedIndex;
    int index = 1;
    double alpha = 0.5;

    static NodeSelector fixed(int index) { return {Kind::FixedIndex, index, 0.0}; }
    static NodeSelector infected() { return {Kind::Infected, 0, 0.0}; }
    static NodeSelector adversary() { return {Kind::Adversary, 0, 0.0}; }
    static NodeSelector power_law(double alpha) { return {Kind::PowerLaw, 0, alpha}; }
    static NodeSelector transition(double alpha = 0.25) { return {Kind::Transition, 0, alpha}; }

    // Node index for network size n, or nullopt for the infected/adversary
    // selectors. May fall outside [1, n-1]; sweep() skips those sizes.
    std::optional<long> regular_index(long n) const;
};

// Snaps each n to ceil(l^(1/alpha)) with l = floor(n^alpha), the first size
// at which the power-law index reaches l. Sorted, duplicates removed.
std::vector<int> snap_power_law_sizes(const std::vector<int>& n_values, double alpha);

// Geometric grid min, min*factor, ... (rounded, deduplicated, <= max).
std::vector<int> geometric_sizes(int min, int max, double factor);

struct SweepRow {
    int n = 0;
    std::string node_label;
    std::optional<std::string> series;
    std::optional<double> analytic;
    std::optional<double> sim_mean;
    std::optional<double> sim_ci95;
    std::optional<double> bound_lower;
    std::optional<double> bound_upper;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // sorted by n within each series
    std::vector<int> skipped_n;  // sizes where the selected node does not exist
};

struct SweepOptions {
    double lambda = 1.0;
    // Adds sim_mean/sim_ci95 columns when set.
    std::optional<SimParams> sim;
    // Sizes above this stay analytic-only even when sim is set.
    int sim_max_n = 1 << 30;
    std::optional<std::string> series;
};

SweepResult sweep(NetworkKind kind, AdversaryPolicy policy, const std::vector<int>& n_values,
                  NodeSelector selector, const SweepOptions& options = {});

struct ScalingFit {
    double exponent = 0.0;
    bool degenerate = false;
    std::size_t rows_used = 0;
};

// Least-squares slope of log v against log n over the top half of the
// log-n range (at least three rows). Needs >= 3 rows spanning a factor of 4
// in n; throws std::invalid_argument otherwise.
ScalingFit scaling_exponent(const std::vector<std::pair<double, double>>& rows);

struct NodeComparison {
    std::string node_label;
    double reference = 0.0;
    double sim_mean = 0.0;
    std::optional<double> sim_ci95;
    double rel_error = 0.0;
    bool ci_covers = true;
};

struct Comparison {
    std::vector<NodeComparison> nodes;
    double max_rel_error = 0.0;
    std::vector<std::string> flagged;  // CI excludes the reference value
    SimReport report;
};

// Reference values: the recursions for adversarial networks, the dense
// stationary solve for honest ones.
Comparison compare_sim_analytic(const NetworkSpec& spec, const SimParams& params);

enum class FigureId { Fig4, Fig5, Fig6, Fig7, Fig8, Fig9, Fig10 };

std::optional<FigureId> parse_figure_id(std::string_view text);

struct PresetOptions {
    int n_min = 10;
    int n_max = 10000;
    double factor = 1.2;
    // Explicit sizes; overrides the geometric grid when non-empty.
    std::vector<int> sizes;
    std::optional<SimParams> sim;
    int sim_max_n = 64;
};

SweepResult figure_preset(FigureId id, const PresetOptions& options = {});

}  // namespace agl
