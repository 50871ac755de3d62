#include "agl/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "agl/stationary.hpp"

namespace agl {

std::optional<long> NodeSelector::regular_index(long n) const
{
    switch (kind) {
    case Kind::FixedIndex: return index;
    case Kind::PowerLaw:
        // Guard against pow() landing a hair under an exact integer.
        return static_cast<long>(std::floor(std::pow(static_cast<double>(n), alpha) * (1.0 + 1e-12)));
    case Kind::Transition: {
        const double dn = static_cast<double>(n);
        return static_cast<long>(std::floor(std::sqrt(alpha * dn * std::log(dn))));
    }
    case Kind::Infected:
    case Kind::Adversary: return std::nullopt;
    }
    return std::nullopt;
}

std::vector<int> snap_power_law_sizes(const std::vector<int>& n_values, double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("power-law alpha must lie in (0, 1)");
    const auto sel = NodeSelector::power_law(alpha);
    std::vector<int> out;
    for (int n : n_values) {
        const long level = *sel.regular_index(n);
        if (level < 1) {
            out.push_back(n);
            continue;
        }
        auto snapped = static_cast<long>(std::ceil(std::pow(static_cast<double>(level), 1.0 / alpha) * (1.0 - 1e-12)));
        while (*sel.regular_index(snapped) < level) ++snapped;
        while (snapped > 1 && *sel.regular_index(snapped - 1) >= level) --snapped;
        out.push_back(static_cast<int>(snapped));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<int> geometric_sizes(int min, int max, double factor)
{
    if (min < 1 || max < min || !(factor > 1.0)) throw std::invalid_argument("geometric grid needs 1 <= min <= max and factor > 1");
    std::vector<int> out;
    for (double x = min; x <= max * (1.0 + 1e-12); x *= factor) out.push_back(static_cast<int>(std::lround(x)));
    if (out.back() != max) out.push_back(max);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SweepResult sweep(NetworkKind kind, AdversaryPolicy policy, const std::vector<int>& n_values,
                  NodeSelector selector, const SweepOptions& options)
{
    const bool mitm = kind.topology == Topology::FullyConnectedMitm && !kind.honest;
    if (selector.kind == NodeSelector::Kind::Adversary && !mitm)
        throw std::invalid_argument("sweep: adversary node exists only under MITM");

    std::vector<int> sizes = selector.kind == NodeSelector::Kind::PowerLaw
                                 ? snap_power_law_sizes(n_values, selector.alpha)
                                 : n_values;
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

    SweepResult result;
    for (int n : sizes) {
        const auto index = selector.regular_index(n);
        if (n < 2 || (index && (*index < 1 || *index >= n))) {
            result.skipped_n.push_back(n);
            continue;
        }

        NetworkSpec spec;
        spec.kind = kind;
        spec.n = n;
        spec.lambda = options.lambda;
        spec.policy = policy;
        const AnalyticAges ages = analytic_ages(spec);
        const double lam = options.lambda;

        SweepRow row;
        row.n = n;
        row.series = options.series;
        if (index) {
            const auto m = static_cast<int>(*index);
            row.node_label = std::to_string(m);
            row.analytic = ages.node_age(m);
            if (!kind.honest) {
                switch (kind.topology) {
                case Topology::FullyConnectedCapture: {
                    const auto cb = fcn_case_bounds(n, lam, policy.p, policy.q);
                    for (const auto& b : cb.bounds) {
                        if (b.label != "v1") continue;
                        if (cb.which == FcnCase::PushOnly) row.bound_lower = b.lower;
                        if (std::isfinite(b.upper)) row.bound_upper = b.upper;
                    }
                    break;
                }
                case Topology::FullyConnectedMitm: row.bound_lower = *ages.adversary / 4.0; break;
                case Topology::UnidirectionalRingCapture:
                    if (auto b = urn_age_bounds(n, lam, policy.p, m, ages.infected)) {
                        row.bound_lower = b->lower;
                        row.bound_upper = b->upper;
                    }
                    break;
                }
            }
        } else if (selector.kind == NodeSelector::Kind::Infected) {
            row.node_label = "n";
            row.analytic = ages.infected;
            if (!kind.honest && kind.topology == Topology::FullyConnectedCapture && policy.q < 1.0)
                row.bound_upper = ages.v1() + 1.0 / (lam * (1.0 - policy.q));
            if (mitm) row.bound_lower = *ages.adversary / 2.0;
        } else {
            row.node_label = "A";
            row.analytic = ages.adversary;
        }

        if (options.sim && n <= options.sim_max_n) {
            const SimConfig cfg{spec, *options.sim};
            const SimReport rep = replicate(cfg, options.sim->reps);
            std::size_t slot = 0;
            if (index) {
                slot = static_cast<std::size_t>(*index - 1);
            } else if (selector.kind == NodeSelector::Kind::Infected) {
                slot = static_cast<std::size_t>(n - 1);
            }
            if (selector.kind == NodeSelector::Kind::Adversary) {
                row.sim_mean = rep.mean_age_adversary;
                row.sim_ci95 = rep.ci95_adversary;
            } else {
                row.sim_mean = rep.mean_age[slot];
                if (rep.ci95) row.sim_ci95 = (*rep.ci95)[slot];
            }
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

ScalingFit scaling_exponent(const std::vector<std::pair<double, double>>& rows)
{
    if (rows.size() < 3) throw std::invalid_argument("scaling_exponent: need at least 3 rows");
    auto sorted = rows;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [n, v] : sorted)
        if (!(n > 0.0) || !(v > 0.0)) throw std::invalid_argument("scaling_exponent: n and v must be positive");
    if (sorted.back().first < 4.0 * sorted.front().first)
        throw std::invalid_argument("scaling_exponent: rows must span at least a factor 4 in n");

    const double lo = std::log(sorted.front().first);
    const double hi = std::log(sorted.back().first);
    const double mid = 0.5 * (lo + hi);
    auto first = std::find_if(sorted.begin(), sorted.end(), [&](const auto& r) { return std::log(r.first) >= mid; });
    if (sorted.end() - first < 3) first = sorted.end() - 3;

    ScalingFit fit;
    fit.rows_used = static_cast<std::size_t>(sorted.end() - first);
    double mx = 0.0;
    double my = 0.0;
    for (auto it = first; it != sorted.end(); ++it) {
        mx += std::log(it->first);
        my += std::log(it->second);
    }
    const double count = static_cast<double>(fit.rows_used);
    mx /= count;
    my /= count;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (auto it = first; it != sorted.end(); ++it) {
        const double dx = std::log(it->first) - mx;
        const double dy = std::log(it->second) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        fit.degenerate = true;
        return fit;
    }
    fit.exponent = sxy / sxx;
    return fit;
}

Comparison compare_sim_analytic(const NetworkSpec& spec, const SimParams& params)
{
    const AnalyticAges ref = spec.kind.honest ? honest_dense_ages(spec.kind.topology, spec.n, spec.lambda)
                                              : analytic_ages(spec);
    Comparison out;
    out.report = replicate(SimConfig{spec, params}, params.reps);

    auto add = [&](std::string label, double reference, double sim, std::optional<double> ci) {
        NodeComparison c;
        c.node_label = std::move(label);
        c.reference = reference;
        c.sim_mean = sim;
        c.sim_ci95 = ci;
        c.rel_error = std::abs(sim - reference) / reference;
        c.ci_covers = !ci || std::abs(sim - reference) <= *ci;
        out.max_rel_error = std::max(out.max_rel_error, c.rel_error);
        if (!c.ci_covers) out.flagged.push_back(c.node_label);
        out.nodes.push_back(std::move(c));
    };
    for (NodeId i = 1; i <= spec.n; ++i) {
        const auto slot = static_cast<std::size_t>(i - 1);
        std::optional<double> ci;
        if (out.report.ci95) ci = (*out.report.ci95)[slot];
        add(std::to_string(i), ref.node_age(i), out.report.mean_age[slot], ci);
    }
    if (ref.adversary && out.report.mean_age_adversary)
        add("A", *ref.adversary, *out.report.mean_age_adversary, out.report.ci95_adversary);
    return out;
}

}  // namespace agl
