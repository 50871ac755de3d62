#pragma once

// Discrete-event simulation of the gossip network under timestomping.
//
// All Poisson clocks are superposed: the next event is one exponential draw at
// the total rate followed by a categorical pick of the firing channel. Ages
// are integrated exactly (closed-form ramp integrals between state changes).
//
// RNG: std::mt19937_64 seeded with splitmix64(seed). Replication r uses seed
// + r. Uniforms take the top 53 bits of one engine output.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "agl/config.hpp"
#include "agl/model.hpp"

namespace agl {

using SimConfig = RunConfig;

struct NodeState {
    double claimed = 0.0;    // timestamp the packet claims, U
    double generated = 0.0;  // true generation time, U-bar
};

enum class TransitionKind : std::uint8_t {
    Source,
    AdversarySource,
    Gossip,
    InfectedOut,
    InfectedIn,
    AdversaryFeed,
};

struct Transition {
    double time = 0.0;
    TransitionKind kind = TransitionKind::Source;
    NodeId from = kSource;
    NodeId to = kSource;
    double claimed_stamp = 0.0;  // stamp carried by the packet on arrival
    bool accepted = false;
    double age_before = 0.0;  // receiver's true age just before / after
    double age_after = 0.0;
};

class Engine {
public:
    explicit Engine(const SimConfig& config);

    // Fires the next event if it happens no later than `until`, otherwise
    // moves the clock to `until` (exponential clocks are memoryless, so the
    // pending draw is discarded) and returns nullopt.
    std::optional<Transition> step(double until);

    // Runs to the horizon and closes the age integrals.
    void run_to_horizon();

    double now() const { return now_; }
    double total_rate() const { return total_rate_; }
    std::uint64_t events() const { return events_; }
    std::uint64_t events_after_warmup() const { return events_after_warmup_; }
    int n() const { return config_.spec.n; }
    bool has_adversary() const { return config_.spec.has_adversary_node(); }

    const NodeState& state(NodeId node) const { return states_[static_cast<std::size_t>(node)]; }
    double age(NodeId node) const { return now_ - state(node).generated; }

    // Time average of the true age over (warmup, now]; valid after
    // run_to_horizon().
    double mean_age(NodeId node) const;

private:
    struct Channel {
        TransitionKind kind;
        NodeId from;
        NodeId to;
        double stamp_now_prob;
    };

    double uniform();
    bool coin(double prob);
    void deliver(NodeId to, const NodeState& packet);
    void close_segment(NodeId node, double until);

    SimConfig config_;
    double warmup_;
    std::mt19937_64 rng_;
    std::vector<Channel> channels_;
    std::vector<double> cumulative_;
    double total_rate_ = 0.0;

    double now_ = 0.0;
    std::uint64_t events_ = 0;
    std::uint64_t events_after_warmup_ = 0;
    std::vector<NodeState> states_;     // 0 = source, 1..n, n+1 = adversary
    std::vector<double> since_;         // start of the current age ramp
    std::vector<double> area_;          // integral of age over (warmup, since_]
};

struct SimReport {
    // Index i-1 holds node i.
    std::vector<double> mean_age;
    std::optional<double> mean_age_adversary;
    std::uint64_t events_processed = 0;
    std::uint64_t events_after_warmup = 0;
    double total_rate = 0.0;
    int reps = 1;

    std::vector<std::vector<double>> per_rep_means;  // [rep][node-1]
    std::vector<double> per_rep_adversary;

    // Normal-approximation 95% half-widths; absent for a single replication.
    std::optional<std::vector<double>> ci95;
    std::optional<double> ci95_adversary;

    bool idle_after_warmup() const { return events_after_warmup == 0; }
};

// One path. Uses config.sim.seed as is.
SimReport run(const SimConfig& config);

// num_reps independent paths with seeds config.sim.seed + r, aggregated.
SimReport replicate(const SimConfig& config, int num_reps);

struct CoinModeVerdict {
    bool node1_overlap = false;
    std::vector<NodeId> diverging;  // nodes whose 95% CIs do not overlap
    SimReport explicit_flip;
    SimReport pre_thinned;
};

// Runs the same spec, horizon and seed in both coin modes.
CoinModeVerdict coin_mode_equivalence(const SimConfig& config, int reps);

// X_node(t) at the given ascending times along one path.
std::vector<double> trajectory_probe(const SimConfig& config, NodeId node, const std::vector<double>& sample_times);

}  // namespace agl
