#pragma once

// Network topologies, adversary policies and the transition-rate tables
// shared by the analytic solver and the event simulator.
//
// Node numbering follows the usual convention: 0 is the source, 1..n are
// user nodes, node n is the infected (capture) or MITM-fed node, and n + 1
// is the MITM adversary A.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace agl {

using NodeId = int;

inline constexpr NodeId kSource = 0;

enum class Topology {
    FullyConnectedCapture,
    FullyConnectedMitm,
    UnidirectionalRingCapture,
};

std::string_view to_string(Topology kind);
std::optional<Topology> parse_topology(std::string_view text);

struct NetworkKind {
    Topology topology = Topology::FullyConnectedCapture;
    // No adversary at all: every stamp is truthful and node n gossips like
    // any other node. For MITM this is the plain fully connected network.
    bool honest = false;

    friend bool operator==(const NetworkKind&, const NetworkKind&) = default;
};

// Oblivious timestamp coins. Outgoing packets of the infected node carry
// stamp t with probability p (else 0); incoming packets are re-stamped to 0
// with probability q (else t).
struct AdversaryPolicy {
    double p = 1.0;
    double q = 1.0;

    friend bool operator==(const AdversaryPolicy&, const AdversaryPolicy&) = default;
};

struct NetworkSpec {
    NetworkKind kind;
    int n = 2;
    double lambda = 1.0;
    AdversaryPolicy policy;

    NodeId infected() const { return n; }
    NodeId adversary() const { return n + 1; }
    bool has_adversary_node() const
    {
        return kind.topology == Topology::FullyConnectedMitm && !kind.honest;
    }

    friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

// How a transition treats the claimed timestamps at the receiver.
enum class EdgeRole : std::uint8_t {
    Gossip,         // truthful stamps, accept iff sender's stamp is newer
    InfectedOut,    // node n -> regular, outgoing coin
    InfectedIn,     // regular -> node n, incoming coin
    AdversaryFeed,  // A -> n, always stamped with the current time
};

struct Edge {
    NodeId from = 0;
    NodeId to = 0;
    double rate = 0.0;
    EdgeRole role = EdgeRole::Gossip;
    // Probability that the sender's packet leaves with the manipulated stamp
    // "now". 1 for pre-thinned tables, where only accepted packets remain.
    double stamp_now_prob = 1.0;
};

struct RateTable {
    NetworkSpec spec;
    // Index j in [1, n]; entry 0 unused.
    std::vector<double> source_rates;
    std::vector<Edge> edges;
    double adversary_source_rate = 0.0;  // MITM: source -> A
    double adversary_feed_rate = 0.0;    // MITM: A -> n

    // Effective rate of i -> j summed over table entries (0 if absent).
    // i == kSource and j == spec.adversary() are accepted.
    double rate(NodeId from, NodeId to) const;
    double total_rate() const;
    double outgoing_rate(NodeId from) const;
    double incoming_gossip_rate(NodeId to) const;
};

// Effective table with adversary coins folded in as thinned Poisson rates.
// Throws std::invalid_argument on an invalid spec.
RateTable build_rate_table(const NetworkSpec& spec);

// Unthinned table: infected edges keep the nominal gossip rate and carry the
// coin probability in Edge::stamp_now_prob. The simulator flips the coins.
RateTable build_nominal_rate_table(const NetworkSpec& spec);

// All violations of the spec's invariants, empty when valid.
std::vector<std::string> spec_violations(const NetworkSpec& spec);

}  // namespace agl
