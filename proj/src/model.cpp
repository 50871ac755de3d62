#include "agl/model.hpp"

#include <cmath>
#include <stdexcept>

namespace agl {

std::string_view to_string(Topology kind)
{
    switch (kind) {
    case Topology::FullyConnectedCapture: return "fcn-capture";
    case Topology::FullyConnectedMitm: return "fcn-mitm";
    case Topology::UnidirectionalRingCapture: return "urn-capture";
    }
    return "?";
}

std::optional<Topology> parse_topology(std::string_view text)
{
    if (text == "fcn-capture") return Topology::FullyConnectedCapture;
    if (text == "fcn-mitm") return Topology::FullyConnectedMitm;
    if (text == "urn-capture") return Topology::UnidirectionalRingCapture;
    return std::nullopt;
}

std::vector<std::string> spec_violations(const NetworkSpec& spec)
{
    std::vector<std::string> out;
    if (spec.n < 2) out.emplace_back("n must be >= 2 (got " + std::to_string(spec.n) + ")");
    if (!(spec.lambda > 0.0) || !std::isfinite(spec.lambda))
        out.emplace_back("lambda must be a positive finite rate");
    auto check_prob = [&](double v, const char* name) {
        if (!(v >= 0.0 && v <= 1.0))
            out.emplace_back(std::string("probability out of range: ") + name + " must lie in [0, 1]");
    };
    check_prob(spec.policy.p, "p");
    check_prob(spec.policy.q, "q");
    return out;
}

namespace {

void require_valid(const NetworkSpec& spec)
{
    auto problems = spec_violations(spec);
    if (problems.empty()) return;
    std::string msg = "invalid network spec:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw std::invalid_argument(msg);
}

// `thinned` folds the coins into the rates; otherwise the coin probability
// rides along on the edge.
RateTable build_table(const NetworkSpec& spec, bool thinned)
{
    require_valid(spec);
    const int n = spec.n;
    const double lam = spec.lambda;
    const double p = spec.policy.p;
    const double q = spec.policy.q;

    RateTable t;
    t.spec = spec;
    t.source_rates.assign(static_cast<std::size_t>(n) + 1, lam / n);
    t.source_rates[0] = 0.0;

    auto add = [&](NodeId from, NodeId to, double nominal, EdgeRole role, double coin) {
        Edge e{from, to, nominal, role, 1.0};
        if (thinned) {
            e.rate = nominal * coin;
        } else {
            e.stamp_now_prob = coin;
        }
        if (e.rate > 0.0) t.edges.push_back(e);
    };

    const bool honest = spec.kind.honest;
    switch (spec.kind.topology) {
    case Topology::FullyConnectedCapture:
    case Topology::FullyConnectedMitm: {
        const bool capture = spec.kind.topology == Topology::FullyConnectedCapture && !honest;
        const double g = lam / (n - 1);
        for (NodeId i = 1; i <= n; ++i) {
            for (NodeId j = 1; j <= n; ++j) {
                if (i == j) continue;
                if (capture && i == n) {
                    add(i, j, g, EdgeRole::InfectedOut, p);
                } else if (capture && j == n) {
                    add(i, j, g, EdgeRole::InfectedIn, 1.0 - q);
                } else {
                    add(i, j, g, EdgeRole::Gossip, 1.0);
                }
            }
        }
        if (spec.kind.topology == Topology::FullyConnectedMitm && !honest) {
            t.source_rates[static_cast<std::size_t>(n)] = 0.0;
            t.adversary_source_rate = lam / n;
            t.adversary_feed_rate = lam;
            t.edges.push_back(Edge{spec.adversary(), n, lam, EdgeRole::AdversaryFeed, 1.0});
        }
        break;
    }
    case Topology::UnidirectionalRingCapture: {
        for (NodeId i = 1; i <= n; ++i) {
            const NodeId j = (i % n) + 1;
            if (honest) {
                add(i, j, lam, EdgeRole::Gossip, 1.0);
            } else if (i == n) {
                add(i, j, lam, EdgeRole::InfectedOut, p);
            } else if (j == n) {
                add(i, j, lam, EdgeRole::InfectedIn, 1.0 - q);
            } else {
                add(i, j, lam, EdgeRole::Gossip, 1.0);
            }
        }
        break;
    }
    }
    return t;
}

}  // namespace

RateTable build_rate_table(const NetworkSpec& spec) { return build_table(spec, true); }

RateTable build_nominal_rate_table(const NetworkSpec& spec) { return build_table(spec, false); }

double RateTable::rate(NodeId from, NodeId to) const
{
    if (from == kSource) {
        if (to == spec.adversary() && spec.has_adversary_node()) return adversary_source_rate;
        if (to < 1 || to > spec.n) return 0.0;
        return source_rates[static_cast<std::size_t>(to)];
    }
    double sum = 0.0;
    for (const auto& e : edges)
        if (e.from == from && e.to == to) sum += e.rate;
    return sum;
}

double RateTable::total_rate() const
{
    double sum = adversary_source_rate;
    for (double r : source_rates) sum += r;
    for (const auto& e : edges) sum += e.rate;
    return sum;
}

double RateTable::outgoing_rate(NodeId from) const
{
    double sum = 0.0;
    for (const auto& e : edges)
        if (e.from == from) sum += e.rate;
    return sum;
}

double RateTable::incoming_gossip_rate(NodeId to) const
{
    double sum = 0.0;
    for (const auto& e : edges)
        if (e.to == to && e.role != EdgeRole::AdversaryFeed) sum += e.rate;
    return sum;
}

}  // namespace agl
