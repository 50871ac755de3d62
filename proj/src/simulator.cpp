#include "agl/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace agl {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

TransitionKind kind_of(EdgeRole role)
{
    switch (role) {
    case EdgeRole::Gossip: return TransitionKind::Gossip;
    case EdgeRole::InfectedOut: return TransitionKind::InfectedOut;
    case EdgeRole::InfectedIn: return TransitionKind::InfectedIn;
    case EdgeRole::AdversaryFeed: return TransitionKind::AdversaryFeed;
    }
    return TransitionKind::Gossip;
}

}  // namespace

Engine::Engine(const SimConfig& config)
    : config_(config), warmup_(config.sim.effective_warmup()), rng_(splitmix64(config.sim.seed))
{
    if (auto v = validate_config(config.spec, config.sim); !v.ok())
        throw std::invalid_argument("Engine: " + v.violations.front());

    const RateTable table = config.sim.coin_mode == CoinMode::PreThinned ? build_rate_table(config.spec)
                                                                          : build_nominal_rate_table(config.spec);
    auto add = [&](Channel c, double rate) {
        if (!(rate > 0.0)) return;
        total_rate_ += rate;
        channels_.push_back(c);
        cumulative_.push_back(total_rate_);
    };
    const int n = config.spec.n;
    for (NodeId j = 1; j <= n; ++j)
        add({TransitionKind::Source, kSource, j, 1.0}, table.source_rates[static_cast<std::size_t>(j)]);
    if (config.spec.has_adversary_node())
        add({TransitionKind::AdversarySource, kSource, config.spec.adversary(), 1.0}, table.adversary_source_rate);
    for (const auto& e : table.edges) add({kind_of(e.role), e.from, e.to, e.stamp_now_prob}, e.rate);

    const auto slots = static_cast<std::size_t>(n) + 2;
    states_.assign(slots, NodeState{});
    since_.assign(slots, 0.0);
    area_.assign(slots, 0.0);
}

double Engine::uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

bool Engine::coin(double prob)
{
    if (prob >= 1.0) return true;
    if (prob <= 0.0) return false;
    return uniform() < prob;
}

void Engine::close_segment(NodeId node, double until)
{
    const auto i = static_cast<std::size_t>(node);
    const double a = std::max(since_[i], warmup_);
    if (until > a) area_[i] += (until - a) * (0.5 * (a + until) - states_[i].generated);
    since_[i] = until;
}

void Engine::deliver(NodeId to, const NodeState& packet)
{
    close_segment(to, now_);
    states_[static_cast<std::size_t>(to)] = packet;
}

std::optional<Transition> Engine::step(double until)
{
    const double next = now_ - std::log1p(-uniform()) / total_rate_;
    if (next > until) {
        now_ = std::max(now_, until);
        return std::nullopt;
    }
    now_ = next;
    ++events_;
    if (now_ > warmup_) ++events_after_warmup_;

    const double pick = uniform() * total_rate_;
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), pick);
    if (it == cumulative_.end()) --it;
    const Channel& ch = channels_[static_cast<std::size_t>(it - cumulative_.begin())];

    Transition tr;
    tr.time = now_;
    tr.kind = ch.kind;
    tr.from = ch.from;
    tr.to = ch.to;
    tr.age_before = age(ch.to);

    switch (ch.kind) {
    case TransitionKind::Source:
    case TransitionKind::AdversarySource:
        tr.claimed_stamp = now_;
        tr.accepted = true;
        deliver(ch.to, NodeState{now_, now_});
        break;
    case TransitionKind::Gossip: {
        const NodeState sender = state(ch.from);
        tr.claimed_stamp = sender.claimed;
        tr.accepted = sender.claimed > state(ch.to).claimed;
        if (tr.accepted) deliver(ch.to, sender);
        break;
    }
    case TransitionKind::InfectedOut:
    case TransitionKind::InfectedIn:
    case TransitionKind::AdversaryFeed: {
        // The adversary re-stamps with "now" or 0; the receiver keeps the
        // true content of the sender either way.
        const double stamp = coin(ch.stamp_now_prob) ? now_ : 0.0;
        tr.claimed_stamp = stamp;
        tr.accepted = stamp > state(ch.to).claimed;
        if (tr.accepted) deliver(ch.to, NodeState{stamp, state(ch.from).generated});
        break;
    }
    }
    tr.age_after = age(ch.to);
    return tr;
}

void Engine::run_to_horizon()
{
    const double horizon = config_.sim.horizon;
    while (step(horizon)) {
    }
    for (std::size_t i = 1; i < states_.size(); ++i) close_segment(static_cast<NodeId>(i), horizon);
}

double Engine::mean_age(NodeId node) const
{
    return area_[static_cast<std::size_t>(node)] / (config_.sim.horizon - warmup_);
}

SimReport run(const SimConfig& config)
{
    Engine engine(config);
    engine.run_to_horizon();

    SimReport report;
    const int n = config.spec.n;
    report.mean_age.resize(static_cast<std::size_t>(n));
    for (NodeId i = 1; i <= n; ++i) report.mean_age[static_cast<std::size_t>(i - 1)] = engine.mean_age(i);
    if (engine.has_adversary()) report.mean_age_adversary = engine.mean_age(config.spec.adversary());
    report.events_processed = engine.events();
    report.events_after_warmup = engine.events_after_warmup();
    report.total_rate = engine.total_rate();
    report.per_rep_means.push_back(report.mean_age);
    if (report.mean_age_adversary) report.per_rep_adversary.push_back(*report.mean_age_adversary);
    return report;
}

namespace {

struct MeanCi {
    double mean;
    std::optional<double> half_width;
};

MeanCi mean_ci(const std::vector<double>& xs)
{
    const double count = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= count;
    if (xs.size() < 2) return {mean, std::nullopt};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / (count - 1.0));
    return {mean, 1.96 * sd / std::sqrt(count)};
}

}  // namespace

SimReport replicate(const SimConfig& config, int num_reps)
{
    if (num_reps < 1) throw std::invalid_argument("replicate: num_reps must be >= 1");

    std::vector<SimReport> runs(static_cast<std::size_t>(num_reps));
    auto work = [&](int r) {
        SimConfig c = config;
        c.sim.seed = config.sim.seed + static_cast<std::uint64_t>(r);
        runs[static_cast<std::size_t>(r)] = run(c);
    };

    unsigned threads = config.sim.threads > 0 ? static_cast<unsigned>(config.sim.threads)
                                              : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, static_cast<unsigned>(num_reps));
    if (threads <= 1) {
        for (int r = 0; r < num_reps; ++r) work(r);
    } else {
        std::atomic<int> next{0};
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (int r = next++; r < num_reps; r = next++) work(r);
            });
    }

    SimReport out;
    const auto n = runs.front().mean_age.size();
    out.reps = num_reps;
    out.total_rate = runs.front().total_rate;
    for (const auto& r : runs) {
        out.events_processed += r.events_processed;
        out.events_after_warmup += r.events_after_warmup;
        out.per_rep_means.push_back(r.mean_age);
        if (r.mean_age_adversary) out.per_rep_adversary.push_back(*r.mean_age_adversary);
    }
    out.mean_age.resize(n);
    std::vector<double> ci(n, 0.0);
    bool have_ci = num_reps > 1;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> xs;
        xs.reserve(runs.size());
        for (const auto& r : runs) xs.push_back(r.mean_age[i]);
        const auto m = mean_ci(xs);
        out.mean_age[i] = m.mean;
        if (m.half_width) ci[i] = *m.half_width;
    }
    if (have_ci) out.ci95 = ci;
    if (!out.per_rep_adversary.empty()) {
        const auto m = mean_ci(out.per_rep_adversary);
        out.mean_age_adversary = m.mean;
        out.ci95_adversary = m.half_width;
    }
    return out;
}

CoinModeVerdict coin_mode_equivalence(const SimConfig& config, int reps)
{
    if (reps < 2) throw std::invalid_argument("coin_mode_equivalence: need at least 2 replications for CIs");
    CoinModeVerdict verdict;
    SimConfig a = config;
    a.sim.coin_mode = CoinMode::ExplicitFlip;
    SimConfig b = config;
    b.sim.coin_mode = CoinMode::PreThinned;
    verdict.explicit_flip = replicate(a, reps);
    verdict.pre_thinned = replicate(b, reps);

    const auto& ea = verdict.explicit_flip;
    const auto& eb = verdict.pre_thinned;
    for (std::size_t i = 0; i < ea.mean_age.size(); ++i) {
        const double gap = std::abs(ea.mean_age[i] - eb.mean_age[i]);
        const bool overlap = gap <= (*ea.ci95)[i] + (*eb.ci95)[i];
        if (!overlap) verdict.diverging.push_back(static_cast<NodeId>(i + 1));
        if (i == 0) verdict.node1_overlap = overlap;
    }
    return verdict;
}

std::vector<double> trajectory_probe(const SimConfig& config, NodeId node, const std::vector<double>& sample_times)
{
    if (node < 1 || node > config.spec.n + (config.spec.has_adversary_node() ? 1 : 0))
        throw std::invalid_argument("trajectory_probe: unknown node");
    Engine engine(config);
    std::vector<double> out;
    out.reserve(sample_times.size());
    double last = 0.0;
    for (double t : sample_times) {
        if (t < last || t > config.sim.horizon)
            throw std::invalid_argument("trajectory_probe: sample times must be ascending within the horizon");
        while (engine.step(t)) {
        }
        out.push_back(engine.age(node));
        last = t;
    }
    return out;
}

}  // namespace agl
