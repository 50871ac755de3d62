#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "agl/analytic.hpp"
#include "agl/series.hpp"

namespace agl {

namespace {

void require(int n, double lambda, double p, double q, const char* who)
{
    NetworkSpec spec;
    spec.n = n;
    spec.lambda = lambda;
    spec.policy = {p, q};
    auto problems = spec_violations(spec);
    if (problems.empty()) return;
    std::string msg = std::string(who) + ":";
    for (const auto& s : problems) msg += " " + s + ";";
    throw std::invalid_argument(msg);
}

}  // namespace

double AnalyticAges::node_age(NodeId i) const
{
    if (i < 1 || i > n) throw std::out_of_range("node_age: node outside [1, n]");
    if (i == n) return infected;
    if (topology == Topology::UnidirectionalRingCapture) return regular[static_cast<std::size_t>(i - 1)];
    return regular.front();
}

AnalyticAges fcn_capture_ages(int n, double lambda, double p, double q)
{
    require(n, lambda, p, q, "fcn_capture_ages");
    const double dn = n;
    const double push = p / (dn - 1.0);

    // v_{S_k} = a[k] + b[k] * v_n, propagated from k = n-1 down to 1.
    std::vector<double> a(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> b(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = n - 1; k >= 1; --k) {
        const double c = (dn - k - 1.0) / (dn - 1.0);
        const double denom = 1.0 / dn + c + push;
        const auto ku = static_cast<std::size_t>(k);
        a[ku] = (1.0 / (k * lambda) + c * a[ku + 1]) / denom;
        b[ku] = (c * b[ku + 1] + push) / denom;
    }

    double vn = 0.0;
    if (q == 1.0) {
        vn = dn / lambda;
    } else {
        const double accept = 1.0 - q;
        vn = (1.0 / lambda + accept * a[1]) / (1.0 / dn + accept * (1.0 - b[1]));
    }

    AnalyticAges out;
    out.topology = Topology::FullyConnectedCapture;
    out.n = n;
    out.lambda = lambda;
    out.infected = vn;
    out.regular.resize(static_cast<std::size_t>(n) - 1);
    for (int k = 1; k <= n - 1; ++k)
        out.regular[static_cast<std::size_t>(k - 1)] = a[static_cast<std::size_t>(k)] + b[static_cast<std::size_t>(k)] * vn;
    return out;
}

AnalyticAges fcn_honest_ages(int n, double lambda)
{
    require(n, lambda, 0.0, 0.0, "fcn_honest_ages");
    const double dn = n;
    AnalyticAges out;
    out.topology = Topology::FullyConnectedCapture;
    out.honest = true;
    out.n = n;
    out.lambda = lambda;
    out.regular.resize(static_cast<std::size_t>(n) - 1);

    // The full set is refreshed only by the source, at total rate lambda.
    double next = 1.0 / lambda;
    for (int k = n - 1; k >= 1; --k) {
        const double c = (dn - k) / (dn - 1.0);
        next = (1.0 / (k * lambda) + c * next) / (1.0 / dn + c);
        out.regular[static_cast<std::size_t>(k - 1)] = next;
    }
    out.infected = out.regular.front();
    return out;
}

AnalyticAges mitm_ages(int n, double lambda)
{
    require(n, lambda, 0.0, 0.0, "mitm_ages");
    const double dn = n;
    const double va = dn / lambda;

    AnalyticAges out;
    out.topology = Topology::FullyConnectedMitm;
    out.n = n;
    out.lambda = lambda;
    out.adversary = va;
    out.sets_with_infected.resize(static_cast<std::size_t>(n) - 1);
    out.regular.resize(static_cast<std::size_t>(n) - 1);

    // w_k = v_{S_k u {n}}. Gossip from the n-1-k outside regulars reaches the
    // k+1 members at rate (k+1)(n-1-k)/(n-1); the source reaches the k
    // regular members; A feeds n at rate lambda.
    auto set_step = [&](int k, double w_next) {
        const double inflow = (k + 1.0) * (dn - 1.0 - k) / (dn - 1.0);
        return (1.0 / lambda + inflow * w_next + va) / (k / dn + inflow + 1.0);
    };
    double w = 0.0;
    for (int k = n - 1; k >= 1; --k) {
        w = set_step(k, w);
        out.sets_with_infected[static_cast<std::size_t>(k - 1)] = w;
    }
    // The same balance with k = 0 is the intercepted node on its own.
    out.infected = set_step(0, out.sets_with_infected.front());

    double v = 0.0;
    for (int k = n - 1; k >= 1; --k) {
        const double c = (dn - k - 1.0) / (dn - 1.0);
        const double wk = out.sets_with_infected[static_cast<std::size_t>(k - 1)];
        v = (1.0 / (k * lambda) + c * v + wk / (dn - 1.0)) / (1.0 / dn + c + 1.0 / (dn - 1.0));
        out.regular[static_cast<std::size_t>(k - 1)] = v;
    }
    return out;
}

AnalyticAges analytic_ages(const NetworkSpec& spec)
{
    const bool honest = spec.kind.honest;
    switch (spec.kind.topology) {
    case Topology::FullyConnectedCapture:
        return honest ? fcn_honest_ages(spec.n, spec.lambda)
                      : fcn_capture_ages(spec.n, spec.lambda, spec.policy.p, spec.policy.q);
    case Topology::FullyConnectedMitm: {
        if (!honest) return mitm_ages(spec.n, spec.lambda);
        auto out = fcn_honest_ages(spec.n, spec.lambda);
        out.topology = Topology::FullyConnectedMitm;
        return out;
    }
    case Topology::UnidirectionalRingCapture:
        return honest ? urn_honest_ages(spec.n, spec.lambda)
                      : urn_capture_ages(spec.n, spec.lambda, spec.policy.p, spec.policy.q);
    }
    throw std::logic_error("analytic_ages: unknown topology");
}

FcnCaseBounds fcn_case_bounds(int n, double lambda, double p, double q)
{
    require(n, lambda, p, q, "fcn_case_bounds");
    const double dn = n;
    const double h = harmonic_number(n - 1);

    FcnCaseBounds out;
    if (p > 0.0 && q == 1.0) {
        out.which = FcnCase::PushOnly;
        const double vn = dn / lambda;
        const double lower = (h - (dn - 1.0) / dn) / lambda + p * vn / 2.0;
        // The upper side drops (1 - n p) / (n (n - 1)) from a denominator,
        // which only loosens it when n p >= 1.
        double upper = std::numeric_limits<double>::infinity();
        if (dn * p >= 1.0)
            upper = h / lambda + p * vn;
        else
            out.inapplicable.emplace_back("v1: upper bound needs n * p >= 1");
        out.bounds.push_back({lower, upper, "v1"});
    } else if (p == 0.0) {
        out.which = FcnCase::Silent;
        const double growth = std::pow(dn / (dn - 1.0), dn - 1.0);
        out.bounds.push_back({0.0, growth * h / lambda, "v1"});
    } else {
        out.which = FcnCase::PushAndAccept;
        if (p < 1.0)
            out.bounds.push_back({0.0, (h / lambda + p / (lambda * (1.0 - q))) / (1.0 - p), "v1"});
        else
            out.inapplicable.emplace_back("v1: upper bound divides by 1 - p");
    }
    if (q < 1.0) out.bounds.push_back({0.0, 1.0 / (lambda * (1.0 - q)), "vn-v1"});
    return out;
}

MonotonicityVerdict fcn_p_monotonicity_check(int n, double lambda, const std::vector<double>& p_grid)
{
    MonotonicityVerdict verdict;
    verdict.degenerate = n == 2;
    for (std::size_t i = 1; i < p_grid.size(); ++i)
        if (!(p_grid[i] > p_grid[i - 1])) throw std::invalid_argument("p grid must be strictly ascending");

    std::vector<AnalyticAges> ages;
    ages.reserve(p_grid.size());
    for (double p : p_grid) ages.push_back(fcn_capture_ages(n, lambda, p, 1.0));

    auto fail = [&](std::size_t i, const std::string& what) {
        verdict.monotone = false;
        verdict.violation = std::make_pair(i - 1, i);
        std::ostringstream os;
        os << what << " between p=" << p_grid[i - 1] << " and p=" << p_grid[i];
        verdict.detail = os.str();
        return verdict;
    };

    for (std::size_t i = 0; i < ages.size(); ++i) {
        const auto& cur = ages[i];
        for (std::size_t k = 0; k < cur.regular.size() && !verdict.degenerate; ++k) {
            if (!(cur.infected - cur.regular[k] > 0.0)) {
                verdict.monotone = false;
                verdict.violation = std::make_pair(i, i);
                verdict.detail = "v_n - v_S" + std::to_string(k + 1) + " not positive";
                return verdict;
            }
        }
        if (i == 0) continue;
        const auto& prev = ages[i - 1];
        if (verdict.degenerate) {
            if (cur.v1() < prev.v1() * (1.0 - 1e-12)) return fail(i, "v1 decreased");
            continue;
        }
        if (!(cur.v1() > prev.v1())) return fail(i, "v1 not strictly increasing");
        for (std::size_t k = 0; k < cur.regular.size(); ++k) {
            const double gap_prev = prev.infected - prev.regular[k];
            const double gap_cur = cur.infected - cur.regular[k];
            if (!(gap_cur < gap_prev)) return fail(i, "v_n - v_S" + std::to_string(k + 1) + " not decreasing");
        }
    }
    return verdict;
}

}  // namespace agl
