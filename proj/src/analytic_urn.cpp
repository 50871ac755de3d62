#include <cmath>
#include <stdexcept>

#include "agl/analytic.hpp"
#include "agl/series.hpp"

namespace agl {

namespace {

// Ring kernel tables for a given n: P[j] = prod_{k<=j} 1/(1 + k/n) and
// S[j] = sum_{i=1}^{j} P[i], j = 0..n-1.
struct RingKernel {
    std::vector<double> prod;
    std::vector<double> sums;

    explicit RingKernel(int n)
        : prod(prefix_products(n, n - 1)), sums(prefix_product_sums(n, n - 1))
    {
    }
};

}  // namespace

AnalyticAges urn_capture_ages(int n, double lambda, double p, double q)
{
    NetworkSpec spec;
    spec.n = n;
    spec.lambda = lambda;
    spec.policy = {p, q};
    if (auto problems = spec_violations(spec); !problems.empty())
        throw std::invalid_argument("urn_capture_ages: " + problems.front());

    const double dn = n;
    const RingKernel ker(n);

    // v_{1..m} = alpha(m) + beta(m) * v_n: the first m nodes are refreshed by
    // the source at rate m*lambda/n and by node n at rate p*lambda.
    auto alpha = [&](int m) {
        if (p == 0.0) return dn / (m * lambda);
        return 1.0 / (lambda * (p + m / dn));
    };
    auto beta = [&](int m) {
        if (p == 0.0) return 0.0;
        return p / (p + m / dn);
    };
    // v_m = S[m-1]/lambda + P[m-1] * v_{1..m}.
    auto node_affine = [&](int m) {
        const auto j = static_cast<std::size_t>(m - 1);
        return std::pair{ker.sums[j] / lambda + ker.prod[j] * alpha(m), ker.prod[j] * beta(m)};
    };

    double vn = 0.0;
    if (q == 1.0) {
        vn = dn / lambda;
    } else {
        const double accept = 1.0 - q;
        const auto [a, b] = node_affine(n - 1);
        vn = (1.0 + accept * lambda * a) / (accept * lambda * (1.0 - b) + lambda / dn);
    }

    AnalyticAges out;
    out.topology = Topology::UnidirectionalRingCapture;
    out.n = n;
    out.lambda = lambda;
    out.infected = vn;
    out.regular.resize(static_cast<std::size_t>(n) - 1);
    for (int m = 1; m <= n - 1; ++m) {
        const auto [a, b] = node_affine(m);
        out.regular[static_cast<std::size_t>(m - 1)] = a + b * vn;
    }
    return out;
}

AnalyticAges urn_honest_ages(int n, double lambda)
{
    NetworkSpec spec;
    spec.n = n;
    spec.lambda = lambda;
    if (auto problems = spec_violations(spec); !problems.empty())
        throw std::invalid_argument("urn_honest_ages: " + problems.front());

    // Any block of k consecutive nodes is refreshed by the source at rate
    // k*lambda/n and by its predecessor at rate lambda; the whole ring only by
    // the source. Every node sees the same age.
    const RingKernel ker(n);
    const auto last = static_cast<std::size_t>(n - 1);
    const double v = (ker.sums[last] + ker.prod[last]) / lambda;

    AnalyticAges out;
    out.topology = Topology::UnidirectionalRingCapture;
    out.honest = true;
    out.n = n;
    out.lambda = lambda;
    out.regular.assign(static_cast<std::size_t>(n) - 1, v);
    out.infected = v;
    return out;
}

std::optional<AgeBounds> urn_age_bounds(int n, double lambda, double p, int m, double v_n)
{
    if (n < 2 || m < 1 || m > n - 1) throw std::invalid_argument("urn_age_bounds: need 1 <= m <= n-1");
    if (!(lambda > 0.0)) throw std::invalid_argument("urn_age_bounds: lambda must be positive");
    if (!(p > 0.0 && p <= 1.0)) return std::nullopt;
    const auto prod = prefix_products(n, m);
    const auto sums = prefix_product_sums(n, m);
    const auto mu = static_cast<std::size_t>(m);
    AgeBounds b;
    b.lower = sums[mu] / lambda + p * v_n * prod[mu];
    b.upper = sums[mu] / (p * lambda) + v_n * prod[mu];
    b.label = "v" + std::to_string(m);
    return b;
}

std::vector<AgeBounds> urn_age_bounds_all(int n, double lambda, double p, double v_n)
{
    if (n < 2) throw std::invalid_argument("urn_age_bounds_all: need n >= 2");
    if (!(lambda > 0.0)) throw std::invalid_argument("urn_age_bounds_all: lambda must be positive");
    std::vector<AgeBounds> out;
    if (!(p > 0.0 && p <= 1.0)) return out;
    const auto prod = prefix_products(n, n - 1);
    const auto sums = prefix_product_sums(n, n - 1);
    out.reserve(static_cast<std::size_t>(n) - 1);
    for (int m = 1; m <= n - 1; ++m) {
        const auto mu = static_cast<std::size_t>(m);
        out.push_back({sums[mu] / lambda + p * v_n * prod[mu], sums[mu] / (p * lambda) + v_n * prod[mu],
                       "v" + std::to_string(m)});
    }
    return out;
}

}  // namespace agl
